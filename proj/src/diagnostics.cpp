#include "kerr/diagnostics.hpp"

#include <cassert>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kerr {

double normalization(const Field& f) { return integrate_field(f); }

Field post_normalize(const Field& f) {
    const double norm = normalization(f);
    if (std::abs(norm) < 1e-9)
        throw std::domain_error("post_normalize: degenerate normalization");
    Field out = f;
    const double s = 1.0 / norm;
    for (double& v : out.values) v *= s;
    return out;
}

double autocorr_overlap(const Field& f_t, const Field& f_0) {
    if (!(f_t.grid == f_0.grid))
        throw std::invalid_argument("autocorr_overlap: grid mismatch");
    Field prod = f_t;
    for (std::size_t i = 0; i < prod.values.size(); ++i) prod.values[i] *= f_0.values[i];
    return 2.0 * std::numbers::pi * integrate_field(prod);
}

ComparisonReport compare(const Field& f_a, const Field& f_b) {
    if (!(f_a.grid == f_b.grid)) throw std::invalid_argument("compare: grid mismatch");
    ComparisonReport rep;
    rep.norm_a = normalization(f_a);
    rep.norm_b = normalization(f_b);
    const std::size_t n = f_a.values.size();
    double sum_a = 0.0, sum_b = 0.0;
    double l2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = f_a.values[i] - f_b.values[i];
        l2 += d * d;
        rep.max_abs_error = std::max(rep.max_abs_error, std::abs(d));
        sum_a += f_a.values[i];
        sum_b += f_b.values[i];
    }
    rep.l2_error = std::sqrt(l2 * f_a.grid.dq() * f_a.grid.dp());
    const double mean_a = sum_a / n;
    const double mean_b = sum_b / n;
    double cov = 0.0, var_a = 0.0, var_b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double da = f_a.values[i] - mean_a;
        const double db = f_b.values[i] - mean_b;
        cov += da * db;
        var_a += da * da;
        var_b += db * db;
    }
    rep.pearson = (var_a > 0.0 && var_b > 0.0) ? cov / std::sqrt(var_a * var_b) : 1.0;
    return rep;
}

double revival_radii(int j) {
    if (j < 1) throw std::invalid_argument("revival_radii: j must be >= 1");
    return 2.0 * j;
}

double fractional_radii(int j, double alpha_frac, int beta) {
    if (beta < 1) throw std::invalid_argument("fractional_radii: beta must be >= 1");
    return 0.5 * beta * (j + alpha_frac);
}

int revival_phase_parity(int j_plus, int j_minus) {
    if (j_plus < 0 || j_minus < 0)
        throw std::invalid_argument("revival_phase_parity: winding numbers must be >= 0");
    const int phase = (j_plus - j_minus) * (1 + j_plus + j_minus);
    assert(phase % 2 == 0);
    return phase;
}

}  // namespace kerr
