#include "kerr/quantum.hpp"

#include <cmath>
#include <numbers>

#include "kerr/parallel.hpp"

namespace kerr {

namespace {
constexpr double kPi = std::numbers::pi;
}

EvolvedState evolve(const FockVector& fock, double t) {
    EvolvedState out{fock, t};
    for (std::size_t n = 0; n < out.fock.c.size(); ++n) {
        const double m = 2.0 * static_cast<double>(n) + 1.0;
        const double phase = -m * m * t;
        out.fock.c[n] *= std::complex<double>(std::cos(phase), std::sin(phase));
    }
    return out;
}

WignerSynth::WignerSynth(const FockVector& fock)
    : c_(fock.c), n_max_(fock.truncation()) {
    const int nk = n_max_ + 1;
    ratio1_.assign(static_cast<std::size_t>(nk) * nk, 0.0);
    ratio2_.assign(static_cast<std::size_t>(nk) * nk, 0.0);
    for (int k = 0; k < nk; ++k) {
        for (int n = 0; n + k < nk; ++n) {
            const std::size_t idx = static_cast<std::size_t>(k) * nk + n;
            ratio1_[idx] = std::sqrt((n + 1.0) / (n + k + 1.0));
            ratio2_[idx] = n == 0 ? 0.0
                                  : std::sqrt(n * (n + 1.0) / ((n + k) * (n + k + 1.0)));
        }
    }
}

double WignerSynth::operator()(PhasePoint z) const {
    const int nk = n_max_ + 1;
    const double r2 = norm2(z);
    const double x = 2.0 * r2;
    const double r = std::sqrt(r2);
    const double s = std::numbers::sqrt2 * r;
    const std::complex<double> u = r > 0.0 ? std::complex<double>(z.q / r, z.p / r)
                                           : std::complex<double>(0.0, 0.0);

    // g_{n,k} = sqrt(n!/(n+k)!) (sqrt(2) r)^k e^{-r^2} L_n^k(2 r^2): the
    // prefactor is folded into the three-term recurrence step by step, so
    // every intermediate stays at the scale of the bounded kernel itself.
    double g0 = std::exp(-r2);  // g_{0,k}, advanced in k below
    std::complex<double> uk = 1.0;
    double total = 0.0;
    for (int k = 0; k < nk; ++k) {
        const double* r1 = ratio1_.data() + static_cast<std::size_t>(k) * nk;
        const double* r2t = ratio2_.data() + static_cast<std::size_t>(k) * nk;
        const int inner = nk - k;
        std::complex<double> acc = std::conj(c_[k]) * c_[0] * g0;
        double g_prev = 0.0;
        double g = g0;
        double sign = -1.0;
        for (int n = 1; n < inner; ++n) {
            const double g_next =
                ((2.0 * (n - 1) + k + 1.0 - x) * r1[n - 1] * g - (n - 1.0 + k) * r2t[n - 1] * g_prev) / n;
            g_prev = g;
            g = g_next;
            acc += std::conj(c_[n + k]) * c_[n] * (sign * g);
            sign = -sign;
        }
        if (k == 0) {
            total += acc.real();  // diagonal block is real term by term
        } else {
            total += 2.0 * (uk * acc).real();
        }
        uk *= u;
        g0 *= s / std::sqrt(k + 1.0);
        if (g0 == 0.0 && k > 0) break;  // beyond any reachable kernel support
    }
    return total / kPi;
}

Field wigner_of_state(const FockVector& fock, const Grid2D& grid, int workers) {
    const WignerSynth synth(fock);
    Field out(grid);
    parallel_for(0, grid.n_p, workers, [&](int row) {
        for (int col = 0; col < grid.n_q; ++col)
            out.at(row, col) = synth({grid.q_at(col), grid.p_at(row)});
    });
    return out;
}

Field wigner_of_state(const EvolvedState& state, const Grid2D& grid, int workers) {
    return wigner_of_state(state.fock, grid, workers);
}

double autocorr_exact(const FockVector& state0, double t) {
    std::complex<double> a = 0.0;
    for (std::size_t n = 0; n < state0.c.size(); ++n) {
        const double m = 2.0 * static_cast<double>(n) + 1.0;
        const double phase = -m * m * t;
        a += std::norm(state0.c[n]) * std::complex<double>(std::cos(phase), std::sin(phase));
    }
    return std::norm(a);
}

MarginalCurve marginal(const Field& field, MarginalAxis axis) {
    const Grid2D& g = field.grid;
    MarginalCurve out;
    if (axis == MarginalAxis::position) {
        out.abscissa.resize(g.n_q);
        out.density.assign(g.n_q, 0.0);
        for (int i = 0; i < g.n_q; ++i) {
            out.abscissa[i] = g.q_at(i);
            double acc = 0.0;
            for (int j = 0; j < g.n_p; ++j) {
                const double w = (j == 0 || j == g.n_p - 1) ? 0.5 : 1.0;
                acc += w * field.at(j, i);
            }
            out.density[i] = acc * g.dp();
        }
    } else {
        out.abscissa.resize(g.n_p);
        out.density.assign(g.n_p, 0.0);
        for (int j = 0; j < g.n_p; ++j) {
            out.abscissa[j] = g.p_at(j);  // descending, matching row order
            double acc = 0.0;
            for (int i = 0; i < g.n_q; ++i) {
                const double w = (i == 0 || i == g.n_q - 1) ? 0.5 : 1.0;
                acc += w * field.at(j, i);
            }
            out.density[j] = acc * g.dq();
        }
    }
    return out;
}

double hermite_function(int n, double x) {
    const double h0 = std::exp(-0.5 * x * x) / std::pow(kPi, 0.25);
    if (n == 0) return h0;
    double prev = h0;
    double cur = std::numbers::sqrt2 * x * h0;
    for (int m = 2; m <= n; ++m) {
        const double next = std::sqrt(2.0 / m) * x * cur - std::sqrt((m - 1.0) / m) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

std::complex<double> wavefunction(const FockVector& fock, double q) {
    const double h0 = std::exp(-0.5 * q * q) / std::pow(kPi, 0.25);
    std::complex<double> acc = fock.c[0] * h0;
    if (fock.c.size() == 1) return acc;
    double prev = h0;
    double cur = std::numbers::sqrt2 * q * h0;
    acc += fock.c[1] * cur;
    for (std::size_t m = 2; m < fock.c.size(); ++m) {
        const double next = std::sqrt(2.0 / m) * q * cur - std::sqrt((m - 1.0) / m) * prev;
        prev = cur;
        cur = next;
        acc += fock.c[m] * cur;
    }
    return acc;
}

}  // namespace kerr
