#pragma once

#include "kerr/phase_space.hpp"

namespace kerr {

/// Scalar agreement measures between two fields on the same grid.
struct ComparisonReport {
    double l2_error = 0.0;
    double max_abs_error = 0.0;
    double pearson = 1.0;
    double norm_a = 0.0;
    double norm_b = 0.0;
};

/// Integral of the field over its extents.
double normalization(const Field& f);

/// Copy of the field rescaled to unit integral. Throws std::domain_error when
/// the integral is degenerate (|integral| < 1e-9).
Field post_normalize(const Field& f);

/// Squared autocorrelation from Wigner overlap: 2 pi int f_t f_0 dq dp.
/// Throws std::invalid_argument on grid mismatch.
double autocorr_overlap(const Field& f_t, const Field& f_0);

/// L2 / max-abs differences and the Pearson correlation of the samples.
ComparisonReport compare(const Field& f_a, const Field& f_b);

/// Full-revival ring: |eta|^2 for winding number j (= 2j with T_rev = pi/4).
double revival_radii(int j);

/// Fractional-revival ring at t = pi/beta: |eta|^2 = beta (j + alpha_frac) / 2.
double fractional_radii(int j, double alpha_frac, int beta);

/// Total revival phase in units of pi: (j+ - j-) [1 + (j+ + j-)].
/// Always even; asserted.
int revival_phase_parity(int j_plus, int j_minus);

}  // namespace kerr
