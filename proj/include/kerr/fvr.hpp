#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "kerr/dynamics.hpp"
#include "kerr/phase_space.hpp"
#include "kerr/states.hpp"

namespace kerr {

/// Full backward-propagation record for one (x', xi', t) triple.
struct ChordMapResult {
    PhasePoint eta_plus_final{}, eta_minus_final{};
    PhasePoint eta_plus_init{}, eta_minus_init{};
    Chord xi_init{};
    PhasePoint center_init{};
    double jac_det = 1.0;  // det d(xi)/d(xi')
    double action = 0.0;   // loop action S~, filled by action()
    int maslov = 0;        // filled by maslov_count()
};

/// Chord-plane quadrature controls.
struct QuadratureSpec {
    double chord_halfwidth = 28.0;      // L: xi' in [-L, L]^2
    int chord_samples = 512;            // M midpoint samples per axis
    int maslov_time_samples = 64;       // floor of the determinant-zero scan
    double chi_cutoff = 1e-12;          // skip chords with |chi| below cutoff/(2pi)
    double refine_bisection_tol = 1e-8; // zero-location refinement in t
    bool signed_maslov = false;         // +-1 by crossing direction instead of +1 per zero
    double convergence_tol = 0.0;       // 0 disables the M vs M/2 comparison

    void validate() const;
    /// L = 2 (max |x'| + 6), everything else at defaults.
    static QuadratureSpec defaults_for(double max_abs_center);
    static double default_halfwidth(const Grid2D& final_grid);
};

/// Endpoints eta'+- = x' +- xi'/2 evolved backward by t; the initial chord,
/// center, and the chord Jacobian determinant det[(T+ + T-)/2] with
/// T+- = flow_tangent(eta'+-, -t). The loop action is filled via action();
/// the Maslov counter is left at zero (see maslov_count).
ChordMapResult backward_chord_map(PhasePoint x_final, Chord xi_final, double t,
                                  const Dynamics& dyn);

/// Loop action S~ = eta-.J eta+ + t dH - loop integral of p dq over the
/// circuit eta'- -> eta- (backward arc) -> eta+ (straight chord) -> eta'+
/// (forward arc) -> eta'- (straight chord). Arc windings are kept in full.
double action(const ChordMapResult& result, double t, const Dynamics& dyn);

/// Number of zeros of s -> jac_det(x', xi', s) for s in (0, t], located by a
/// sign-change scan densified with the chord frequencies, then refined by
/// bisection. With signed_maslov each crossing contributes +-1 by direction.
int maslov_count(PhasePoint x_final, Chord xi_final, double t,
                 const QuadratureSpec& spec, const Dynamics& dyn);

/// maslov_count plus a flag for grazing zeros (|det| < 1e-9 without a sign
/// change anywhere in the scan).
struct MaslovScan {
    int count = 0;
    bool tangency_flag = false;
};
MaslovScan maslov_scan(PhasePoint x_final, Chord xi_final, double t,
                       const QuadratureSpec& spec, const Dynamics& dyn);

/// One chord's contribution to the FVR integral, measure 1/(2pi) included:
/// (1/2pi) |jac_det|^{1/2} exp{i [S~ + sigma pi/2]} chi(xi). Returns 0
/// without the Maslov scan when |chi(xi)| < chi_cutoff/(2pi).
std::complex<double> fvr_integrand(PhasePoint x_final, Chord xi_final, double t,
                                   const StateSpec& state, const QuadratureSpec& spec,
                                   const Dynamics& dyn);

/// Midpoint-rule value of the FVR integral at one final point. The real part
/// is the Wigner value; the imaginary part is kept as a quadrature residue.
struct FvrPoint {
    double value = 0.0;
    double imag_residue = 0.0;
    bool converged = true;  // meaningful only when convergence_tol > 0
};
FvrPoint fvr_wigner(PhasePoint x_final, double t, const StateSpec& state,
                    const QuadratureSpec& spec, const Dynamics& dyn);

/// FVR field over a final grid. Per-node work is independent; the fill is
/// data-parallel over rows with a fixed per-node summation order, so the
/// output is bitwise independent of the worker count. No rescaling is
/// applied: the semiclassical norm deficit is left in place.
struct FvrFieldResult {
    Field field;
    Field imag_residue;
    std::vector<std::uint8_t> converged;  // per node, all 1 when check disabled
    double max_abs_imag = 0.0;
    int unconverged_nodes = 0;
};
FvrFieldResult fvr_field(const Grid2D& grid, double t, const StateSpec& state,
                         const QuadratureSpec& spec, const Dynamics& dyn, int workers = 0);

/// Classical transport of the initial Wigner function:
/// W_cl(x', t) = wigner0(state, flow(x', -t)).
Field liouville_field(const Grid2D& grid, double t, const StateSpec& state,
                      const Dynamics& dyn, int workers = 0);

/// jac_det sampled over a xi' grid at fixed x' and t; the zero-level contours
/// are the caustic submanifolds.
Field caustic_det_map(PhasePoint x_final, double t, const Grid2D& chord_grid,
                      const Dynamics& dyn, int workers = 0);

}  // namespace kerr
