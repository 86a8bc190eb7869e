#pragma once

#include <complex>
#include <vector>

#include "kerr/phase_space.hpp"
#include "kerr/states.hpp"

namespace kerr {

/// Fock-space snapshot of the exactly evolved state.
struct EvolvedState {
    FockVector fock;
    double time = 0.0;
};

/// Exact Kerr evolution in the Fock basis: c_n(t) = c_n exp(-i (2n+1)^2 t).
EvolvedState evolve(const FockVector& fock, double t);

/// Pointwise Wigner synthesis W = sum_{m,n} c_m* c_n W_mn with the
/// cross-Wigner kernels in associated-Laguerre closed form. The recurrences
/// are prefactor-scaled so the evaluation stays in range for any truncation;
/// naive factorial ratios are never formed. Immutable after construction and
/// safe to share across threads.
class WignerSynth {
  public:
    explicit WignerSynth(const FockVector& fock);
    double operator()(PhasePoint z) const;

  private:
    std::vector<std::complex<double>> c_;
    std::vector<double> ratio1_;  // sqrt((n+1)/(n+k+1)), flattened by k
    std::vector<double> ratio2_;  // sqrt(n(n+1)/((n+k)(n+k+1)))
    std::vector<double> inv_sqrt_fact_k_;
    int n_max_ = 0;
};

/// Wigner function of the state sampled on a grid; node fills are independent
/// and run data-parallel over rows.
Field wigner_of_state(const FockVector& fock, const Grid2D& grid, int workers = 0);
Field wigner_of_state(const EvolvedState& state, const Grid2D& grid, int workers = 0);

/// Squared autocorrelation |<psi(0)|psi(t)>|^2 by direct Fock sum.
double autocorr_exact(const FockVector& state0, double t);

struct MarginalCurve {
    std::vector<double> abscissa;
    std::vector<double> density;
};

enum class MarginalAxis { position, momentum };

/// Trapezoidal integral of W over the conjugate variable, one density value
/// per grid column (position) or row (momentum).
MarginalCurve marginal(const Field& field, MarginalAxis axis);

/// Normalized harmonic-oscillator eigenfunction phi_n(x) (hbar = 1),
/// evaluated by the stable normalized recurrence.
double hermite_function(int n, double x);

/// Position wavefunction <q|psi> = sum_n c_n phi_n(q).
std::complex<double> wavefunction(const FockVector& fock, double q);

}  // namespace kerr
