#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "kerr/quantum.hpp"
#include "kerr/states.hpp"

using namespace kerr;
using std::complex;

namespace {

/// Oracle for the Wigner synthesis: the defining transform
/// W(q,p) = (1/2pi) int ds exp(i p s) psi*(q + s/2) psi(q - s/2)
/// evaluated with the position wavefunction and trapezoid quadrature.
double wigner_transform_oracle(const FockVector& fock, double q, double p) {
    const int n = 3000;
    const double s_max = 16.0, h = 2.0 * s_max / n;
    complex<double> sum = 0.0;
    for (int k = 0; k <= n; ++k) {
        const double s = -s_max + k * h;
        const double w = (k == 0 || k == n) ? 0.5 : 1.0;
        sum += w * std::polar(1.0, p * s) * std::conj(wavefunction(fock, q + 0.5 * s)) *
               wavefunction(fock, q - 0.5 * s);
    }
    return (sum * (h / (2.0 * M_PI))).real();
}

}  // namespace

TEST_CASE("evolution multiplies each level by exp(-i (2n+1)^2 t)") {
    const FockVector f = fock_coefficients(StateSpec::coherent({3.0, 1.0}), 40);
    const double t = 0.37;
    const EvolvedState e = evolve(f, t);
    CHECK(e.time == t);
    for (int n = 0; n <= 40; ++n) {
        const double phase = -(2.0 * n + 1.0) * (2.0 * n + 1.0) * t;
        CHECK(std::abs(e.fock.c[n] - f.c[n] * std::polar(1.0, phase)) < 1e-14);
    }
}

TEST_CASE("Wigner synthesis matches the defining transform after evolution") {
    const FockVector f = fock_coefficients(StateSpec::coherent({4.0, 0.0}), 56);
    const FockVector ft = evolve(f, 0.05).fock;
    const WignerSynth synth(ft);
    for (const PhasePoint z : {PhasePoint{3.0, -2.5}, PhasePoint{0.5, 4.0}, PhasePoint{-1.0, 0.3},
                               PhasePoint{4.2, 1.1}, PhasePoint{0.0, 0.0}}) {
        CHECK(synth(z) ==
              doctest::Approx(wigner_transform_oracle(ft, z.q, z.p)).epsilon(1e-8).scale(1.0));
    }
}

TEST_CASE("vacuum and single-excitation kernels in closed form") {
    FockVector vac{{1.0}, 0.0};
    const WignerSynth w0(vac);
    CHECK(w0({0.7, -0.4}) == doctest::Approx(std::exp(-(0.49 + 0.16)) / M_PI).epsilon(1e-12));
    FockVector one{{0.0, 1.0}, 0.0};
    const WignerSynth w1(one);
    const double r2 = 0.49 + 0.16;
    CHECK(w1({0.7, -0.4}) ==
          doctest::Approx((2.0 * r2 - 1.0) * std::exp(-r2) / M_PI).epsilon(1e-12));
}

TEST_CASE("autocorrelation: purity at t=0, full revival, periodicity") {
    const FockVector f = fock_coefficients(StateSpec::coherent({5.0, 0.0}), 64);
    CHECK(autocorr_exact(f, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(autocorr_exact(f, std::numbers::pi / 4.0) == doctest::Approx(1.0).epsilon(1e-12));
    for (double t : {0.03, 0.2, 0.11})
        CHECK(autocorr_exact(f, t + std::numbers::pi / 4.0) ==
              doctest::Approx(autocorr_exact(f, t)).epsilon(1e-12));
    CHECK(autocorr_exact(f, 0.05) < 1.0);
}

TEST_CASE("marginals of a coherent state are Gaussian") {
    const FockVector f = fock_coefficients(StateSpec::coherent({5.0, 1.0}), 64);
    const Grid2D g(-4.0, 12.0, -7.0, 9.0, 257, 257);
    const Field w = wigner_of_state(f, g);
    const MarginalCurve pos = marginal(w, MarginalAxis::position);
    const MarginalCurve mom = marginal(w, MarginalAxis::momentum);
    REQUIRE(pos.abscissa.size() == 257);
    REQUIRE(mom.abscissa.size() == 257);
    CHECK(pos.abscissa.front() == doctest::Approx(-4.0));
    CHECK(mom.abscissa.front() == doctest::Approx(9.0));  // row order, p descending
    for (std::size_t i = 0; i < pos.abscissa.size(); i += 16) {
        const double q = pos.abscissa[i];
        CHECK(pos.density[i] ==
              doctest::Approx(std::exp(-(q - 5.0) * (q - 5.0)) / std::sqrt(M_PI))
                  .epsilon(1e-7)
                  .scale(1.0));
        const double p = mom.abscissa[i];
        CHECK(mom.density[i] ==
              doctest::Approx(std::exp(-(p - 1.0) * (p - 1.0)) / std::sqrt(M_PI))
                  .epsilon(1e-7)
                  .scale(1.0));
    }
}

TEST_CASE("hermite functions: values, orthonormality, recurrence stability") {
    CHECK(hermite_function(0, 0.3) ==
          doctest::Approx(std::pow(M_PI, -0.25) * std::exp(-0.045)).epsilon(1e-13));
    CHECK(hermite_function(1, 0.3) ==
          doctest::Approx(std::pow(M_PI, -0.25) * std::sqrt(2.0) * 0.3 * std::exp(-0.045))
              .epsilon(1e-13));
    // orthonormality by quadrature, including a high level
    for (auto [m, n] : {std::pair{0, 0}, {3, 3}, {40, 40}, {2, 5}, {40, 38}}) {
        const int steps = 6000;
        const double lo = -14.0, h = 28.0 / steps;
        double acc = 0.0;
        for (int k = 0; k <= steps; ++k) {
            const double x = lo + k * h;
            const double w = (k == 0 || k == steps) ? 0.5 : 1.0;
            acc += w * hermite_function(m, x) * hermite_function(n, x);
        }
        acc *= h;
        CHECK(acc == doctest::Approx(m == n ? 1.0 : 0.0).epsilon(1e-9).scale(1.0));
    }
    CHECK(std::isfinite(hermite_function(64, 11.0)));
}

TEST_CASE("grid synthesis is bitwise independent of the worker count") {
    const FockVector f = fock_coefficients(StateSpec::coherent({5.0, 0.0}), 64);
    const Grid2D g(-8.0, 8.0, -8.0, 8.0, 40, 40);
    const Field a = wigner_of_state(evolve(f, 0.1), g, 1);
    const Field b = wigner_of_state(evolve(f, 0.1), g, 5);
    REQUIRE(a.values.size() == b.values.size());
    for (std::size_t i = 0; i < a.values.size(); ++i) CHECK(a.values[i] == b.values[i]);
}
