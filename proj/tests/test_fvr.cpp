#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "kerr/diagnostics.hpp"
#include "kerr/fvr.hpp"
#include "kerr/states.hpp"

using namespace kerr;

namespace {

const Dynamics kKerr = Dynamics::make_kerr();

/// Brute-force Maslov oracle: dense uniform sampling of the determinant sign
/// along (0, t].
int maslov_brute(PhasePoint x, Chord xi, double t, int samples) {
    int zeros = 0;
    double prev = backward_chord_map(x, xi, t / samples * 1e-3, kKerr).jac_det;
    for (int k = 1; k <= samples; ++k) {
        const double det = backward_chord_map(x, xi, t * k / samples, kKerr).jac_det;
        if ((det < 0.0) != (prev < 0.0)) ++zeros;
        prev = det;
    }
    return zeros;
}

}  // namespace

TEST_CASE("quadrature spec validation and derived halfwidth") {
    QuadratureSpec s;
    CHECK_NOTHROW(s.validate());
    s.chord_samples = 0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    const Grid2D g(-8.0, 8.0, -8.0, 8.0, 16, 16);
    CHECK(QuadratureSpec::default_halfwidth(g) ==
          doctest::Approx(2.0 * (std::hypot(8.0, 8.0) + 6.0)));
}

TEST_CASE("backward chord map: t=0 identity and endpoint bookkeeping") {
    const PhasePoint x{3.0, -1.0};
    const Chord xi{0.8, 0.6};
    const ChordMapResult r = backward_chord_map(x, xi, 0.0, kKerr);
    CHECK(r.xi_init.xi_q == doctest::Approx(xi.xi_q));
    CHECK(r.xi_init.xi_p == doctest::Approx(xi.xi_p));
    CHECK(r.jac_det == doctest::Approx(1.0));
    CHECK(r.eta_plus_final.q == doctest::Approx(x.q + 0.5 * xi.xi_q));
    CHECK(r.eta_minus_final.p == doctest::Approx(x.p - 0.5 * xi.xi_p));

    const ChordMapResult rt = backward_chord_map(x, xi, 0.21, kKerr);
    // backward propagation conserves each endpoint's energy
    CHECK(norm2(rt.eta_plus_init) == doctest::Approx(norm2(rt.eta_plus_final)).epsilon(1e-12));
    CHECK(norm2(rt.eta_minus_init) == doctest::Approx(norm2(rt.eta_minus_final)).epsilon(1e-12));
    // center/chord are midpoint and difference of the initial endpoints
    CHECK(rt.center_init.q == doctest::Approx(0.5 * (rt.eta_plus_init.q + rt.eta_minus_init.q)));
    CHECK(rt.xi_init.xi_p == doctest::Approx(rt.eta_plus_init.p - rt.eta_minus_init.p));
}

TEST_CASE("chord Jacobian: harmonic flows have det = 1 everywhere") {
    const Dynamics h = Dynamics::make_harmonic(1.4);
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-5.0, 5.0), ut(0.0, 9.0);
    for (int i = 0; i < 100; ++i) {
        const ChordMapResult r =
            backward_chord_map({u(rng), u(rng)}, {u(rng), u(rng)}, ut(rng), h);
        CHECK(r.jac_det == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("chord Jacobian: even under chord reflection, matches finite differences") {
    std::mt19937 rng(19);
    std::uniform_real_distribution<double> u(-4.0, 4.0), uxi(-3.0, 3.0), ut(0.01, 0.25);
    for (int i = 0; i < 30; ++i) {
        const PhasePoint x{u(rng), u(rng)};
        const Chord xi{uxi(rng), uxi(rng)};
        const double t = ut(rng);
        const double det = backward_chord_map(x, xi, t, kKerr).jac_det;
        CHECK(backward_chord_map(x, -xi, t, kKerr).jac_det == doctest::Approx(det).epsilon(1e-12));

        const double h = 1e-5;
        const auto f = [&](double dq, double dp) {
            return backward_chord_map(x, {xi.xi_q + dq, xi.xi_p + dp}, t, kKerr).xi_init;
        };
        const Chord aq = f(h, 0) - f(-h, 0), ap = f(0, h) - f(0, -h);
        const double det_fd =
            (aq.xi_q * ap.xi_p - ap.xi_q * aq.xi_p) / (4.0 * h * h);
        CHECK(det == doctest::Approx(det_fd).epsilon(1e-6).scale(1.0));
    }
}

TEST_CASE("loop action: t=0 reduces to the chord phase, closed form matches quadrature") {
    const PhasePoint x{2.0, 1.5};
    const Chord xi{-0.7, 1.1};
    const ChordMapResult r0 = backward_chord_map(x, xi, 0.0, kKerr);
    CHECK(action(r0, 0.0, kKerr) == doctest::Approx(symplectic_product(x, xi)).epsilon(1e-13));

    // quadrature oracle over the same circuit: arcs by Simpson on omega p^2,
    // straight chords exactly
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> u(-3.5, 3.5), uxi(-2.5, 2.5), ut(0.01, 0.3);
    for (int i = 0; i < 15; ++i) {
        const PhasePoint xf{u(rng), u(rng)};
        const Chord xif{uxi(rng), uxi(rng)};
        const double t = ut(rng);
        const ChordMapResult r = backward_chord_map(xf, xif, t, kKerr);
        const auto arc_quad = [&](PhasePoint z0, double dur) {
            const int n = 60000;
            const double w = omega(z0, kKerr);
            double sum = 0.0;
            for (int k = 0; k <= n; ++k) {
                const PhasePoint z = flow(z0, dur * k / n, kKerr);
                const double val = w * z.p * z.p;
                sum += (k == 0 || k == n) ? val : (k % 2 ? 4.0 * val : 2.0 * val);
            }
            return dur * sum / (3.0 * n);
        };
        const double loop = arc_quad(xf - 0.5 * PhasePoint{xif.xi_q, xif.xi_p}, -t) +
                            r.center_init.p * r.xi_init.xi_q + arc_quad(r.eta_plus_init, t) -
                            xf.p * xif.xi_q;
        const double oracle = symplectic_product(r.eta_minus_init, r.eta_plus_init) +
                              t * delta_H(r.eta_plus_final, r.eta_minus_final, kKerr) - loop;
        CHECK(action(r, t, kKerr) == doctest::Approx(oracle).epsilon(1e-9).scale(1.0));
    }
}

TEST_CASE("Maslov counter: zero for short times and quadratic flows") {
    QuadratureSpec spec;
    CHECK(maslov_count({5.0, 2.0}, {1.0, 0.5}, 1e-4, spec, kKerr) == 0);
    const Dynamics h = Dynamics::make_harmonic(1.0);
    CHECK(maslov_count({3.0, 0.0}, {1.5, -0.5}, 7.0, spec, h) == 0);
}

TEST_CASE("Maslov counter matches dense-sampling oracle and is monotone in t") {
    QuadratureSpec spec;
    std::mt19937 rng(29);
    std::uniform_real_distribution<double> u(-4.0, 4.0), uxi(-2.0, 2.0), ut(0.02, 0.25);
    for (int i = 0; i < 20; ++i) {
        const PhasePoint x{u(rng), u(rng)};
        const Chord xi{uxi(rng), uxi(rng)};
        const double t = ut(rng);
        CHECK(maslov_count(x, xi, t, spec, kKerr) == maslov_brute(x, xi, t, 200000));
    }
    const PhasePoint x{5.0, 2.0};
    const Chord xi{1.0, 0.3};
    int prev = 0;
    for (double t = 0.01; t < 0.12; t += 0.01) {
        const int m = maslov_count(x, xi, t, spec, kKerr);
        CHECK(m >= prev);
        prev = m;
    }
    CHECK(prev > 0);  // caustics do appear in this window
}

TEST_CASE("integrand vanishes beyond the chord-function cutoff") {
    QuadratureSpec spec;
    const StateSpec s = StateSpec::coherent({5.0, 0.0});
    CHECK(fvr_integrand({5.0, 0.0}, {30.0, 0.0}, 0.05, s, spec, kKerr) ==
          std::complex<double>(0.0, 0.0));
}

TEST_CASE("single-point FVR: t=0 identity and harmonic exactness") {
    QuadratureSpec spec = QuadratureSpec::defaults_for(5.0);
    spec.chord_samples = 384;
    const StateSpec s = StateSpec::coherent({3.0, 1.0});
    for (const PhasePoint z : {PhasePoint{3.0, 1.0}, PhasePoint{2.0, 0.0}, PhasePoint{3.5, 2.0}}) {
        const FvrPoint got = fvr_wigner(z, 0.0, s, spec, kKerr);
        CHECK(got.value == doctest::Approx(wigner0(s, z)).epsilon(1e-6).scale(1.0));
        CHECK(std::abs(got.imag_residue) < 1e-6);
    }
    const Dynamics h = Dynamics::make_harmonic(1.0);
    const double t = 0.7;
    for (const PhasePoint z : {PhasePoint{2.5, 1.2}, PhasePoint{1.0, -2.0}}) {
        const FvrPoint got = fvr_wigner(z, t, s, spec, h);
        CHECK(got.value == doctest::Approx(wigner0(s, flow(z, -t, h))).epsilon(1e-6).scale(1.0));
    }
}

TEST_CASE("classical transport field follows the flow") {
    const StateSpec s = StateSpec::coherent({4.0, 0.0});
    const Grid2D g(-6.0, 6.0, -6.0, 6.0, 31, 31);
    const double t = 0.09;
    const Field f = liouville_field(g, t, s, kKerr);
    for (int j = 0; j < g.n_p; ++j)
        for (int i = 0; i < g.n_q; ++i) {
            const PhasePoint z{g.q_at(i), g.p_at(j)};
            CHECK(f.at(j, i) == doctest::Approx(wigner0(s, flow(z, -t, kKerr))).epsilon(1e-13));
        }
}

TEST_CASE("caustic map: identity determinant at t=0, symmetric under reflection") {
    const Grid2D g(-2.0, 2.0, -2.0, 2.0, 21, 21);
    const Field at0 = caustic_det_map({5.0, 2.0}, 0.0, g, kKerr);
    for (double v : at0.values) CHECK(v == doctest::Approx(1.0));
    const Field late = caustic_det_map({5.0, 2.0}, 0.071, g, kKerr);
    for (int j = 0; j < g.n_p; ++j)
        for (int i = 0; i < g.n_q; ++i)
            CHECK(late.at(j, i) ==
                  doctest::Approx(late.at(g.n_p - 1 - j, g.n_q - 1 - i)).epsilon(1e-12));
}

TEST_CASE("field fill is bitwise independent of the worker count") {
    QuadratureSpec spec;
    spec.chord_samples = 64;
    spec.chord_halfwidth = 22.0;
    const StateSpec s = StateSpec::coherent({5.0, 0.0});
    const Grid2D g(-8.0, 8.0, -8.0, 8.0, 9, 9);
    const FvrFieldResult a = fvr_field(g, 0.04, s, spec, kKerr, 1);
    const FvrFieldResult b = fvr_field(g, 0.04, s, spec, kKerr, 4);
    for (std::size_t i = 0; i < a.field.values.size(); ++i)
        CHECK(a.field.values[i] == b.field.values[i]);
}

TEST_CASE("convergence flags respond to an unreachable tolerance") {
    QuadratureSpec spec;
    spec.chord_samples = 64;
    spec.chord_halfwidth = 22.0;
    spec.convergence_tol = 1e-300;
    const StateSpec s = StateSpec::coherent({5.0, 0.0});
    const Grid2D g(-1.0, 1.0, -1.0, 1.0, 3, 3);
    const FvrFieldResult r = fvr_field(g, 0.05, s, spec, kKerr, 1);
    CHECK(r.unconverged_nodes > 0);
    spec.convergence_tol = 0.0;
    const FvrFieldResult ok = fvr_field(g, 0.05, s, spec, kKerr, 1);
    CHECK(ok.unconverged_nodes == 0);
}
