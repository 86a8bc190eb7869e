#include <doctest.h>

#include <cmath>

#include "kerr/diagnostics.hpp"
#include "kerr/states.hpp"

using namespace kerr;

namespace {

Field coherent_field(PhasePoint c, const Grid2D& g) {
    Field f(g);
    const StateSpec s = StateSpec::coherent(c);
    for (int j = 0; j < g.n_p; ++j)
        for (int i = 0; i < g.n_q; ++i) f.at(j, i) = wigner0(s, {g.q_at(i), g.p_at(j)});
    return f;
}

}  // namespace

TEST_CASE("normalization and post-normalization") {
    const Grid2D g(-6.0, 6.0, -6.0, 6.0, 161, 161);
    const Field f = coherent_field({0.0, 0.0}, g);
    CHECK(normalization(f) == doctest::Approx(1.0).epsilon(1e-9));

    Field scaled = f;
    for (double& v : scaled.values) v *= 0.9;
    CHECK(normalization(scaled) == doctest::Approx(0.9).epsilon(1e-9));
    const Field restored = post_normalize(scaled);
    CHECK(normalization(restored) == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t i = 0; i < f.values.size(); ++i)
        CHECK(restored.values[i] == doctest::Approx(f.values[i]).epsilon(1e-10).scale(1.0));

    Field zero(g);
    CHECK_THROWS_AS(post_normalize(zero), std::domain_error);
}

TEST_CASE("overlap autocorrelation: purity and grid mismatch") {
    const Grid2D g(-6.0, 6.0, -6.0, 6.0, 161, 161);
    const Field f = coherent_field({1.0, -0.5}, g);
    CHECK(autocorr_overlap(f, f) == doctest::Approx(1.0).epsilon(1e-3));
    // displaced copies decorrelate: |<a|b>|^2 = exp(-|za - zb|^2 / 2)
    const Field far = coherent_field({-4.0, 3.0}, g);
    CHECK(autocorr_overlap(f, far) ==
          doctest::Approx(std::exp(-0.5 * (25.0 + 12.25))).epsilon(1e-3).scale(1e-6));
    const Grid2D g2(-6.0, 6.0, -6.0, 6.0, 81, 81);
    CHECK_THROWS_AS(autocorr_overlap(f, coherent_field({0, 0}, g2)), std::invalid_argument);
}

TEST_CASE("comparison report") {
    const Grid2D g(-4.0, 4.0, -4.0, 4.0, 65, 65);
    const Field f = coherent_field({0.5, 0.5}, g);
    const ComparisonReport same = compare(f, f);
    CHECK(same.l2_error == 0.0);
    CHECK(same.max_abs_error == 0.0);
    CHECK(same.pearson == doctest::Approx(1.0));

    Field shifted = f;
    for (double& v : shifted.values) v = 2.0 * v + 0.1;
    CHECK(compare(f, shifted).pearson == doctest::Approx(1.0));
    Field negated = f;
    for (double& v : negated.values) v = -v;
    CHECK(compare(f, negated).pearson == doctest::Approx(-1.0));
}

TEST_CASE("revival ring radii and phase parity") {
    CHECK_THROWS(revival_radii(0));
    CHECK(revival_radii(1) == 2.0);
    CHECK(revival_radii(3) == 6.0);
    CHECK(fractional_radii(2, 0.25, 8) == doctest::Approx(0.5 * 8.0 * 2.25));
    CHECK(revival_phase_parity(1, 0) == 2);
    CHECK(revival_phase_parity(2, 1) == 4);
    CHECK(revival_phase_parity(3, 1) == 10);
    for (int jp = 0; jp <= 20; ++jp)
        for (int jm = 0; jm <= 20; ++jm) CHECK(revival_phase_parity(jp, jm) % 2 == 0);
}
