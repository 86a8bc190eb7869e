#include <doctest.h>

#include <cmath>
#include <random>

#include "kerr/phase_space.hpp"

using namespace kerr;

TEST_CASE("symplectic product follows the fixed convention") {
    CHECK(symplectic_product(PhasePoint{1, 0}, PhasePoint{0, 1}) == 1.0);
    CHECK(symplectic_product(PhasePoint{0, 1}, PhasePoint{1, 0}) == -1.0);
    CHECK(symplectic_product(Chord{2, 3}, Chord{5, 7}) == doctest::Approx(2 * 7 - 3 * 5));
    CHECK(symplectic_product(PhasePoint{2, 3}, Chord{5, 7}) == doctest::Approx(-1.0));
}

TEST_CASE("symplectic product is antisymmetric and bilinear") {
    std::mt19937 rng(1);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int i = 0; i < 200; ++i) {
        const PhasePoint a{u(rng), u(rng)}, b{u(rng), u(rng)}, c{u(rng), u(rng)};
        const double s = u(rng);
        CHECK(symplectic_product(a, b) == doctest::Approx(-symplectic_product(b, a)));
        CHECK(symplectic_product(a, a) == 0.0);
        CHECK(symplectic_product(a + s * b, c) ==
              doctest::Approx(symplectic_product(a, c) + s * symplectic_product(b, c)));
    }
}

TEST_CASE("grid ordering: row 0 is the top row, p descending") {
    const Grid2D g(-1.0, 1.0, -2.0, 2.0, 5, 9);
    CHECK(g.p_at(0) == 2.0);
    CHECK(g.p_at(8) == -2.0);
    CHECK(g.q_at(0) == -1.0);
    CHECK(g.q_at(4) == 1.0);
    CHECK(g.dq() == doctest::Approx(0.5));
    CHECK(g.dp() == doctest::Approx(0.5));
    CHECK(g.index(1, 2) == 1 * 5 + 2);
    CHECK(g.size() == 45);
}

TEST_CASE("grid validation") {
    CHECK_THROWS_AS(Grid2D(1.0, -1.0, 0.0, 1.0, 4, 4), std::invalid_argument);
    CHECK_THROWS_AS(Grid2D(0.0, 1.0, 1.0, 1.0, 4, 4), std::invalid_argument);
    CHECK_THROWS_AS(Grid2D(0.0, 1.0, 0.0, 1.0, 1, 4), std::invalid_argument);
}

TEST_CASE("field size validation") {
    const Grid2D g(0.0, 1.0, 0.0, 1.0, 3, 3);
    CHECK_THROWS_AS(Field(g, std::vector<double>(8)), std::invalid_argument);
    Field f(g);
    CHECK(f.values.size() == 9);
}

TEST_CASE("trapezoidal field integral") {
    const Grid2D g(-6.0, 6.0, -6.0, 6.0, 121, 121);
    Field ones(g);
    for (double& v : ones.values) v = 1.0;
    CHECK(integrate_field(ones) == doctest::Approx(144.0));

    Field gauss(g);
    for (int j = 0; j < g.n_p; ++j)
        for (int i = 0; i < g.n_q; ++i) {
            const double q = g.q_at(i), p = g.p_at(j);
            gauss.at(j, i) = std::exp(-(q * q + p * p)) / M_PI;
        }
    CHECK(integrate_field(gauss) == doctest::Approx(1.0).epsilon(1e-9));
}
