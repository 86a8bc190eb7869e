#include "kerr/states.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace kerr {

namespace {

constexpr double kPi = std::numbers::pi;

std::complex<double> alpha_of(PhasePoint center) {
    return {center.q / std::sqrt(2.0), center.p / std::sqrt(2.0)};
}

// L_n^{(k)}(x) by the explicit sum; meant for small lower index n.
double laguerre_small(int n, int k, double x) {
    double binom = 1.0;  // C(n+k, n)
    for (int i = 1; i <= n; ++i) binom *= static_cast<double>(k + i) / i;
    // term i carries C(n+k, n-i) (-x)^i / i!
    double coeff = binom;
    double sum = coeff;
    double xpow = 1.0;
    for (int i = 1; i <= n; ++i) {
        // C(n+k, n-i) = C(n+k, n-i+1) * (n-i+1) / (k+i)
        coeff *= static_cast<double>(n - i + 1) / (k + i);
        xpow *= -x / i;
        sum += coeff * xpow;
    }
    return sum;
}

}  // namespace

double wigner0(const StateSpec& spec, PhasePoint z) {
    if (!finite(z)) throw std::invalid_argument("wigner0: non-finite point");
    const double d2 = norm2(z - spec.center);
    const double gauss = std::exp(-d2) / kPi;
    if (spec.kind == StateSpec::Kind::coherent || spec.excitation == 0) return gauss;
    if (spec.excitation == 1) return (2.0 * d2 - 1.0) * gauss;
    throw std::invalid_argument("wigner0: closed form only for excitation 0 or 1; use the quantum oracle");
}

std::complex<double> chord_fn(const StateSpec& spec, Chord xi) {
    if (!finite(xi)) throw std::invalid_argument("chord_fn: non-finite chord");
    const double x2 = norm2(xi);
    double radial = std::exp(-0.25 * x2) / (2.0 * kPi);
    if (spec.kind == StateSpec::Kind::displaced_fock && spec.excitation != 0) {
        if (spec.excitation != 1)
            throw std::invalid_argument(
                "chord_fn: closed form only for excitation 0 or 1; use the quantum oracle");
        radial *= 1.0 - 0.5 * x2;
    }
    const double phase = -symplectic_product(spec.center, xi);
    return radial * std::complex<double>(std::cos(phase), std::sin(phase));
}

FockVector fock_coefficients(const StateSpec& spec, int N, double eps_trunc) {
    if (N < 1) throw std::invalid_argument("fock_coefficients: N must be >= 1");
    const std::complex<double> alpha = alpha_of(spec.center);
    const double a2 = std::norm(alpha);
    const double envelope = std::exp(-0.5 * a2);
    const int n = (spec.kind == StateSpec::Kind::coherent) ? 0 : spec.excitation;

    FockVector out;
    out.c.assign(static_cast<std::size_t>(N) + 1, {});

    if (n == 0) {
        // c_m = e^{-|a|^2/2} a^m / sqrt(m!)
        std::complex<double> cm = envelope;
        out.c[0] = cm;
        for (int m = 1; m <= N; ++m) {
            cm *= alpha / std::sqrt(static_cast<double>(m));
            out.c[m] = cm;
        }
    } else {
        // c_m = <m|D(alpha)|n> in associated-Laguerre closed form
        for (int m = 0; m < n && m <= N; ++m) {
            std::complex<double> amp = envelope;  // sqrt(m!/n!) (-conj a)^{n-m}
            for (int i = m + 1; i <= n; ++i) amp *= -std::conj(alpha) / std::sqrt(static_cast<double>(i));
            out.c[m] = amp * laguerre_small(m, n - m, a2);
        }
        if (n <= N) {
            std::complex<double> amp = envelope;  // sqrt(n!/m!) a^{m-n}
            out.c[n] = amp * laguerre_small(n, 0, a2);
            for (int m = n + 1; m <= N; ++m) {
                amp *= alpha / std::sqrt(static_cast<double>(m));
                out.c[m] = amp * laguerre_small(n, m - n, a2);
            }
        }
    }

    out.tail_mass = std::max(0.0, 1.0 - out.norm2());
    if (out.tail_mass > eps_trunc)
        throw std::runtime_error("fock_coefficients: truncation tail " +
                                 std::to_string(out.tail_mass) + " exceeds tolerance at N=" +
                                 std::to_string(N));
    return out;
}

}  // namespace kerr
