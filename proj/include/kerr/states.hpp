#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "kerr/phase_space.hpp"

namespace kerr {

/// Initial-state description: a coherent state or a displaced Fock state,
/// both specified by the phase-space center (<q>, <p>).
struct StateSpec {
    enum class Kind { coherent, displaced_fock };
    Kind kind = Kind::coherent;
    int excitation = 0;  // displaced_fock only
    PhasePoint center{};

    static StateSpec coherent(PhasePoint center) {
        require_center(center);
        return {Kind::coherent, 0, center};
    }
    static StateSpec displaced_fock(int n, PhasePoint center) {
        require_center(center);
        if (n < 0) throw std::invalid_argument("StateSpec: excitation must be >= 0");
        return {Kind::displaced_fock, n, center};
    }

  private:
    static void require_center(PhasePoint c) {
        if (!finite(c)) throw std::invalid_argument("StateSpec: center must be finite");
    }
};

/// Truncated Fock-basis expansion c_n, n = 0..N, with the mass left beyond
/// the truncation reported at construction.
struct FockVector {
    std::vector<std::complex<double>> c;
    double tail_mass = 0.0;

    int truncation() const { return static_cast<int>(c.size()) - 1; }
    double norm2() const {
        double s = 0.0;
        for (const auto& a : c) s += std::norm(a);
        return s;
    }
};

/// Wigner function of the initial state at z. Closed forms exist for the
/// coherent state and the n=1 displaced Fock state; higher excitations go
/// through the quantum oracle instead.
double wigner0(const StateSpec& spec, PhasePoint z);

/// Chord function: symplectic Fourier transform of wigner0,
/// chi(xi) = int dy/(2pi) exp(-i y.J xi) W(y,0).
std::complex<double> chord_fn(const StateSpec& spec, Chord xi);

/// Fock coefficients of the state, truncated at N. Throws when the
/// truncation tail mass exceeds eps_trunc.
FockVector fock_coefficients(const StateSpec& spec, int N, double eps_trunc = 1e-10);

}  // namespace kerr
