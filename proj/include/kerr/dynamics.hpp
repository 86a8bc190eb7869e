#pragma once

#include <stdexcept>

#include "kerr/phase_space.hpp"

namespace kerr {

/// Which exact classical flow to use. The Kerr Hamiltonian is the project's
/// subject; the harmonic oscillator is kept as an exactness reference, since
/// semiclassical propagation is exact for quadratic Hamiltonians.
struct Dynamics {
    enum class Kind { kerr, harmonic };
    Kind kind = Kind::kerr;
    double omega0 = 1.0;  // harmonic only

    static Dynamics make_kerr() { return {Kind::kerr, 0.0}; }
    static Dynamics make_harmonic(double w0) {
        if (!(w0 > 0.0)) throw std::invalid_argument("Dynamics: harmonic requires omega0 > 0");
        return {Kind::harmonic, w0};
    }
};

/// Derivative of the flow map with respect to the initial point.
struct TangentMap {
    double m_qq = 1.0, m_qp = 0.0;
    double m_pq = 0.0, m_pp = 1.0;

    double det() const { return m_qq * m_pp - m_qp * m_pq; }
    PhasePoint apply(PhasePoint v) const {
        return {m_qq * v.q + m_qp * v.p, m_pq * v.q + m_pp * v.p};
    }
};

/// Kerr: (p^2+q^2)^2. Harmonic: omega0 (p^2+q^2)/2.
double hamiltonian(PhasePoint z, const Dynamics& dyn);

/// Angular frequency of the circular orbit through z; conserved along the flow.
/// Kerr: 4(p^2+q^2).
double omega(PhasePoint z, const Dynamics& dyn);

/// Exact flow: rigid clockwise rotation of z0 by omega(z0)*t, the sense fixed
/// by qdot = dH/dp, pdot = -dH/dq (z(t) = z(0) e^{-i omega t} with z = q+ip).
/// Negative t propagates backward.
PhasePoint flow(PhasePoint z0, double t, const Dynamics& dyn);

/// Exact derivative of flow(.,t) at z0. Determinant is 1 (symplectic flow).
TangentMap flow_tangent(PhasePoint z0, double t, const Dynamics& dyn);

/// Integral of p dq along the exact arc traversed by the flow starting at
/// z_start over the signed duration t, taken in the direction of increasing
/// physical time. Negative t yields the backward leg (sign included). Winding
/// is kept in full: no 2pi reduction is applied to the swept angle.
double arc_action(PhasePoint z_start, double t, const Dynamics& dyn);

/// H(eta_plus) - H(eta_minus).
double delta_H(PhasePoint eta_plus, PhasePoint eta_minus, const Dynamics& dyn);

/// Time for a complete quantum revival of the Kerr system: pi/4.
double revival_time();

/// Time for the distribution center to complete one revolution: 2pi/omega(center).
/// Throws std::domain_error when omega(center) vanishes.
double ehrenfest_time(PhasePoint center, const Dynamics& dyn = Dynamics::make_kerr());

}  // namespace kerr
