#include "kerr/dynamics.hpp"

#include <cmath>
#include <numbers>

namespace kerr {

double hamiltonian(PhasePoint z, const Dynamics& dyn) {
    const double r2 = norm2(z);
    return dyn.kind == Dynamics::Kind::kerr ? r2 * r2 : 0.5 * dyn.omega0 * r2;
}

double omega(PhasePoint z, const Dynamics& dyn) {
    return dyn.kind == Dynamics::Kind::kerr ? 4.0 * norm2(z) : dyn.omega0;
}

PhasePoint flow(PhasePoint z0, double t, const Dynamics& dyn) {
    const double theta = omega(z0, dyn) * t;
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    // clockwise for theta > 0
    return {z0.q * c + z0.p * s, -z0.q * s + z0.p * c};
}

TangentMap flow_tangent(PhasePoint z0, double t, const Dynamics& dyn) {
    const double theta = omega(z0, dyn) * t;
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    TangentMap m{c, s, -s, c};
    if (dyn.kind == Dynamics::Kind::kerr) {
        // d(theta)/dz0 = t * grad(omega) = t * (8 q0, 8 p0); chain rule through
        // the rotation angle adds a rank-one correction dR/dtheta z0 (x) grad.
        const double uq = -s * z0.q + c * z0.p;
        const double up = -c * z0.q - s * z0.p;
        const double gq = 8.0 * t * z0.q;
        const double gp = 8.0 * t * z0.p;
        m.m_qq += uq * gq;
        m.m_qp += uq * gp;
        m.m_pq += up * gq;
        m.m_pp += up * gp;
    }
    return m;
}

double arc_action(PhasePoint z_start, double t, const Dynamics& dyn) {
    const double r2 = norm2(z_start);
    if (r2 == 0.0 || t == 0.0) return 0.0;
    const PhasePoint z_end = flow(z_start, t, dyn);
    // closed form of int p qdot dt over the circular arc; the r^2 w t / 2 term
    // carries the full winding
    return 0.5 * (r2 * omega(z_start, dyn) * t - z_start.q * z_start.p + z_end.q * z_end.p);
}

double delta_H(PhasePoint eta_plus, PhasePoint eta_minus, const Dynamics& dyn) {
    return hamiltonian(eta_plus, dyn) - hamiltonian(eta_minus, dyn);
}

double revival_time() { return std::numbers::pi / 4.0; }

double ehrenfest_time(PhasePoint center, const Dynamics& dyn) {
    const double w = omega(center, dyn);
    if (!(w > 0.0)) throw std::domain_error("ehrenfest_time: omega vanishes at this center");
    return 2.0 * std::numbers::pi / w;
}

}  // namespace kerr
