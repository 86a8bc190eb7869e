#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace kerr {

/// A point (q,p) of the phase plane, hbar = 1 units.
struct PhasePoint {
    double q = 0.0;
    double p = 0.0;
};

/// A displacement vector in the phase plane.
struct Chord {
    double xi_q = 0.0;
    double xi_p = 0.0;
};

inline PhasePoint operator+(PhasePoint a, PhasePoint b) { return {a.q + b.q, a.p + b.p}; }
inline PhasePoint operator-(PhasePoint a, PhasePoint b) { return {a.q - b.q, a.p - b.p}; }
inline PhasePoint operator*(double s, PhasePoint a) { return {s * a.q, s * a.p}; }
inline Chord operator+(Chord a, Chord b) { return {a.xi_q + b.xi_q, a.xi_p + b.xi_p}; }
inline Chord operator-(Chord a, Chord b) { return {a.xi_q - b.xi_q, a.xi_p - b.xi_p}; }
inline Chord operator*(double s, Chord a) { return {s * a.xi_q, s * a.xi_p}; }
inline Chord operator-(Chord a) { return {-a.xi_q, -a.xi_p}; }

inline double norm2(PhasePoint a) { return a.q * a.q + a.p * a.p; }
inline double norm2(Chord a) { return a.xi_q * a.xi_q + a.xi_p * a.xi_p; }

// Fixed global convention: a.Jb = a_q b_p - a_p b_q. Every phase in this
// project refers to this single definition.
inline double symplectic_product(double aq, double ap, double bq, double bp) {
    return aq * bp - ap * bq;
}
inline double symplectic_product(PhasePoint a, PhasePoint b) {
    return symplectic_product(a.q, a.p, b.q, b.p);
}
inline double symplectic_product(PhasePoint a, Chord b) {
    return symplectic_product(a.q, a.p, b.xi_q, b.xi_p);
}
inline double symplectic_product(Chord a, PhasePoint b) {
    return symplectic_product(a.xi_q, a.xi_p, b.q, b.p);
}
inline double symplectic_product(Chord a, Chord b) {
    return symplectic_product(a.xi_q, a.xi_p, b.xi_q, b.xi_p);
}

inline bool finite(PhasePoint a) { return std::isfinite(a.q) && std::isfinite(a.p); }
inline bool finite(Chord a) { return std::isfinite(a.xi_q) && std::isfinite(a.xi_p); }

/// Rectangular sampling of the phase plane. Values attached to a grid are
/// stored row-major with p as the slow index, descending from p_max, so a
/// raw dump renders as a conventional phase-space image.
struct Grid2D {
    double q_min = 0.0, q_max = 1.0;
    double p_min = 0.0, p_max = 1.0;
    int n_q = 2, n_p = 2;

    Grid2D() = default;
    Grid2D(double qmin, double qmax, double pmin, double pmax, int nq, int np)
        : q_min(qmin), q_max(qmax), p_min(pmin), p_max(pmax), n_q(nq), n_p(np) {
        if (!(q_min < q_max) || !(p_min < p_max))
            throw std::invalid_argument("Grid2D: extents must satisfy min < max");
        if (n_q < 2 || n_p < 2)
            throw std::invalid_argument("Grid2D: need at least 2 samples per axis");
    }

    double dq() const { return (q_max - q_min) / (n_q - 1); }
    double dp() const { return (p_max - p_min) / (n_p - 1); }
    double q_at(int i) const { return q_min + i * dq(); }
    double p_at(int j) const { return p_max - j * dp(); }  // row 0 = top
    std::size_t index(int row, int col) const {
        return static_cast<std::size_t>(row) * n_q + col;
    }
    std::size_t size() const { return static_cast<std::size_t>(n_q) * n_p; }

    friend bool operator==(const Grid2D& a, const Grid2D& b) {
        return a.q_min == b.q_min && a.q_max == b.q_max && a.p_min == b.p_min &&
               a.p_max == b.p_max && a.n_q == b.n_q && a.n_p == b.n_p;
    }
};

/// Function samples on a Grid2D, one value per node.
template <class T>
struct BasicField {
    Grid2D grid;
    std::vector<T> values;

    BasicField() = default;
    explicit BasicField(const Grid2D& g) : grid(g), values(g.size(), T{}) {}
    BasicField(const Grid2D& g, std::vector<T> v) : grid(g), values(std::move(v)) {
        if (values.size() != grid.size())
            throw std::invalid_argument("Field: values.size() != n_q * n_p");
    }

    T& at(int row, int col) { return values[grid.index(row, col)]; }
    const T& at(int row, int col) const { return values[grid.index(row, col)]; }
};

using Field = BasicField<double>;
using ComplexField = BasicField<std::complex<double>>;

/// Trapezoidal estimate of the integral over the grid extents.
template <class T>
T integrate_field(const BasicField<T>& f) {
    const Grid2D& g = f.grid;
    T total{};
    for (int j = 0; j < g.n_p; ++j) {
        const double wp = (j == 0 || j == g.n_p - 1) ? 0.5 : 1.0;
        T row{};
        for (int i = 0; i < g.n_q; ++i) {
            const double wq = (i == 0 || i == g.n_q - 1) ? 0.5 : 1.0;
            row += wq * f.values[g.index(j, i)];
        }
        total += wp * row;
    }
    return total * (g.dq() * g.dp());
}

}  // namespace kerr
