#include "kerr/fvr.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "kerr/parallel.hpp"

namespace kerr {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTangencyEps = 1e-9;

struct StateParams {
    double yq = 0.0, yp = 0.0;  // center
    bool fock1 = false;         // displaced n=1 Laguerre factor
};

StateParams state_params(const StateSpec& state) {
    StateParams st{state.center.q, state.center.p, false};
    if (state.kind == StateSpec::Kind::displaced_fock && state.excitation != 0) {
        if (state.excitation != 1)
            throw std::invalid_argument("fvr: chord function available only for excitation 0 or 1");
        st.fock1 = true;
    }
    return st;
}

// Endpoints, conserved radii/frequencies, and the backward-evolved points for
// one (x', xi', t) triple. All trig of the two rotation angles is kept so the
// determinant and action reuse it.
struct ChordGeom {
    double qpf, ppf, qmf, pmf;  // eta'+ , eta'-
    double r2p, r2m, wp, wm;
    double cp, sp, cm, sm;      // cos/sin(omega+- t)
    double qpi, ppi, qmi, pmi;  // eta+ , eta-
};

inline void make_geom(double xq, double xp, double xiq, double xip, double t,
                      const Dynamics& dyn, ChordGeom& g) {
    g.qpf = xq + 0.5 * xiq;
    g.ppf = xp + 0.5 * xip;
    g.qmf = xq - 0.5 * xiq;
    g.pmf = xp - 0.5 * xip;
    g.r2p = g.qpf * g.qpf + g.ppf * g.ppf;
    g.r2m = g.qmf * g.qmf + g.pmf * g.pmf;
    if (dyn.kind == Dynamics::Kind::kerr) {
        g.wp = 4.0 * g.r2p;
        g.wm = 4.0 * g.r2m;
    } else {
        g.wp = g.wm = dyn.omega0;
    }
    const double tp = g.wp * t;
    const double tm = g.wm * t;
    g.cp = std::cos(tp);
    g.sp = std::sin(tp);
    g.cm = std::cos(tm);
    g.sm = std::sin(tm);
    // backward rotation (counterclockwise by omega t)
    g.qpi = g.cp * g.qpf - g.sp * g.ppf;
    g.ppi = g.sp * g.qpf + g.cp * g.ppf;
    g.qmi = g.cm * g.qmf - g.sm * g.pmf;
    g.pmi = g.sm * g.qmf + g.cm * g.pmf;
}

// det[(T+ + T-)/2] with T+- = flow_tangent(eta'+-, -t), evaluated from the
// cached trig. For the harmonic flow both tangent maps are the same rotation.
inline double jac_det_from(const ChordGeom& g, double t, const Dynamics& dyn) {
    if (dyn.kind != Dynamics::Kind::kerr) return 1.0;
    const double upq = g.sp * g.qpf + g.cp * g.ppf;
    const double upp = -g.cp * g.qpf + g.sp * g.ppf;
    const double umq = g.sm * g.qmf + g.cm * g.pmf;
    const double ump = -g.cm * g.qmf + g.sm * g.pmf;
    const double cav = 0.5 * (g.cp + g.cm);
    const double sav = 0.5 * (g.sp + g.sm);
    const double f = 4.0 * t;
    const double aqq = cav - f * (upq * g.qpf + umq * g.qmf);
    const double aqp = -sav - f * (upq * g.ppf + umq * g.pmf);
    const double apq = sav - f * (upp * g.qpf + ump * g.qmf);
    const double app = cav - f * (upp * g.ppf + ump * g.pmf);
    return aqq * app - aqp * apq;
}

// Determinant at intermediate scan time s given fresh trig values.
inline double jac_det_scan(const ChordGeom& g, double s, double cps, double sps,
                           double cms, double sms) {
    const double upq = sps * g.qpf + cps * g.ppf;
    const double upp = -cps * g.qpf + sps * g.ppf;
    const double umq = sms * g.qmf + cms * g.pmf;
    const double ump = -cms * g.qmf + sms * g.pmf;
    const double cav = 0.5 * (cps + cms);
    const double sav = 0.5 * (sps + sms);
    const double f = 4.0 * s;
    const double aqq = cav - f * (upq * g.qpf + umq * g.qmf);
    const double aqp = -sav - f * (upq * g.ppf + umq * g.pmf);
    const double apq = sav - f * (upp * g.qpf + ump * g.qmf);
    const double app = cav - f * (upp * g.ppf + ump * g.pmf);
    return aqq * app - aqp * apq;
}

inline double jac_det_exact(const ChordGeom& g, double s) {
    return jac_det_scan(g, s, std::cos(g.wp * s), std::sin(g.wp * s),
                        std::cos(g.wm * s), std::sin(g.wm * s));
}

// Loop action S~ from the cached geometry. Both arc legs keep their full
// winding omega t; the straight chord segments reduce to midpoint terms.
inline double action_from(const ChordGeom& g, double t, const Dynamics& dyn,
                          double xp_final, double xiq_final) {
    const double boundary = g.qmi * g.ppi - g.pmi * g.qpi;  // eta-.J eta+
    const double tdh = dyn.kind == Dynamics::Kind::kerr
                           ? t * (g.r2p * g.r2p - g.r2m * g.r2m)
                           : 0.5 * dyn.omega0 * t * (g.r2p - g.r2m);
    const double xc_p = 0.5 * (g.ppi + g.pmi);
    const double xi_q = g.qpi - g.qmi;
    const double loop = 0.5 * (-g.r2m * g.wm * t - g.qmf * g.pmf + g.qmi * g.pmi) +
                        xc_p * xi_q +
                        0.5 * (g.r2p * g.wp * t - g.qpi * g.ppi + g.qpf * g.ppf) -
                        xp_final * xiq_final;
    return boundary + tdh - loop;
}

struct ScanResult {
    int count = 0;
    bool tangency = false;
};

// Sign-change scan of s -> jac_det(s) on (0, t]. The sample density follows
// the fastest determinant frequency (~ omega+ + omega-); the configured
// sample count acts as a floor. Incremental rotation keeps the scan free of
// per-sample trig calls.
ScanResult scan_maslov(const ChordGeom& g, double t, const QuadratureSpec& spec,
                       const Dynamics& dyn, bool signed_count) {
    ScanResult out;
    if (dyn.kind != Dynamics::Kind::kerr || t <= 0.0) return out;
    const double wsum = g.wp + g.wm;
    const long needed = static_cast<long>(std::ceil(4.0 * wsum * t / kPi));
    const long n = std::clamp(needed, static_cast<long>(spec.maslov_time_samples),
                              static_cast<long>(4'000'000));
    const double ds = t / static_cast<double>(n);
    const double dcp = std::cos(g.wp * ds), dsp = std::sin(g.wp * ds);
    const double dcm = std::cos(g.wm * ds), dsm = std::sin(g.wm * ds);
    double cps = 1.0, sps = 0.0, cms = 1.0, sms = 0.0;
    double prev = 1.0;  // det at s = 0
    double s_prev = 0.0;
    for (long i = 1; i <= n; ++i) {
        const double cpn = cps * dcp - sps * dsp;
        sps = sps * dcp + cps * dsp;
        cps = cpn;
        const double cmn = cms * dcm - sms * dsm;
        sms = sms * dcm + cms * dsm;
        cms = cmn;
        const double s = ds * static_cast<double>(i);
        const double det = jac_det_scan(g, s, cps, sps, cms, sms);
        if ((det < 0.0) != (prev < 0.0) && det != 0.0 && prev != 0.0) {
            // refine the crossing to the configured tolerance
            double lo = s_prev, hi = s, flo = prev;
            while (hi - lo > spec.refine_bisection_tol) {
                const double mid = 0.5 * (lo + hi);
                const double fm = jac_det_exact(g, mid);
                if ((fm < 0.0) == (flo < 0.0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            out.count += signed_count ? (prev > 0.0 ? 1 : -1) : 1;
        } else if (std::abs(det) < kTangencyEps) {
            out.tangency = true;
        }
        prev = det;
        s_prev = s;
    }
    return out;
}

// One chord's full contribution; the single source of truth shared by the
// public integrand and the field fill.
inline std::complex<double> chord_value(double xq, double xp, double xiq, double xip,
                                        double t, const StateParams& st,
                                        const QuadratureSpec& spec, const Dynamics& dyn) {
    ChordGeom g;
    make_geom(xq, xp, xiq, xip, t, dyn, g);
    const double xi_q = g.qpi - g.qmi;
    const double xi_p = g.ppi - g.pmi;
    const double xi2 = xi_q * xi_q + xi_p * xi_p;
    double radial = std::exp(-0.25 * xi2);  // |chi| * 2pi, up to the Fock factor
    if (st.fock1) radial *= 1.0 - 0.5 * xi2;
    if (std::abs(radial) < spec.chi_cutoff) return {0.0, 0.0};

    const double det = jac_det_from(g, t, dyn);
    const ScanResult sc = scan_maslov(g, t, spec, dyn, spec.signed_maslov);
    const double s_tilde = action_from(g, t, dyn, xp, xiq);
    const double chi_phase = -(st.yq * xi_p - st.yp * xi_q);  // -y0.J xi
    const double phase = s_tilde + 0.5 * kPi * static_cast<double>(sc.count) + chi_phase;
    const double amp = std::sqrt(std::abs(det)) * radial / (4.0 * kPi * kPi);
    return {amp * std::cos(phase), amp * std::sin(phase)};
}

std::complex<double> integrate_chords(PhasePoint x_final, double t, const StateParams& st,
                                      const QuadratureSpec& spec, const Dynamics& dyn,
                                      int samples) {
    const double L = spec.chord_halfwidth;
    const double h = 2.0 * L / samples;
    std::complex<double> sum{0.0, 0.0};
    for (int j = 0; j < samples; ++j) {
        const double xip = -L + (j + 0.5) * h;
        for (int i = 0; i < samples; ++i) {
            const double xiq = -L + (i + 0.5) * h;
            sum += chord_value(x_final.q, x_final.p, xiq, xip, t, st, spec, dyn);
        }
    }
    return sum * (h * h);
}

}  // namespace

void QuadratureSpec::validate() const {
    if (!(chord_halfwidth > 0.0)) throw std::invalid_argument("QuadratureSpec: chord_halfwidth must be > 0");
    if (chord_samples < 16) throw std::invalid_argument("QuadratureSpec: chord_samples must be >= 16");
    if (maslov_time_samples < 8) throw std::invalid_argument("QuadratureSpec: maslov_time_samples must be >= 8");
    if (!(chi_cutoff > 0.0 && chi_cutoff < 1.0)) throw std::invalid_argument("QuadratureSpec: chi_cutoff must be in (0,1)");
    if (!(refine_bisection_tol > 0.0 && refine_bisection_tol < 1.0))
        throw std::invalid_argument("QuadratureSpec: refine_bisection_tol must be in (0,1)");
}

QuadratureSpec QuadratureSpec::defaults_for(double max_abs_center) {
    QuadratureSpec spec;
    spec.chord_halfwidth = 2.0 * (max_abs_center + 6.0);
    return spec;
}

double QuadratureSpec::default_halfwidth(const Grid2D& g) {
    double m = 0.0;
    for (double q : {g.q_min, g.q_max})
        for (double p : {g.p_min, g.p_max}) m = std::max(m, std::hypot(q, p));
    return 2.0 * (m + 6.0);
}

ChordMapResult backward_chord_map(PhasePoint x_final, Chord xi_final, double t,
                                  const Dynamics& dyn) {
    if (t < 0.0) throw std::invalid_argument("backward_chord_map: t must be >= 0");
    ChordGeom g;
    make_geom(x_final.q, x_final.p, xi_final.xi_q, xi_final.xi_p, t, dyn, g);
    ChordMapResult r;
    r.eta_plus_final = {g.qpf, g.ppf};
    r.eta_minus_final = {g.qmf, g.pmf};
    r.eta_plus_init = {g.qpi, g.ppi};
    r.eta_minus_init = {g.qmi, g.pmi};
    r.xi_init = {g.qpi - g.qmi, g.ppi - g.pmi};
    r.center_init = {0.5 * (g.qpi + g.qmi), 0.5 * (g.ppi + g.pmi)};
    r.jac_det = jac_det_from(g, t, dyn);
    r.action = action_from(g, t, dyn, x_final.p, xi_final.xi_q);
    return r;
}

double action(const ChordMapResult& result, double t, const Dynamics& dyn) {
    ChordGeom g;
    const Chord xi_final = {result.eta_plus_final.q - result.eta_minus_final.q,
                            result.eta_plus_final.p - result.eta_minus_final.p};
    const PhasePoint x_final = {0.5 * (result.eta_plus_final.q + result.eta_minus_final.q),
                                0.5 * (result.eta_plus_final.p + result.eta_minus_final.p)};
    make_geom(x_final.q, x_final.p, xi_final.xi_q, xi_final.xi_p, t, dyn, g);
    return action_from(g, t, dyn, x_final.p, xi_final.xi_q);
}

MaslovScan maslov_scan(PhasePoint x_final, Chord xi_final, double t,
                       const QuadratureSpec& spec, const Dynamics& dyn) {
    if (t < 0.0) throw std::invalid_argument("maslov_scan: t must be >= 0");
    ChordGeom g;
    make_geom(x_final.q, x_final.p, xi_final.xi_q, xi_final.xi_p, t, dyn, g);
    const ScanResult sc = scan_maslov(g, t, spec, dyn, spec.signed_maslov);
    return {sc.count, sc.tangency};
}

int maslov_count(PhasePoint x_final, Chord xi_final, double t,
                 const QuadratureSpec& spec, const Dynamics& dyn) {
    return maslov_scan(x_final, xi_final, t, spec, dyn).count;
}

std::complex<double> fvr_integrand(PhasePoint x_final, Chord xi_final, double t,
                                   const StateSpec& state, const QuadratureSpec& spec,
                                   const Dynamics& dyn) {
    if (t < 0.0) throw std::invalid_argument("fvr_integrand: t must be >= 0");
    return chord_value(x_final.q, x_final.p, xi_final.xi_q, xi_final.xi_p, t,
                       state_params(state), spec, dyn);
}

FvrPoint fvr_wigner(PhasePoint x_final, double t, const StateSpec& state,
                    const QuadratureSpec& spec, const Dynamics& dyn) {
    if (t < 0.0) throw std::invalid_argument("fvr_wigner: t must be >= 0");
    spec.validate();
    const StateParams st = state_params(state);
    const std::complex<double> full =
        integrate_chords(x_final, t, st, spec, dyn, spec.chord_samples);
    FvrPoint out{full.real(), full.imag(), true};
    if (spec.convergence_tol > 0.0) {
        const std::complex<double> coarse =
            integrate_chords(x_final, t, st, spec, dyn, std::max(16, spec.chord_samples / 2));
        out.converged = std::abs(full.real() - coarse.real()) <= spec.convergence_tol;
    }
    return out;
}

FvrFieldResult fvr_field(const Grid2D& grid, double t, const StateSpec& state,
                         const QuadratureSpec& spec, const Dynamics& dyn, int workers) {
    if (t < 0.0) throw std::invalid_argument("fvr_field: t must be >= 0");
    spec.validate();
    FvrFieldResult out{Field(grid), Field(grid), std::vector<std::uint8_t>(grid.size(), 1), 0.0, 0};
    parallel_for(0, grid.n_p, workers, [&](int row) {
        for (int col = 0; col < grid.n_q; ++col) {
            const FvrPoint v = fvr_wigner({grid.q_at(col), grid.p_at(row)}, t, state, spec, dyn);
            out.field.at(row, col) = v.value;
            out.imag_residue.at(row, col) = v.imag_residue;
            out.converged[grid.index(row, col)] = v.converged ? 1 : 0;
        }
    });
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out.max_abs_imag = std::max(out.max_abs_imag, std::abs(out.imag_residue.values[i]));
        if (!out.converged[i]) ++out.unconverged_nodes;
    }
    return out;
}

Field liouville_field(const Grid2D& grid, double t, const StateSpec& state,
                      const Dynamics& dyn, int workers) {
    if (t < 0.0) throw std::invalid_argument("liouville_field: t must be >= 0");
    Field out(grid);
    parallel_for(0, grid.n_p, workers, [&](int row) {
        for (int col = 0; col < grid.n_q; ++col)
            out.at(row, col) = wigner0(state, flow({grid.q_at(col), grid.p_at(row)}, -t, dyn));
    });
    return out;
}

Field caustic_det_map(PhasePoint x_final, double t, const Grid2D& chord_grid,
                      const Dynamics& dyn, int workers) {
    if (t < 0.0) throw std::invalid_argument("caustic_det_map: t must be >= 0");
    Field out(chord_grid);
    parallel_for(0, chord_grid.n_p, workers, [&](int row) {
        for (int col = 0; col < chord_grid.n_q; ++col) {
            ChordGeom g;
            make_geom(x_final.q, x_final.p, chord_grid.q_at(col), chord_grid.p_at(row), t, dyn, g);
            out.at(row, col) = jac_det_from(g, t, dyn);
        }
    });
    return out;
}

}  // namespace kerr
