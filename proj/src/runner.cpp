#include "kerr/runner.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>

#include <json.hpp>

#include "kerr/diagnostics.hpp"
#include "kerr/fvr.hpp"
#include "kerr/io.hpp"
#include "kerr/quantum.hpp"
#include "kerr/render.hpp"

namespace kerr {

namespace {

using nlohmann::json;

std::string sanitize(const std::string& label) {
    std::string out;
    for (char c : label)
        out += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
    return out;
}

json grid_json(const Grid2D& g) {
    return {{"q_min", g.q_min}, {"q_max", g.q_max}, {"p_min", g.p_min},
            {"p_max", g.p_max}, {"n_q", g.n_q},     {"n_p", g.n_p}};
}

struct Emitter {
    std::filesystem::path dir;
    json artifacts = json::array();

    void add(const std::string& file, const std::string& output, const TimeValue& t,
             json extra = json::object()) {
        json entry = {{"file", file}, {"output", output}, {"time_label", t.label}, {"time", t.value}};
        entry.update(extra);
        artifacts.push_back(std::move(entry));
    }
};

bool wants(const RunConfig& cfg, const char* name) {
    return std::find(cfg.outputs.begin(), cfg.outputs.end(), name) != cfg.outputs.end();
}

}  // namespace

int run(const RunConfig& cfg) {
    const QuadratureSpec quad = cfg.resolved_quadrature();
    std::filesystem::create_directories(cfg.out_dir);
    Emitter em{cfg.out_dir};

    const bool want_quantum = wants(cfg, "wigner_quantum");
    const bool want_classical = wants(cfg, "wigner_classical");
    const bool want_fvr = wants(cfg, "wigner_fvr");
    const bool want_caustics = wants(cfg, "caustic_map");
    const bool want_autocorr = wants(cfg, "autocorr");
    const bool want_marginals = wants(cfg, "marginals");
    const bool want_frames = wants(cfg, "frames");

    FockVector fock;
    if (want_quantum || want_autocorr || (want_marginals && want_quantum))
        fock = fock_coefficients(cfg.state, cfg.truncation);

    Field w0_grid;  // reference for the overlap autocorrelation
    if (want_autocorr) {
        w0_grid = Field(cfg.grid);
        for (int j = 0; j < cfg.grid.n_p; ++j)
            for (int i = 0; i < cfg.grid.n_q; ++i)
                w0_grid.at(j, i) = wigner0(cfg.state, {cfg.grid.q_at(i), cfg.grid.p_at(j)});
    }

    std::vector<double> ac_t, ac_quantum, ac_fvr;
    int unconverged_total = 0;

    for (std::size_t ti = 0; ti < cfg.times.size(); ++ti) {
        const TimeValue& tv = cfg.times[ti];
        const std::string tag = sanitize(tv.label);
        std::map<std::string, Field> computed;  // kind -> field, for marginals/frames

        if (want_quantum) {
            Field f = wigner_of_state(evolve(fock, tv.value), cfg.grid, cfg.workers);
            const std::string file = "wigner_quantum_" + tag + ".wgr";
            write_field(cfg.out_dir / file, f);
            em.add(file, "wigner_quantum", tv, {{"normalization", normalization(f)}});
            computed.emplace("quantum", std::move(f));
        }
        if (want_classical) {
            Field f = liouville_field(cfg.grid, tv.value, cfg.state, cfg.dynamics, cfg.workers);
            const std::string file = "wigner_classical_" + tag + ".wgr";
            write_field(cfg.out_dir / file, f);
            em.add(file, "wigner_classical", tv, {{"normalization", normalization(f)}});
            computed.emplace("classical", std::move(f));
        }
        if (want_fvr || want_autocorr) {
            FvrFieldResult r = fvr_field(cfg.grid, tv.value, cfg.state, quad, cfg.dynamics, cfg.workers);
            unconverged_total += r.unconverged_nodes;
            const double norm = normalization(r.field);
            if (want_fvr) {
                const std::string file = "wigner_fvr_" + tag + ".wgr";
                write_field(cfg.out_dir / file, r.field);
                em.add(file, "wigner_fvr", tv,
                       {{"normalization", norm},
                        {"max_abs_imag", r.max_abs_imag},
                        {"unconverged_nodes", r.unconverged_nodes},
                        {"chord_halfwidth", quad.chord_halfwidth},
                        {"chord_samples", quad.chord_samples}});
            }
            if (want_autocorr) {
                ac_t.push_back(tv.value);
                ac_quantum.push_back(autocorr_exact(fock, tv.value));
                ac_fvr.push_back(autocorr_overlap(post_normalize(r.field), w0_grid));
            }
            computed.emplace("fvr", std::move(r.field));
        }
        if (want_caustics) {
            Field f = caustic_det_map(cfg.caustic_center, tv.value, cfg.chord_grid,
                                      cfg.dynamics, cfg.workers);
            const std::string file = "caustic_det_" + tag + ".wgr";
            write_field(cfg.out_dir / file, f);
            em.add(file, "caustic_map", tv,
                   {{"center", {cfg.caustic_center.q, cfg.caustic_center.p}}});
            computed.emplace("caustic", std::move(f));
        }
        if (want_marginals) {
            std::vector<std::string> header;
            std::vector<std::vector<double>> cols;
            bool first = true;
            for (const char* kind : {"quantum", "classical", "fvr"}) {
                auto it = computed.find(kind);
                if (it == computed.end()) continue;
                const Field& src = it->second;
                const MarginalCurve c =
                    marginal(std::string(kind) == "fvr" ? post_normalize(src) : src,
                             MarginalAxis::position);
                if (first) {
                    header.push_back("q");
                    cols.push_back(c.abscissa);
                    first = false;
                }
                header.push_back(std::string(kind) == "fvr" ? "fvr_postnorm" : kind);
                cols.push_back(c.density);
            }
            const std::string file = "marginals_" + tag + ".csv";
            write_csv(cfg.out_dir / file, header, cols);
            em.add(file, "marginals", tv);
        }
        if (want_frames) {
            for (const auto& [kind, field] : computed) {
                RenderOptions opts = cfg.render;
                opts.zero_contours = (kind == "caustic");
                char idx[16];
                std::snprintf(idx, sizeof(idx), "%04zu", ti);
                const std::string file = "frame_" + kind + "_" + idx + ".ppm";
                render_heatmap(field, cfg.out_dir / file, opts);
                em.add(file, "frames", tv, {{"kind", kind}});
            }
        }
    }

    if (want_autocorr) {
        write_csv(cfg.out_dir / "autocorr.csv", {"t", "A2_quantum", "A2_fvr_postnorm"},
                  {ac_t, ac_quantum, ac_fvr});
        em.artifacts.push_back({{"file", "autocorr.csv"}, {"output", "autocorr"}});
    }

    json manifest = {
        {"grid", grid_json(cfg.grid)},
        {"truncation", cfg.truncation},
        {"quadrature",
         {{"halfwidth", quad.chord_halfwidth},
          {"samples", quad.chord_samples},
          {"maslov_time_samples", quad.maslov_time_samples},
          {"chi_cutoff", quad.chi_cutoff},
          {"bisection_tol", quad.refine_bisection_tol},
          {"signed_maslov", quad.signed_maslov},
          {"convergence_tol", quad.convergence_tol}}},
        {"unconverged_nodes_total", unconverged_total},
        {"artifacts", em.artifacts}};
    std::ofstream mf(cfg.out_dir / "manifest.json");
    mf << manifest.dump(2) << "\n";

    if (unconverged_total > 0 && !cfg.allow_unconverged) return kExitUnconverged;
    return kExitOk;
}

int run_caustics(const RunConfig& config) {
    RunConfig cfg = config;
    cfg.outputs = {"caustic_map", "frames"};
    return run(cfg);
}

int run_autocorr(const RunConfig& config) {
    RunConfig cfg = config;
    cfg.outputs = {"autocorr"};
    return run(cfg);
}

}  // namespace kerr
