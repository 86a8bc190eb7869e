#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "kerr/acceptance.hpp"
#include "kerr/io.hpp"
#include "kerr/render.hpp"
#include "kerr/runner.hpp"

namespace {

struct CommonOpts {
    std::string config;
    std::string out;
    int workers = 0;
    bool allow_unconverged = false;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool config_required = true) {
    auto* c = cmd->add_option("--config", o.config, "JSON config file");
    if (config_required) c->required();
    cmd->add_option("--out", o.out, "output directory (overrides config)");
    cmd->add_option("--workers", o.workers, "worker threads, 0 = hardware default");
    cmd->add_flag("--allow-unconverged", o.allow_unconverged,
                  "exit 0 even when quadrature nodes fail their convergence check");
}

kerr::RunConfig load_with_overrides(const CommonOpts& o) {
    kerr::RunConfig cfg = kerr::load_run_config(o.config);
    if (!o.out.empty()) cfg.out_dir = o.out;
    if (o.workers > 0) cfg.workers = o.workers;
    if (o.allow_unconverged) cfg.allow_unconverged = true;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Phase-space semiclassical propagator for the Kerr oscillator"};
    app.require_subcommand(1);

    CommonOpts evolve_o, caustics_o, autocorr_o;
    auto* evolve = app.add_subcommand("evolve", "run the configured propagators and outputs");
    add_common(evolve, evolve_o);
    auto* caustics = app.add_subcommand("caustics", "chord-Jacobian determinant maps only");
    add_common(caustics, caustics_o);
    auto* autocorr = app.add_subcommand("autocorr", "autocorrelation curves only");
    add_common(autocorr, autocorr_o);

    std::string render_in, render_out;
    int render_cell = 0;
    bool render_hbar = false, render_contours = false;
    auto* render = app.add_subcommand("render", "render a grid file to a PPM heatmap");
    render->add_option("input", render_in, "WGR1 grid file")->required();
    render->add_option("output", render_out, "PPM output path")->required();
    render->add_option("--cell-px", render_cell, "pixels per grid cell");
    render->add_flag("--hbar-square", render_hbar, "overlay a unit-area reference square");
    render->add_flag("--zero-contours", render_contours, "mark sign-change cells in black");

    std::vector<int> verify_ids;
    int verify_workers = 0;
    auto* verify = app.add_subcommand("verify", "run the acceptance suite");
    verify->add_option("--criteria", verify_ids, "criterion numbers to run (default: all)");
    verify->add_option("--workers", verify_workers, "worker threads, 0 = hardware default");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*evolve) return kerr::run(load_with_overrides(evolve_o));
        if (*caustics) return kerr::run_caustics(load_with_overrides(caustics_o));
        if (*autocorr) return kerr::run_autocorr(load_with_overrides(autocorr_o));
        if (*render) {
            kerr::Field f = kerr::read_real_field(render_in);
            kerr::RenderOptions opts;
            opts.cell_px = render_cell;
            opts.hbar_square = render_hbar;
            opts.zero_contours = render_contours;
            kerr::render_heatmap(f, render_out, opts);
            return kerr::kExitOk;
        }
        if (*verify) return kerr::run_acceptance(verify_ids, verify_workers);
    } catch (const kerr::ConfigError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return kerr::kExitConfig;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return kerr::kExitOk;
}
