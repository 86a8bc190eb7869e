#include "kerr/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <numbers>
#include <set>

#include <json.hpp>

namespace kerr {

namespace {

using nlohmann::json;

std::string trimmed(const std::string& s) {
    auto b = s.begin(), e = s.end();
    while (b != e && std::isspace(static_cast<unsigned char>(*b))) ++b;
    while (e != b && std::isspace(static_cast<unsigned char>(*(e - 1)))) --e;
    return {b, e};
}

double parse_plain(const std::string& s) {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing characters");
    return v;
}

const json* find(const json& obj, const char* key) {
    auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

double require_number(const json& obj, const char* key, const std::string& path) {
    const json* v = find(obj, key);
    if (!v || !v->is_number()) throw ConfigError(path + "." + key, "expected a number");
    return v->get<double>();
}

int require_int(const json& obj, const char* key, const std::string& path) {
    const json* v = find(obj, key);
    if (!v || !v->is_number_integer()) throw ConfigError(path + "." + key, "expected an integer");
    return v->get<int>();
}

int optional_int(const json& obj, const char* key, int fallback, const std::string& path) {
    const json* v = find(obj, key);
    if (!v) return fallback;
    if (!v->is_number_integer()) throw ConfigError(path + "." + key, "expected an integer");
    return v->get<int>();
}

double optional_number(const json& obj, const char* key, double fallback, const std::string& path) {
    const json* v = find(obj, key);
    if (!v) return fallback;
    if (!v->is_number()) throw ConfigError(path + "." + key, "expected a number");
    return v->get<double>();
}

bool optional_bool(const json& obj, const char* key, bool fallback, const std::string& path) {
    const json* v = find(obj, key);
    if (!v) return fallback;
    if (!v->is_boolean()) throw ConfigError(path + "." + key, "expected a boolean");
    return v->get<bool>();
}

PhasePoint parse_point(const json& v, const std::string& path) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        throw ConfigError(path, "expected [q, p]");
    return {v[0].get<double>(), v[1].get<double>()};
}

Grid2D parse_grid(const json& v, const std::string& path) {
    if (!v.is_object()) throw ConfigError(path, "expected an object");
    try {
        return Grid2D(require_number(v, "q_min", path), require_number(v, "q_max", path),
                      require_number(v, "p_min", path), require_number(v, "p_max", path),
                      require_int(v, "n_q", path), require_int(v, "n_p", path));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(path, e.what());
    }
}

}  // namespace

double parse_time_expr(const std::string& text) {
    const std::string s = trimmed(text);
    const auto pos = s.find("pi");
    if (pos == std::string::npos) return parse_plain(s);
    double num = 1.0;
    std::string head = trimmed(s.substr(0, pos));
    if (!head.empty() && head.back() == '*') head = trimmed(head.substr(0, head.size() - 1));
    if (!head.empty()) num = parse_plain(head);
    double den = 1.0;
    std::string tail = trimmed(s.substr(pos + 2));
    if (!tail.empty()) {
        if (tail.front() != '/') throw std::invalid_argument("expected n*pi/m form");
        den = parse_plain(trimmed(tail.substr(1)));
        if (den == 0.0) throw std::invalid_argument("zero denominator");
    }
    return num * std::numbers::pi / den;
}

QuadratureSpec RunConfig::resolved_quadrature() const {
    QuadratureSpec spec = quadrature;
    if (spec.chord_halfwidth <= 0.0)
        spec.chord_halfwidth = QuadratureSpec::default_halfwidth(grid);
    spec.validate();
    return spec;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("(file)", "cannot open " + path.string());
    json root;
    try {
        root = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("(file)", std::string("invalid JSON: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("(root)", "expected a JSON object");

    RunConfig cfg;

    if (const json* st = find(root, "state")) {
        if (!st->is_object()) throw ConfigError("state", "expected an object");
        const json* kind = find(*st, "kind");
        if (!kind || !kind->is_string()) throw ConfigError("state.kind", "expected a string");
        const json* center = find(*st, "center");
        if (!center) throw ConfigError("state.center", "required");
        const PhasePoint c = parse_point(*center, "state.center");
        const std::string k = kind->get<std::string>();
        if (k == "coherent") {
            cfg.state = StateSpec::coherent(c);
        } else if (k == "displaced_fock") {
            const int n = optional_int(*st, "n", 1, "state");
            if (n < 0) throw ConfigError("state.n", "must be >= 0");
            cfg.state = StateSpec::displaced_fock(n, c);
        } else {
            throw ConfigError("state.kind", "must be 'coherent' or 'displaced_fock'");
        }
    } else {
        throw ConfigError("state", "required");
    }

    if (const json* dy = find(root, "dynamics")) {
        if (!dy->is_object()) throw ConfigError("dynamics", "expected an object");
        const json* kind = find(*dy, "kind");
        if (!kind || !kind->is_string()) throw ConfigError("dynamics.kind", "expected a string");
        const std::string k = kind->get<std::string>();
        if (k == "kerr") {
            cfg.dynamics = Dynamics::make_kerr();
        } else if (k == "harmonic") {
            const double w0 = optional_number(*dy, "omega0", 1.0, "dynamics");
            if (!(w0 > 0.0)) throw ConfigError("dynamics.omega0", "must be > 0");
            cfg.dynamics = Dynamics::make_harmonic(w0);
        } else {
            throw ConfigError("dynamics.kind", "must be 'kerr' or 'harmonic'");
        }
    }

    const json* times = find(root, "times");
    if (!times || !times->is_array() || times->empty())
        throw ConfigError("times", "expected a non-empty array");
    for (std::size_t i = 0; i < times->size(); ++i) {
        const json& tv = (*times)[i];
        const std::string where = "times[" + std::to_string(i) + "]";
        TimeValue out;
        if (tv.is_number()) {
            out.value = tv.get<double>();
            out.label = tv.dump();
        } else if (tv.is_string()) {
            try {
                out.value = parse_time_expr(tv.get<std::string>());
            } catch (const std::exception& e) {
                throw ConfigError(where, std::string("bad time expression: ") + e.what());
            }
            out.label = tv.get<std::string>();
        } else {
            throw ConfigError(where, "expected a number or a 'pi/8'-style string");
        }
        if (!(out.value >= 0.0)) throw ConfigError(where, "times must be >= 0");
        cfg.times.push_back(std::move(out));
    }

    if (const json* g = find(root, "grid")) cfg.grid = parse_grid(*g, "grid");
    if (const json* g = find(root, "chord_grid")) cfg.chord_grid = parse_grid(*g, "chord_grid");
    if (const json* c = find(root, "caustic_center"))
        cfg.caustic_center = parse_point(*c, "caustic_center");

    if (const json* q = find(root, "quadrature")) {
        if (!q->is_object()) throw ConfigError("quadrature", "expected an object");
        QuadratureSpec& s = cfg.quadrature;
        s.chord_halfwidth = optional_number(*q, "halfwidth", 0.0, "quadrature");
        s.chord_samples = optional_int(*q, "samples", s.chord_samples, "quadrature");
        s.maslov_time_samples = optional_int(*q, "maslov_time_samples", s.maslov_time_samples, "quadrature");
        s.chi_cutoff = optional_number(*q, "chi_cutoff", s.chi_cutoff, "quadrature");
        s.refine_bisection_tol = optional_number(*q, "bisection_tol", s.refine_bisection_tol, "quadrature");
        s.signed_maslov = optional_bool(*q, "signed_maslov", s.signed_maslov, "quadrature");
        s.convergence_tol = optional_number(*q, "convergence_tol", s.convergence_tol, "quadrature");
        try {
            QuadratureSpec probe = s;
            if (probe.chord_halfwidth <= 0.0) probe.chord_halfwidth = 1.0;  // resolved later
            probe.validate();
        } catch (const std::invalid_argument& e) {
            throw ConfigError("quadrature", e.what());
        }
    }

    cfg.truncation = optional_int(root, "truncation", cfg.truncation, "(root)");
    if (cfg.truncation < 1) throw ConfigError("truncation", "must be >= 1");

    const json* outputs = find(root, "outputs");
    if (!outputs || !outputs->is_array() || outputs->empty())
        throw ConfigError("outputs", "expected a non-empty array");
    const std::set<std::string> known = {"wigner_quantum", "wigner_classical", "wigner_fvr",
                                         "caustic_map", "autocorr", "marginals", "frames"};
    for (std::size_t i = 0; i < outputs->size(); ++i) {
        const json& o = (*outputs)[i];
        const std::string where = "outputs[" + std::to_string(i) + "]";
        if (!o.is_string()) throw ConfigError(where, "expected a string");
        const std::string name = o.get<std::string>();
        if (!known.count(name)) throw ConfigError(where, "unknown output '" + name + "'");
        cfg.outputs.push_back(name);
    }
    const auto has = [&](const char* n) {
        return std::find(cfg.outputs.begin(), cfg.outputs.end(), n) != cfg.outputs.end();
    };
    if (has("marginals") && !has("wigner_quantum") && !has("wigner_fvr") && !has("wigner_classical"))
        throw ConfigError("outputs", "'marginals' requires at least one wigner_* output");
    if (has("autocorr") && !has("wigner_fvr"))
        throw ConfigError("outputs", "'autocorr' requires 'wigner_fvr'");

    if (const json* od = find(root, "out_dir")) {
        if (!od->is_string()) throw ConfigError("out_dir", "expected a string");
        cfg.out_dir = od->get<std::string>();
    }
    cfg.workers = optional_int(root, "workers", 0, "(root)");
    if (cfg.workers < 0) throw ConfigError("workers", "must be >= 0");
    cfg.allow_unconverged = optional_bool(root, "allow_unconverged", false, "(root)");

    if (const json* r = find(root, "render")) {
        if (!r->is_object()) throw ConfigError("render", "expected an object");
        cfg.render.cell_px = optional_int(*r, "cell_px", 0, "render");
        cfg.render.hbar_square = optional_bool(*r, "hbar_square", false, "render");
    }
    return cfg;
}

}  // namespace kerr
