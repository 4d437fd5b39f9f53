#include "deltashock/config.hpp"

#include "deltashock/analysis.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace deltashock {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0;
    std::size_t b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

[[noreturn]] void fail(int line, const std::string& what) {
    throw std::invalid_argument("config line " + std::to_string(line) + ": " + what);
}

double parse_double(const std::string& v, int line, const std::string& key) {
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0' || !std::isfinite(x))
        fail(line, "field '" + key + "' expects a finite number, got '" + v + "'");
    return x;
}

int parse_int(const std::string& v, int line, const std::string& key) {
    char* end = nullptr;
    const long x = std::strtol(v.c_str(), &end, 10);
    if (end == v.c_str() || *end != '\0')
        fail(line, "field '" + key + "' expects an integer, got '" + v + "'");
    return static_cast<int>(x);
}

bool parse_bool(const std::string& v, int line, const std::string& key) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    fail(line, "field '" + key + "' expects true or false, got '" + v + "'");
}

bool apply_initial_key(InitialSpec& ini, const std::string& rest, const std::string& value,
                       int line, const std::string& key) {
    if (rest == "kind") ini.kind = value;
    else if (rest == "amplitude") ini.amplitude = parse_double(value, line, key);
    else if (rest == "offset") ini.offset = parse_double(value, line, key);
    else if (rest == "left") ini.left = parse_double(value, line, key);
    else if (rest == "right") ini.right = parse_double(value, line, key);
    else if (rest == "jump") ini.jump = parse_double(value, line, key);
    else if (rest == "value") ini.value = parse_double(value, line, key);
    else if (rest == "alpha") ini.alpha = parse_double(value, line, key);
    else if (rest == "beta") ini.beta = parse_double(value, line, key);
    else if (rest == "epsilon") ini.epsilon = parse_double(value, line, key);
    else return false;
    return true;
}

void apply_key(RunConfig& cfg, const std::string& key, const std::string& value, int line) {
    if (key == "schema") {
        const int s = parse_int(value, line, key);
        if (s != 1) fail(line, "unsupported schema " + std::to_string(s));
        cfg.schema = s;
    } else if (key == "grid.length") cfg.grid_length = parse_double(value, line, key);
    else if (key == "grid.origin") cfg.grid_origin = parse_double(value, line, key);
    else if (key == "grid.cells") cfg.grid_cells = parse_int(value, line, key);
    else if (key == "model") cfg.model = value;
    else if (key.rfind("initial.", 0) == 0) {
        if (!apply_initial_key(cfg.initial, key.substr(8), value, line, key))
            fail(line, "unknown field '" + key + "'");
    } else if (key.rfind("initial_v.", 0) == 0) {
        if (!apply_initial_key(cfg.initial_v, key.substr(10), value, line, key))
            fail(line, "unknown field '" + key + "'");
    } else if (key == "flux.family") cfg.flux_family = value;
    else if (key == "irregularization.family") cfg.irr_family = value;
    else if (key == "irregularization.epsilon") cfg.epsilon = parse_double(value, line, key);
    else if (key == "regularization.eta") cfg.eta = parse_double(value, line, key);
    else if (key == "regularization.order") cfg.order = parse_int(value, line, key);
    else if (key == "scheme.cfl") cfg.cfl = parse_double(value, line, key);
    else if (key == "scheme.dt_policy") cfg.dt_policy = value;
    else if (key == "scheme.fixed_dt") cfg.fixed_dt = parse_double(value, line, key);
    else if (key == "scheme.abort_on_nonfinite") cfg.abort_on_nonfinite = parse_bool(value, line, key);
    else if (key == "run.t_end") cfg.t_end = parse_double(value, line, key);
    else if (key == "run.snapshot_stride") cfg.snapshot_stride = parse_int(value, line, key);
    else if (key == "converge.levels") cfg.converge_levels = parse_int(value, line, key);
    else if (key == "output.dir") cfg.out_dir = value;
    else fail(line, "unknown field '" + key + "'");
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string stripped = trim(raw);
        if (stripped.empty()) continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos) fail(line_no, "expected 'key = value'");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) fail(line_no, "empty key");
        if (key.rfind("variant.", 0) == 0) {
            const std::string rest = key.substr(8);
            const std::size_t dot = rest.find('.');
            if (dot == std::string::npos || dot == 0 || dot + 1 == rest.size())
                fail(line_no, "variant keys look like variant.<name>.<field>");
            const std::string name = rest.substr(0, dot);
            const std::string field = rest.substr(dot + 1);
            auto it = std::find_if(cfg.variants.begin(), cfg.variants.end(),
                                   [&](const auto& v) { return v.first == name; });
            if (it == cfg.variants.end()) {
                cfg.variants.emplace_back(name, std::map<std::string, std::string>{});
                it = std::prev(cfg.variants.end());
            }
            it->second[field] = value;
            continue;
        }
        apply_key(cfg, key, value, line_no);
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string format_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

void serialize_initial(std::ostream& out, const char* prefix, const InitialSpec& ini) {
    out << prefix << ".kind = " << ini.kind << '\n';
    out << prefix << ".amplitude = " << format_g17(ini.amplitude) << '\n';
    out << prefix << ".offset = " << format_g17(ini.offset) << '\n';
    out << prefix << ".left = " << format_g17(ini.left) << '\n';
    out << prefix << ".right = " << format_g17(ini.right) << '\n';
    out << prefix << ".jump = " << format_g17(ini.jump) << '\n';
    out << prefix << ".value = " << format_g17(ini.value) << '\n';
    out << prefix << ".alpha = " << format_g17(ini.alpha) << '\n';
    out << prefix << ".beta = " << format_g17(ini.beta) << '\n';
    out << prefix << ".epsilon = " << format_g17(ini.epsilon) << '\n';
}

}  // namespace

std::string serialize_config(const RunConfig& cfg) {
    std::ostringstream out;
    out << "schema = " << cfg.schema << '\n';
    out << "grid.length = " << format_g17(cfg.grid_length) << '\n';
    out << "grid.origin = " << format_g17(cfg.grid_origin) << '\n';
    out << "grid.cells = " << cfg.grid_cells << '\n';
    out << "model = " << cfg.model << '\n';
    serialize_initial(out, "initial", cfg.initial);
    serialize_initial(out, "initial_v", cfg.initial_v);
    out << "flux.family = " << cfg.flux_family << '\n';
    out << "irregularization.family = " << cfg.irr_family << '\n';
    out << "irregularization.epsilon = " << format_g17(cfg.epsilon) << '\n';
    out << "regularization.eta = " << format_g17(cfg.eta) << '\n';
    out << "regularization.order = " << cfg.order << '\n';
    out << "scheme.cfl = " << format_g17(cfg.cfl) << '\n';
    out << "scheme.dt_policy = " << cfg.dt_policy << '\n';
    out << "scheme.fixed_dt = " << format_g17(cfg.fixed_dt) << '\n';
    out << "scheme.abort_on_nonfinite = " << (cfg.abort_on_nonfinite ? "true" : "false") << '\n';
    out << "run.t_end = " << format_g17(cfg.t_end) << '\n';
    out << "run.snapshot_stride = " << cfg.snapshot_stride << '\n';
    if (cfg.converge_levels > 0) out << "converge.levels = " << cfg.converge_levels << '\n';
    out << "output.dir = " << cfg.out_dir << '\n';
    for (const auto& [name, overrides] : cfg.variants)
        for (const auto& [field, value] : overrides)
            out << "variant." << name << "." << field << " = " << value << '\n';
    return out.str();
}

std::vector<std::pair<std::string, RunConfig>> expand_variants(const RunConfig& cfg) {
    std::vector<std::pair<std::string, RunConfig>> runs;
    if (cfg.variants.empty()) {
        runs.emplace_back("", cfg);
        return runs;
    }
    for (const auto& [name, overrides] : cfg.variants) {
        RunConfig run = cfg;
        run.variants.clear();
        run.out_dir = cfg.out_dir + "/" + name;
        for (const auto& [field, value] : overrides) {
            if (field == "output.dir") { run.out_dir = value; continue; }
            apply_key(run, field, value, 0);
        }
        runs.emplace_back(name, run);
    }
    return runs;
}

namespace {

std::function<double(double)> initial_profile(const InitialSpec& ini, const RunConfig& cfg) {
    const double origin = cfg.grid_origin;
    const double length = cfg.grid_length;
    if (ini.kind == "sin") {
        const double a = ini.amplitude, off = ini.offset;
        return [=](double x) { return a * std::sin(2.0 * M_PI * (x - origin) / length) + off; };
    }
    if (ini.kind == "shifted-sin") {
        const double a = ini.amplitude;
        return [=](double x) { return a * std::sin(2.0 * M_PI * (x - origin) / length) + 0.1; };
    }
    if (ini.kind == "riemann-step") {
        const double l = ini.left, r = ini.right, j = ini.jump;
        return [=](double x) { return x <= j ? l : r; };
    }
    if (ini.kind == "cosh") {
        const double al = ini.alpha, be = ini.beta, ep = ini.epsilon;
        return [=](double x) { return cosh_profile(al, be, ep, x); };
    }
    if (ini.kind == "constant") {
        const double v = ini.value;
        return [=](double) { return v; };
    }
    throw std::invalid_argument("unknown initial kind '" + ini.kind + "'");
}

}  // namespace

bool config_is_system(const RunConfig& cfg) {
    return cfg.model == "tans" || cfg.model == "tans-viscous" || cfg.model == "keyfitz" ||
           cfg.model == "hopf-transport";
}

FieldState initial_state(const RunConfig& cfg) {
    const Grid1D grid = make_grid(cfg.grid_length, cfg.grid_cells, true, cfg.grid_origin);
    if (cfg.model == "scalar")
        return sample(grid, initial_profile(cfg.initial, cfg));
    if (!config_is_system(cfg))
        throw std::invalid_argument("unknown model '" + cfg.model + "'");
    auto u = initial_profile(cfg.initial, cfg);
    if (cfg.initial_v.kind == "dx-of-u") {
        FieldState state = sample2(grid, u, [](double) { return 0.0; });
        const std::vector<double> du = central_derivative(state, 0);
        for (int i = 0; i < grid.cells; ++i) state.at(1, i) = du[i];
        return state;
    }
    return sample2(grid, u, initial_profile(cfg.initial_v, cfg));
}

FluxSpec config_flux(const RunConfig& cfg) {
    if (cfg.flux_family == "hopf") return make_flux(FluxFamily::hopf);
    if (cfg.flux_family == "square") return make_flux(FluxFamily::square);
    throw std::invalid_argument("unknown flux family '" + cfg.flux_family + "'");
}

IrregularizationSpec config_irregularization(const RunConfig& cfg) {
    if (cfg.irr_family == "none") return make_irregularization(IrregFamily::none, 0.0);
    if (cfg.irr_family == "rational")
        return make_irregularization(IrregFamily::rational, cfg.epsilon);
    if (cfg.irr_family == "exponential")
        return make_irregularization(IrregFamily::exponential, cfg.epsilon);
    throw std::invalid_argument("unknown irregularization family '" + cfg.irr_family + "'");
}

RegularizationSpec config_regularization(const RunConfig& cfg) {
    return make_regularization(cfg.eta, cfg.order);
}

SchemeConfig config_scheme(const RunConfig& cfg) {
    SchemeConfig scheme;
    scheme.cfl = cfg.cfl;
    if (cfg.dt_policy == "cfl-adaptive") scheme.dt_policy = SchemeConfig::DtPolicy::cfl_adaptive;
    else if (cfg.dt_policy == "fixed") scheme.dt_policy = SchemeConfig::DtPolicy::fixed;
    else throw std::invalid_argument("unknown dt policy '" + cfg.dt_policy + "'");
    scheme.fixed_dt = cfg.fixed_dt;
    scheme.abort_on_nonfinite = cfg.abort_on_nonfinite;
    return scheme;
}

Trajectory run_config(const RunConfig& cfg) {
    const FieldState initial = initial_state(cfg);
    const SchemeConfig scheme = config_scheme(cfg);
    const int stride = cfg.snapshot_stride > 0 ? cfg.snapshot_stride : 0;
    if (cfg.model == "scalar") {
        const RhsOperator rhs =
            scalar_upwind_operator(config_flux(cfg), config_irregularization(cfg));
        const RegularizationSpec reg = config_regularization(cfg);
        std::unique_ptr<SpectralFilter> filter;
        if (reg.active()) filter = std::make_unique<SpectralFilter>(initial.grid, reg);
        return run(initial, rhs, filter.get(), scheme, cfg.t_end, stride);
    }
    const SystemSpec sys = config_system(cfg);
    const RhsOperator rhs = system_operator(sys);
    std::unique_ptr<SpectralFilter> filter = system_filter(initial.grid, sys);
    return run(initial, rhs, filter.get(), scheme, cfg.t_end, stride);
}

SystemSpec config_system(const RunConfig& cfg) {
    if (cfg.model == "tans") return make_tans_system();
    if (cfg.model == "tans-viscous") return make_tans_viscous_system(cfg.eta);
    if (cfg.model == "keyfitz") return make_keyfitz_system();
    if (cfg.model == "hopf-transport") return make_hopf_transport_system(cfg.eta);
    throw std::invalid_argument("model '" + cfg.model + "' is not a two-component system");
}

}  // namespace deltashock
