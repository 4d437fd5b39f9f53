#include "deltashock/cli.hpp"

#include "deltashock/analysis.hpp"
#include "deltashock/config.hpp"
#include "deltashock/convergence.hpp"
#include "deltashock/io.hpp"
#include "deltashock/presets.hpp"
#include "deltashock/rh.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace deltashock {

namespace {

using nlohmann::json;

RunConfig load_base(const std::string& cfg_path, const std::string& preset_name) {
    if (!preset_name.empty()) return preset(preset_name);
    return load_config(cfg_path);
}

// Output directory precedence: --out flag, then DELTASHOCK_OUT, then config.
void resolve_out_dir(RunConfig& cfg, const std::string& flag) {
    if (!flag.empty()) {
        cfg.out_dir = flag;
        return;
    }
    if (const char* env = std::getenv("DELTASHOCK_OUT")) {
        if (*env) cfg.out_dir = env;
    }
}

json crossings_json(const FieldState& state) {
    json arr = json::array();
    for (const ZeroCrossing& c : zero_crossings(state)) {
        arr.push_back({{"position", c.position},
                       {"direction", c.direction == CrossingDirection::upward ? "up" : "down"}});
    }
    return arr;
}

json spike_json(const SpikeReport& s) {
    json j;
    j["found"] = s.found;
    if (!s.found) return j;
    j["location"] = s.location;
    j["peak_pos"] = s.peak_pos;
    j["peak_neg"] = s.peak_neg;
    j["width"] = s.width;
    j["net_mass"] = s.net_mass;
    j["window_lo"] = s.window_lo;
    j["window_hi"] = s.window_hi;
    if (s.cosh_alpha) j["cosh_alpha"] = *s.cosh_alpha;
    if (s.cosh_beta) j["cosh_beta"] = *s.cosh_beta;
    return j;
}

std::string frame_name(std::size_t step) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "snap_%06zu.csv", step);
    return buf;
}

int do_run(const RunConfig& base, std::ostream& out) {
    int rc = 0;
    for (const auto& [name, cfg] : expand_variants(base)) {
        ensure_directory(cfg.out_dir);
        {
            std::ofstream cfg_out(cfg.out_dir + "/config.txt", std::ios::binary);
            cfg_out << serialize_config(cfg);
        }
        const auto t0 = std::chrono::steady_clock::now();
        const Trajectory traj = run_config(cfg);
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        for (std::size_t k = 0; k < traj.frames.size(); ++k)
            write_snapshot(cfg.out_dir + "/" + frame_name(traj.frame_steps[k]), traj.frames[k]);
        write_series_csv(cfg.out_dir + "/series.csv", traj.series);
        write_run_manifest(cfg.out_dir + "/manifest.json", serialize_config(cfg), traj, wall);

        const FieldState& final_state = traj.last();
        json summary;
        summary["variant"] = name;
        summary["steps"] = traj.steps;
        summary["final_time"] = final_state.time;
        summary["aborted"] = traj.aborted;
        if (traj.aborted) summary["abort_reason"] = traj.abort_reason;
        summary["mass"] = total_mass(final_state);
        summary["crossings"] = crossings_json(final_state);
        summary["spike"] = spike_json(detect_spike(final_state));
        std::ofstream sum_out(cfg.out_dir + "/summary.json", std::ios::binary);
        sum_out << summary.dump(2) << "\n";

        out << "run " << (name.empty() ? "base" : name) << ": steps=" << traj.steps
            << " final_t=" << format_g17(final_state.time);
        if (traj.aborted) {
            out << " ABORTED (" << traj.abort_reason << ")";
            rc = 2;
        }
        out << " -> " << cfg.out_dir << "\n";
    }
    return rc;
}

int do_riemann(const std::string& flux_name, const std::vector<double>& left,
               const std::vector<double>& right, bool have_sigma, double sigma, double at_time,
               std::ostream& out) {
    VectorFlux vf;
    std::size_t comps = 1;
    if (flux_name == "hopf") vf = scalar_vector_flux(make_flux(FluxFamily::hopf));
    else if (flux_name == "square") vf = scalar_vector_flux(make_flux(FluxFamily::square));
    else if (flux_name == "tans") { vf = tans_vector_flux(); comps = 2; }
    else if (flux_name == "keyfitz") { vf = keyfitz_vector_flux(); comps = 2; }
    else if (flux_name == "hopf-transport") {
        vf = transport_vector_flux(make_flux(FluxFamily::hopf), [](double u) { return u; });
        comps = 2;
    } else throw std::invalid_argument("unknown flux '" + flux_name + "'");
    if (left.size() != comps || right.size() != comps)
        throw std::invalid_argument("flux '" + flux_name + "' expects " + std::to_string(comps) +
                                    " state component(s)");

    const RiemannData data{left, right};
    json j;
    j["flux"] = flux_name;
    j["left"] = left;
    j["right"] = right;
    try {
        const ShockSpeedResult cs = classical_shock_speed(vf, data);
        j["classical"] = {{"overdetermined", cs.overdetermined},
                          {"component_speeds", cs.component_speeds}};
        if (!cs.overdetermined) {
            j["classical"]["speed"] = cs.speed;
            j["defect_rate_at_classical_speed"] = delta_mass_rate(vf, data, cs.speed);
        }
    } catch (const std::invalid_argument& e) {
        j["classical"] = {{"error", e.what()}};
    }

    const double sig = have_sigma ? sigma : 0.0;
    std::vector<double> rate = delta_mass_rate(vf, data, sig);
    std::vector<double> atom_mass(rate.size());
    for (std::size_t c = 0; c < rate.size(); ++c) atom_mass[c] = rate[c] * at_time;
    j["defect"] = {{"sigma", sig}, {"rate", rate}, {"time", at_time}, {"atom_mass", atom_mass}};

    if (flux_name == "tans") j["degenerate"] = tans_degeneracy(data);
    if (flux_name == "hopf" && left == std::vector<double>{1.0} &&
        right == std::vector<double>{0.0}) {
        const AtomicMeasure1D sol = stationary_riemann_solution(at_time);
        json atoms = json::array();
        for (const PointAtom& a : sol.atoms)
            atoms.push_back({{"position", a.position}, {"mass", a.mass}});
        j["stationary_solution"] = {{"step_position", sol.regular.position},
                                    {"step_left", sol.regular.left},
                                    {"step_right", sol.regular.right},
                                    {"atoms", atoms}};
    }
    out << j.dump(2) << "\n";
    return 0;
}

int do_converge(RunConfig base, int levels_flag, double threshold, std::ostream& out) {
    const int levels = levels_flag > 0 ? levels_flag
                       : base.converge_levels > 0 ? base.converge_levels
                                                  : 3;
    const std::vector<ConvergenceRow> rows = convergence_study(base, levels, threshold);
    ensure_directory(base.out_dir);
    write_convergence_csv(base.out_dir + "/convergence.csv", rows);
    for (const ConvergenceRow& r : rows) {
        out << "level " << r.level << ": dx=" << format_g17(r.dx)
            << " eps=" << format_g17(r.epsilon);
        if (r.spike_found)
            out << " width=" << format_g17(r.width) << " net_mass=" << format_g17(r.net_mass)
                << " peak=" << format_g17(r.peak_pos) << " at=" << format_g17(r.location);
        else
            out << " no spike";
        out << "\n";
    }
    out << "wrote " << base.out_dir << "/convergence.csv\n";
    return 0;
}

int do_asymptotic(const RunConfig& cfg, double at_time, const std::string& out_dir,
                  std::ostream& out) {
    const FieldState initial = initial_state(cfg);
    const AsymptoticProfile prof = asymptotic_profile(initial, cfg.epsilon, at_time);
    json j;
    j["time"] = at_time;
    j["slope_b"] = prof.slope_b;
    j["intercept_a"] = prof.intercept_a;
    j["crossing_up"] = prof.crossing_up;
    j["crossing_down"] = prof.crossing_down;
    json spikes = json::array();
    for (const AsymptoticSpike& s : prof.spikes)
        spikes.push_back({{"alpha", s.alpha},
                          {"beta", s.beta},
                          {"epsilon", s.epsilon},
                          {"mass", s.mass},
                          {"cut", s.cut}});
    j["spikes"] = spikes;
    out << j.dump(2) << "\n";
    if (!out_dir.empty()) {
        ensure_directory(out_dir);
        std::ofstream csv(out_dir + "/predicted.csv", std::ios::binary);
        csv << "x,predicted\n";
        for (int i = 0; i < initial.grid.cells; ++i) {
            const double x = initial.grid.center(i);
            csv << format_g17(x) << "," << format_g17(prof.eval(x)) << "\n";
        }
    }
    return 0;
}

int do_analyze(const std::string& snapshot, double threshold, std::ostream& out) {
    const FieldState state = read_snapshot(snapshot);
    json j;
    j["time"] = state.time;
    j["cells"] = state.grid.cells;
    j["components"] = state.components;
    j["mass"] = total_mass(state);
    j["crossings"] = crossings_json(state);
    j["spike"] = spike_json(detect_spike(state, nullptr, threshold));
    out << j.dump(2) << "\n";
    return 0;
}

int do_preset(const std::string& name, const std::string& out_file, bool list, std::ostream& out) {
    if (list) {
        for (const std::string& n : preset_names()) out << n << "\n";
        return 0;
    }
    const std::string text = serialize_config(preset(name));
    if (out_file.empty()) {
        out << text;
        return 0;
    }
    std::ofstream f(out_file, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write '" + out_file + "'");
    f << text;
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"defect-capturing conservation law laboratory"};
    app.set_version_flag("--version", std::string("deltashock ") + kVersion);
    app.require_subcommand(1);

    std::string cfg_path, preset_name, out_flag;

    CLI::App* run_cmd = app.add_subcommand("run", "integrate a config, all variants");
    run_cmd->add_option("--config", cfg_path, "config file");
    run_cmd->add_option("--preset", preset_name, "built-in preset name");
    run_cmd->add_option("--out", out_flag, "output directory (beats DELTASHOCK_OUT)");

    CLI::App* rie_cmd = app.add_subcommand("riemann", "jump conditions for step data");
    std::string flux_name = "hopf";
    std::vector<double> left, right;
    double sigma = 0.0, at_time = 1.0;
    rie_cmd->add_option("--flux", flux_name, "hopf | square | tans | keyfitz | hopf-transport");
    rie_cmd->add_option("--left", left, "left state, comma separated")
        ->required()
        ->delimiter(',');
    rie_cmd->add_option("--right", right, "right state, comma separated")
        ->required()
        ->delimiter(',');
    CLI::Option* sigma_opt = rie_cmd->add_option("--sigma", sigma, "defect speed (default 0)");
    rie_cmd->add_option("--time", at_time, "evaluate atom masses at this time");

    CLI::App* conv_cmd = app.add_subcommand("converge", "joint dx/epsilon refinement ladder");
    conv_cmd->add_option("--config", cfg_path, "config file");
    conv_cmd->add_option("--preset", preset_name, "built-in preset name");
    conv_cmd->add_option("--out", out_flag, "output directory");
    int levels = 0;
    double threshold = 3.0;
    conv_cmd->add_option("--levels", levels, "refinement levels (>= 3)");
    conv_cmd->add_option("--threshold", threshold, "spike detection threshold");

    CLI::App* asy_cmd = app.add_subcommand("asymptotic", "predict the late profile from t = 0 data");
    asy_cmd->add_option("--config", cfg_path, "config file");
    asy_cmd->add_option("--preset", preset_name, "built-in preset name");
    asy_cmd->add_option("--out", out_flag, "directory for the sampled prediction");
    CLI::Option* time_opt = asy_cmd->add_option("--time", at_time, "prediction time");

    CLI::App* ana_cmd = app.add_subcommand("analyze", "crossings and spike report for a snapshot");
    std::string snapshot;
    ana_cmd->add_option("--snapshot", snapshot, "snapshot csv written by run")->required();
    ana_cmd->add_option("--threshold", threshold, "spike detection threshold");

    CLI::App* pre_cmd = app.add_subcommand("preset", "print or save a built-in config");
    std::string pre_name, pre_out;
    bool pre_list = false;
    pre_cmd->add_option("name", pre_name, "preset name");
    pre_cmd->add_option("--out", pre_out, "write to this file instead of stdout");
    pre_cmd->add_flag("--list", pre_list, "list preset names");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("deltashock");
    for (const std::string& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (run_cmd->parsed()) {
            if (cfg_path.empty() == preset_name.empty())
                throw std::invalid_argument("run needs exactly one of --config or --preset");
            RunConfig base = load_base(cfg_path, preset_name);
            resolve_out_dir(base, out_flag);
            return do_run(base, out);
        }
        if (rie_cmd->parsed())
            return do_riemann(flux_name, left, right, sigma_opt->count() > 0, sigma, at_time, out);
        if (conv_cmd->parsed()) {
            if (cfg_path.empty() == preset_name.empty())
                throw std::invalid_argument("converge needs exactly one of --config or --preset");
            RunConfig base = load_base(cfg_path, preset_name);
            resolve_out_dir(base, out_flag);
            return do_converge(base, levels, threshold, out);
        }
        if (asy_cmd->parsed()) {
            if (cfg_path.empty() == preset_name.empty())
                throw std::invalid_argument("asymptotic needs exactly one of --config or --preset");
            const RunConfig base = load_base(cfg_path, preset_name);
            const double t = time_opt->count() > 0 ? at_time : base.t_end;
            return do_asymptotic(base, t, out_flag, out);
        }
        if (ana_cmd->parsed()) return do_analyze(snapshot, threshold, out);
        if (pre_cmd->parsed()) {
            if (!pre_list && pre_name.empty())
                throw std::invalid_argument("preset needs a name or --list");
            return do_preset(pre_name, pre_out, pre_list, out);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << "error: no subcommand\n";
    return 1;
}

}  // namespace deltashock
