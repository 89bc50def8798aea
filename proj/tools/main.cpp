// Command-line front end: equilibria, characteristic coefficients, critical
// delays, parameter-plane sweeps, simulations and spectra for coupled
// Wilson-Cowan pairs with distributed delays.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wcdd/errors.hpp"
#include "wcdd/io.hpp"
#include "wcdd/spectrum.hpp"
#include "wcdd/sweep.hpp"

namespace {

using namespace wcdd;

struct CommonOpts {
    std::string config_path;
    std::string preset_name;
    std::string kernel_name;
    std::string out_path;
};

void add_common(CLI::App* cmd, CommonOpts& c, bool net_required = true) {
    auto* cfg = cmd->add_option("--config", c.config_path, "circuit configuration JSON file");
    auto* pre = cmd->add_option("--preset", c.preset_name,
                                "named circuit: wang-baseline|pfc-bla-a|pfc-bla-b");
    cfg->excludes(pre);
    if (!net_required) {
        cfg->required(false);
        pre->required(false);
    }
    cmd->add_option("--kernel", c.kernel_name, "delay kernel: dirac|weak-gamma");
    cmd->add_option("--out", c.out_path, "output file (default stdout)");
}

NetworkSpec resolve_network(const CommonOpts& c) {
    NetworkSpec net;
    if (!c.config_path.empty())
        net = load_network(c.config_path);
    else if (!c.preset_name.empty())
        net = preset(c.preset_name);
    else
        throw ConfigError("need --config or --preset");
    if (!c.kernel_name.empty()) net.kernel.kind = kernel_from_string(c.kernel_name);
    return net;
}

void emit(const CommonOpts& c, const std::string& text) {
    if (c.out_path.empty()) {
        std::cout << text << '\n';
        return;
    }
    std::ofstream os(c.out_path);
    if (!os) throw IoError("cannot open output file: " + c.out_path);
    os << text << '\n';
}

AxisSpec parse_axis(const std::string& text) {
    // name:min:max:steps
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream ss(text);
    while (std::getline(ss, cur, ':')) parts.push_back(cur);
    if (parts.size() != 4)
        throw ConfigError("axis spec must be name:min:max:steps, got '" + text + "'");
    AxisSpec ax;
    ax.name = parts[0];
    try {
        ax.min = std::stod(parts[1]);
        ax.max = std::stod(parts[2]);
        ax.steps = std::stoi(parts[3]);
    } catch (const std::exception&) {
        throw ConfigError("malformed axis spec '" + text + "'");
    }
    return ax;
}

std::vector<double> parse_reals(const std::string& text) {
    std::vector<double> out;
    std::string cur;
    std::istringstream ss(text);
    while (std::getline(ss, cur, ',')) {
        try {
            out.push_back(std::stod(cur));
        } catch (const std::exception&) {
            throw ConfigError("malformed number list '" + text + "'");
        }
    }
    return out;
}

int run(int argc, char** argv) {
    CLI::App app{"coupled Wilson-Cowan pairs with distributed delays"};
    app.require_subcommand(1);

    // equilibrium
    CommonOpts eq_opts;
    auto* cmd_eq = app.add_subcommand("equilibrium", "solve the fixed-point system");
    add_common(cmd_eq, eq_opts);

    // coeffs
    CommonOpts co_opts;
    int co_index = 0;
    auto* cmd_co =
        app.add_subcommand("coeffs", "characteristic coefficients (alpha, beta) at equilibrium");
    add_common(cmd_co, co_opts);
    cmd_co->add_option("--index", co_index, "equilibrium index in the norm-sorted list");

    // critical-delay
    CommonOpts cd_opts;
    int cd_index = 0, cd_kmax = 8;
    auto* cmd_cd =
        app.add_subcommand("critical-delay", "Hopf critical delays in physical units");
    add_common(cmd_cd, cd_opts);
    cmd_cd->add_option("--index", cd_index, "equilibrium index in the norm-sorted list");
    cmd_cd->add_option("--k-max", cd_kmax, "Dirac ladder depth");

    // sweep
    CommonOpts sw_opts;
    std::string sw_axis1, sw_axis2, sw_format = "csv";
    std::vector<std::string> sw_kernels;
    bool sw_raw = false;
    double sw_tau_bar = 1.0;
    auto* cmd_sw = app.add_subcommand("sweep", "two-parameter grid sweep");
    add_common(cmd_sw, sw_opts, /*net_required=*/false);
    cmd_sw->add_option("--axis1", sw_axis1, "first axis as name:min:max:steps")->required();
    cmd_sw->add_option("--axis2", sw_axis2, "second axis as name:min:max:steps")->required();
    cmd_sw->add_option("--format", sw_format, "csv|json");
    cmd_sw->add_flag("--raw", sw_raw, "raw (alpha,beta) mode, no circuit");
    cmd_sw->add_option("--tau-bar", sw_tau_bar, "time scale for raw-mode delays, ms");

    // simulate
    CommonOpts si_opts;
    double si_T = 0.0, si_horizon = 3000.0, si_dt = 0.0;
    std::string si_init;
    bool si_aux = false;
    auto* cmd_si = app.add_subcommand("simulate", "integrate the circuit, export CSV");
    add_common(cmd_si, si_opts);
    cmd_si->add_option("--T", si_T, "mean delay in ms (default: the circuit's kernel tau)");
    cmd_si->add_option("--horizon", si_horizon, "simulated time, ms");
    cmd_si->add_option("--dt", si_dt, "step, ms (default T/50, capped for weak-gamma)");
    cmd_si->add_option("--init", si_init, "initial state: 4 reals (or 8 for weak-gamma)");
    cmd_si->add_flag("--store-aux", si_aux, "also export the weak-Gamma Y block");

    // spectrum
    CommonOpts sp_opts;
    std::string sp_traj;
    double sp_omega = 0.0, sp_T = 0.0;
    auto* cmd_sp = app.add_subcommand("spectrum", "dominant frequency and EEG band");
    cmd_sp->add_option("--traj", sp_traj, "trajectory CSV to analyze");
    cmd_sp->add_option("--omega", sp_omega, "scaled frequency for analytic onset mode");
    cmd_sp->add_option("--T", sp_T, "delay in ms for analytic onset mode");
    cmd_sp->add_option("--out", sp_opts.out_path, "output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    if (cmd_eq->parsed()) {
        NetworkSpec net = resolve_network(eq_opts);
        emit(eq_opts, equilibria_to_json(find_equilibria(net)));
        return 0;
    }

    if (cmd_co->parsed()) {
        NetworkSpec net = resolve_network(co_opts);
        auto eqs = find_equilibria(net);
        if (co_index < 0 || co_index >= static_cast<int>(eqs.size()))
            throw ConfigError("equilibrium index out of range");
        emit(co_opts, equilibria_to_json({eqs[co_index]}));
        return 0;
    }

    if (cmd_cd->parsed()) {
        NetworkSpec net = resolve_network(cd_opts);
        PhysicalOpts popts;
        popts.equilibrium_index = cd_index;
        popts.k_max = cd_kmax;
        emit(cd_opts, critical_set_to_json(physical_critical_delays(net, popts)));
        return 0;
    }

    if (cmd_sw->parsed()) {
        SweepConfig cfg;
        cfg.axis1 = parse_axis(sw_axis1);
        cfg.axis2 = parse_axis(sw_axis2);
        if (!sw_raw) {
            CommonOpts net_opts = sw_opts;
            net_opts.kernel_name.clear();  // kernel choice lives in cfg.kernels
            cfg.base = resolve_network(net_opts);
        }
        cfg.raw_tau_bar_ms = sw_tau_bar;
        if (sw_opts.kernel_name == "both")
            cfg.kernels = {Kernel::Dirac, Kernel::WeakGamma};
        else if (!sw_opts.kernel_name.empty())
            cfg.kernels = {kernel_from_string(sw_opts.kernel_name)};
        else if (sw_raw || !cfg.base)
            cfg.kernels = {Kernel::Dirac, Kernel::WeakGamma};
        else
            cfg.kernels = {cfg.base->kernel.kind};
        SweepGrid grid = run_sweep(cfg);
        if (sw_opts.out_path.empty()) {
            if (sw_format == "csv")
                export_grid_csv(grid, std::cout);
            else
                std::cout << grid_to_json(grid) << '\n';
        } else {
            export_grid(grid, sw_format, sw_opts.out_path);
        }
        return 0;
    }

    if (cmd_si->parsed()) {
        NetworkSpec net = resolve_network(si_opts);
        double T = si_T > 0.0 ? si_T : net.kernel.tau_ms;
        std::vector<double> init =
            si_init.empty() ? std::vector<double>(4, 0.0) : parse_reals(si_init);
        Trajectory traj;
        if (net.kernel.kind == Kernel::Dirac) {
            if (init.size() != 4)
                throw ConfigError("dirac simulation takes a 4-component initial state");
            double dt = si_dt > 0.0 ? si_dt : T / 50.0;
            traj = simulate_dirac(net, T, {init[0], init[1], init[2], init[3]}, si_horizon, dt);
        } else {
            Vec8 s{};
            if (init.size() == 4) {
                for (int c = 0; c < 4; ++c) s[c] = s[4 + c] = init[c];  // Y0 = X0
            } else if (init.size() == 8) {
                for (int c = 0; c < 8; ++c) s[c] = init[c];
            } else {
                throw ConfigError("weak-gamma simulation takes 4 or 8 initial components");
            }
            double dt = si_dt > 0.0 ? si_dt : std::min(net.tau_bar_ms, T) / 50.0;
            traj = simulate_weak_gamma(net, T, s, si_horizon, dt, si_aux);
        }
        if (si_opts.out_path.empty())
            write_trajectory_csv(traj, std::cout);
        else
            write_trajectory_csv(traj, si_opts.out_path);
        return 0;
    }

    if (cmd_sp->parsed()) {
        double f_hz;
        std::string method;
        if (!sp_traj.empty()) {
            Trajectory traj = read_trajectory_csv(sp_traj);
            f_hz = dominant_frequency(traj);
            method = "fft";
        } else if (sp_omega > 0.0 && sp_T > 0.0) {
            f_hz = onset_frequency(sp_omega, sp_T);
            method = "analytic";
        } else {
            throw ConfigError("spectrum needs --traj or both --omega and --T");
        }
        std::ostringstream os;
        os << "{\n  \"f_hz\": " << f_hz << ",\n  \"band\": \"" << to_string(band_classify(f_hz))
           << "\",\n  \"method\": \"" << method << "\"\n}";
        emit(sp_opts, os.str());
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
