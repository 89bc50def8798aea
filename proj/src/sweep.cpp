#include "wcdd/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "wcdd/errors.hpp"

namespace wcdd {

namespace {

using Json = nlohmann::json;

// Weight-axis resolution: each name maps to one or two (row, col, sign) slots.
struct SlotWrite {
    int row, col;
    double sign;
};

std::vector<SlotWrite> resolve_weight_axis(const NetworkSpec& base, const std::string& name) {
    // basal-ganglia aliases carry their sign conventions
    if (name == "W_GS") return {{E1, I1, -1.0}};
    if (name == "W_SG") return {{I1, E1, +1.0}};
    if (name == "W_CS") return {{E1, E2, +1.0}};
    if (name == "W_SC") return {{E2, E1, -1.0}};
    if (name == "W_CC") return {{E2, I2, -1.0}, {I2, E2, +1.0}};

    std::string canonical = name;
    if (base.scheme == Scheme::EtoI) {
        if (name == "w_E1I2") canonical = "w_I2E1";
        if (name == "w_E2I1") canonical = "w_I1E2";
    }
    for (const auto& slot : scheme_slots(base.scheme))
        if (canonical == slot.name) return {{slot.row, slot.col, +1.0}};
    throw ConfigError("sweep axis '" + name + "' is not a weight of scheme " +
                      to_string(base.scheme) + " nor a known alias");
}

}  // namespace

void SweepConfig::validate() const {
    if (axis1.steps < 2 || axis2.steps < 2)
        throw ConfigError("sweep axes need at least 2 steps each");
    if (axis1.name == axis2.name) throw ConfigError("sweep axes must be distinct");
    if (kernels.empty()) throw ConfigError("sweep needs at least one kernel");
    solver.validate();
    if (raw_mode()) {
        auto ok = [](const std::string& n) { return n == "alpha" || n == "beta"; };
        if (!ok(axis1.name) || !ok(axis2.name))
            throw ConfigError("raw sweeps use axes named alpha and beta");
        if (!(raw_tau_bar_ms > 0.0)) throw ConfigError("raw_tau_bar_ms must be positive");
    } else {
        base->validate();
        for (const auto* ax : {&axis1, &axis2}) {
            if (ax->name == "alpha" || ax->name == "beta")
                throw ConfigError("alpha/beta axes require raw mode (no base circuit)");
            resolve_weight_axis(*base, ax->name);
        }
    }
}

namespace {

KernelCellResult kernel_result(double alpha, double beta, Kernel k, int k_max,
                               double tau_bar_ms) {
    KernelCellResult res;
    res.kernel = k;
    CriticalDelaySet set = critical_delays(alpha, beta, k, k_max);
    res.stable_all_delays = set.stable_all_delays;
    if (!set.entries.empty()) {
        const auto& first = set.entries.front();
        double T = first.tau_tilde * tau_bar_ms;
        res.tstar_ms = T;
        res.f_hz = onset_frequency(first.omega, T);
        res.band = band_classify(*res.f_hz);
    }
    if (set.window)
        res.window_ms = std::pair{set.window->first * tau_bar_ms,
                                  set.window->second * tau_bar_ms};
    return res;
}

SweepCell raw_cell(const SweepConfig& cfg, double v1, double v2) {
    SweepCell cell;
    cell.p1 = v1;
    cell.p2 = v2;
    cell.alpha = cfg.axis1.name == "alpha" ? v1 : v2;
    cell.beta = cfg.axis1.name == "beta" ? v1 : v2;
    cell.solved = true;
    try {
        cell.region = classify_region(cell.alpha, cell.beta);
        for (Kernel k : cfg.kernels)
            cell.kernels.push_back(
                kernel_result(cell.alpha, cell.beta, k, cfg.k_max, cfg.raw_tau_bar_ms));
    } catch (const std::exception& e) {
        cell.solved = false;
        cell.error = e.what();
    }
    return cell;
}

SweepCell circuit_cell(const SweepConfig& cfg, const std::vector<SlotWrite>& s1,
                       const std::vector<SlotWrite>& s2, double v1, double v2,
                       const Vec4* warm, Vec4* chosen_out) {
    SweepCell cell;
    cell.p1 = v1;
    cell.p2 = v2;
    NetworkSpec net = *cfg.base;
    for (const auto& w : s1) net.weights(w.row, w.col) = w.sign * v1;
    for (const auto& w : s2) net.weights(w.row, w.col) = w.sign * v2;
    try {
        // the warm start is diagnostic only: selection must depend on the
        // cell alone so that refined grids reproduce coarse cells exactly
        auto eqs = find_equilibria(net, cfg.solver);
        const Equilibrium& eq = eqs.front();  // smallest-norm default
        if (chosen_out) *chosen_out = eq.x_star;
        if (warm && eqs.size() > 1) {
            std::size_t nearest = 0;
            double best = 1e300;
            for (std::size_t i = 0; i < eqs.size(); ++i) {
                double d = 0.0;
                for (int c = 0; c < 4; ++c)
                    d = std::max(d, std::abs(eqs[i].x_star[c] - (*warm)[c]));
                if (d < best) {
                    best = d;
                    nearest = i;
                }
            }
            cell.branch_jump = nearest != 0;
        }
        cell.solved = true;
        cell.alpha = eq.alpha;
        cell.beta = eq.beta;
        cell.region = classify_region(eq.alpha, eq.beta);
        for (Kernel k : cfg.kernels)
            cell.kernels.push_back(
                kernel_result(eq.alpha, eq.beta, k, cfg.k_max, net.tau_bar_ms));
    } catch (const std::exception& e) {
        cell.solved = false;
        cell.error = e.what();
    }
    return cell;
}

}  // namespace

SweepGrid run_sweep(const SweepConfig& cfg) {
    cfg.validate();

    SweepGrid grid;
    grid.axis1 = cfg.axis1;
    grid.axis2 = cfg.axis2;
    grid.kernels = cfg.kernels;
    grid.raw = cfg.raw_mode();
    grid.tau_bar_ms = grid.raw ? cfg.raw_tau_bar_ms : cfg.base->tau_bar_ms;
    grid.cells.resize(static_cast<std::size_t>(cfg.axis1.steps) * cfg.axis2.steps);

    if (grid.raw) {
        for (int i = 0; i < cfg.axis1.steps; ++i)
            for (int j = 0; j < cfg.axis2.steps; ++j)
                grid.cells[i * cfg.axis2.steps + j] =
                    raw_cell(cfg, cfg.axis1.value(i), cfg.axis2.value(j));
        return grid;
    }

    auto s1 = resolve_weight_axis(*cfg.base, cfg.axis1.name);
    auto s2 = resolve_weight_axis(*cfg.base, cfg.axis2.name);

    // rows (axis1) in parallel; cells within a row chain their warm starts.
    // The warm start only seeds the solver (the smallest-norm pick is
    // recomputed per cell), so results are schedule-independent.
    auto run_row = [&](int i) {
        Vec4 warm{};
        bool have_warm = false;
        for (int j = 0; j < cfg.axis2.steps; ++j) {
            Vec4 chosen{};
            SweepCell cell = circuit_cell(cfg, s1, s2, cfg.axis1.value(i), cfg.axis2.value(j),
                                          have_warm ? &warm : nullptr, &chosen);
            if (cell.solved) {
                have_warm = true;
                warm = chosen;
            }
            grid.cells[static_cast<std::size_t>(i) * cfg.axis2.steps + j] = std::move(cell);
        }
    };

    unsigned hw = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads)
                                  : std::max(1u, std::thread::hardware_concurrency());
    if (hw == 1 || cfg.axis1.steps == 1) {
        for (int i = 0; i < cfg.axis1.steps; ++i) run_row(i);
    } else {
        std::vector<std::thread> pool;
        std::atomic_int next_row{0};
        auto worker = [&] {
            for (int i = next_row.fetch_add(1); i < cfg.axis1.steps; i = next_row.fetch_add(1))
                run_row(i);
        };
        unsigned nthreads = std::min<unsigned>(hw, cfg.axis1.steps);
        pool.reserve(nthreads);
        for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return grid;
}

namespace {

std::string fmt9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

const char* region_label(const SweepCell& cell) {
    if (!cell.solved) return "error";
    switch (cell.region.delay_independent) {
        case DelayIndependent::UnstableSaddle: return "UnstableSaddle";
        case DelayIndependent::StableR: return "StableR";
        case DelayIndependent::Conditional:
            return cell.region.no_delay_stable ? "Conditional" : "UnstableNoDelay";
    }
    return "?";
}

const char* zone_label(const SweepCell& cell) {
    if (!cell.solved ||
        cell.region.delay_independent == DelayIndependent::UnstableSaddle)
        return "";
    switch (cell.region.gamma_zone) {
        case GammaZone::StableAllDelays: return "stable";
        case GammaZone::Gray: return "gray";
        case GammaZone::Pink: return "pink";
        case GammaZone::Cyan: return "cyan";
    }
    return "";
}

}  // namespace

void export_grid_csv(const SweepGrid& grid, std::ostream& os) {
    os << "p1,p2,alpha,beta,region,zone,kernel,tstar_ms,tminus_ms,tplus_ms,f_hz,band\n";
    for (const auto& cell : grid.cells) {
        for (const auto& kr : cell.kernels) {
            os << fmt9(cell.p1) << ',' << fmt9(cell.p2) << ',';
            if (cell.solved) os << fmt9(cell.alpha) << ',' << fmt9(cell.beta);
            else os << ',';
            os << ',' << region_label(cell) << ',' << zone_label(cell) << ','
               << to_string(kr.kernel) << ',';
            if (kr.tstar_ms) os << fmt9(*kr.tstar_ms);
            os << ',';
            if (kr.window_ms) os << fmt9(kr.window_ms->first);
            os << ',';
            if (kr.window_ms) os << fmt9(kr.window_ms->second);
            os << ',';
            if (kr.f_hz) os << fmt9(*kr.f_hz);
            os << ',';
            if (kr.band) os << to_string(*kr.band);
            os << '\n';
        }
        if (cell.kernels.empty()) {
            os << fmt9(cell.p1) << ',' << fmt9(cell.p2) << ',';
            if (cell.solved) os << fmt9(cell.alpha) << ',' << fmt9(cell.beta);
            else os << ',';
            os << ',' << region_label(cell) << ',' << zone_label(cell) << ",,,,,,\n";
        }
    }
}

namespace {

Json axis_to_json(const AxisSpec& a) {
    return Json{{"name", a.name}, {"min", a.min}, {"max", a.max}, {"steps", a.steps}};
}

AxisSpec axis_from_json(const Json& j) {
    return {j.at("name").get<std::string>(), j.at("min").get<double>(),
            j.at("max").get<double>(), j.at("steps").get<int>()};
}

}  // namespace

std::string grid_to_json(const SweepGrid& grid) {
    Json j;
    j["axis1"] = axis_to_json(grid.axis1);
    j["axis2"] = axis_to_json(grid.axis2);
    j["raw"] = grid.raw;
    j["tau_bar_ms"] = grid.tau_bar_ms;
    Json kernels = Json::array();
    for (Kernel k : grid.kernels) kernels.push_back(to_string(k));
    j["kernels"] = kernels;

    Json cells = Json::array();
    for (const auto& cell : grid.cells) {
        Json jc;
        jc["p1"] = cell.p1;
        jc["p2"] = cell.p2;
        jc["solved"] = cell.solved;
        if (!cell.solved) jc["error"] = cell.error;
        if (cell.solved) {
            jc["alpha"] = cell.alpha;
            jc["beta"] = cell.beta;
            jc["region"] = region_label(cell);
            jc["zone"] = zone_label(cell);
            jc["no_delay_stable"] = cell.region.no_delay_stable;
            jc["branch_jump"] = cell.branch_jump;
        }
        Json jks = Json::array();
        for (const auto& kr : cell.kernels) {
            Json jk;
            jk["kernel"] = to_string(kr.kernel);
            jk["stable_all_delays"] = kr.stable_all_delays;
            if (kr.tstar_ms) jk["tstar_ms"] = *kr.tstar_ms;
            if (kr.window_ms)
                jk["window_ms"] = Json::array({kr.window_ms->first, kr.window_ms->second});
            if (kr.f_hz) jk["f_hz"] = *kr.f_hz;
            if (kr.band) jk["band"] = to_string(*kr.band);
            jks.push_back(std::move(jk));
        }
        jc["kernels"] = std::move(jks);
        cells.push_back(std::move(jc));
    }
    j["cells"] = std::move(cells);
    return j.dump();
}

SweepGrid grid_from_json(const std::string& text) {
    Json j = Json::parse(text);
    SweepGrid grid;
    grid.axis1 = axis_from_json(j.at("axis1"));
    grid.axis2 = axis_from_json(j.at("axis2"));
    grid.raw = j.at("raw").get<bool>();
    grid.tau_bar_ms = j.at("tau_bar_ms").get<double>();
    for (const auto& k : j.at("kernels"))
        grid.kernels.push_back(kernel_from_string(k.get<std::string>()));

    for (const auto& jc : j.at("cells")) {
        SweepCell cell;
        cell.p1 = jc.at("p1").get<double>();
        cell.p2 = jc.at("p2").get<double>();
        cell.solved = jc.at("solved").get<bool>();
        if (!cell.solved) cell.error = jc.value("error", "");
        if (cell.solved) {
            cell.alpha = jc.at("alpha").get<double>();
            cell.beta = jc.at("beta").get<double>();
            cell.region = classify_region(cell.alpha, cell.beta);
            cell.branch_jump = jc.value("branch_jump", false);
        }
        for (const auto& jk : jc.at("kernels")) {
            KernelCellResult kr;
            kr.kernel = kernel_from_string(jk.at("kernel").get<std::string>());
            kr.stable_all_delays = jk.at("stable_all_delays").get<bool>();
            if (jk.contains("tstar_ms")) kr.tstar_ms = jk.at("tstar_ms").get<double>();
            if (jk.contains("window_ms"))
                kr.window_ms = std::pair{jk.at("window_ms")[0].get<double>(),
                                         jk.at("window_ms")[1].get<double>()};
            if (jk.contains("f_hz")) kr.f_hz = jk.at("f_hz").get<double>();
            if (jk.contains("band")) {
                std::string b = jk.at("band").get<std::string>();
                for (Band cand : {Band::Delta, Band::Theta, Band::Alpha, Band::Beta, Band::Gamma})
                    if (b == to_string(cand)) kr.band = cand;
            }
            cell.kernels.push_back(std::move(kr));
        }
        grid.cells.push_back(std::move(cell));
    }
    return grid;
}

void export_grid(const SweepGrid& grid, const std::string& format, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open output file: " + path);
    if (format == "csv") {
        export_grid_csv(grid, os);
    } else if (format == "json") {
        os << grid_to_json(grid) << '\n';
    } else {
        throw ConfigError("unknown export format: " + format + " (expected csv|json)");
    }
    if (!os) throw IoError("write failed: " + path);
}

}  // namespace wcdd
