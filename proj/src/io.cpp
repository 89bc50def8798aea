#include "wcdd/io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "wcdd/errors.hpp"

namespace wcdd {

namespace {

using Json = nlohmann::json;

std::string fmt9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

Json sigmoid_to_json(const SigmoidSpec& s) {
    if (s.family == SigmoidSpec::Family::WilsonCowan)
        return Json{{"family", "wilson-cowan"}, {"b", s.gain}, {"theta", s.threshold}};
    return Json{{"family", "wang-natural-max"}, {"M", s.max_rate}, {"B", s.base_rate}};
}

SigmoidSpec sigmoid_from_json(const Json& j) {
    std::string fam = j.at("family").get<std::string>();
    if (fam == "wilson-cowan")
        return SigmoidSpec::wilson_cowan(j.at("b").get<double>(), j.at("theta").get<double>());
    if (fam == "wang-natural-max")
        return SigmoidSpec::wang_natural_max(j.at("M").get<double>(), j.at("B").get<double>());
    throw ConfigError("unknown sigmoid family: " + fam);
}

}  // namespace

std::string network_to_json(const NetworkSpec& net) {
    Json j;
    j["scheme"] = to_string(net.scheme);
    Json weights;
    for (const auto& slot : scheme_slots(net.scheme))
        weights[slot.name] = net.weights(slot.row, slot.col);
    j["weights"] = weights;
    Json sigmoids = Json::array();
    for (const auto& s : net.sigmoids) sigmoids.push_back(sigmoid_to_json(s));
    j["sigmoids"] = sigmoids;
    j["inputs"] = net.inputs;
    j["tau_bar_ms"] = net.tau_bar_ms;
    j["kernel"] = Json{{"kind", to_string(net.kernel.kind)}, {"tau_ms", net.kernel.tau_ms}};
    return j.dump(2);
}

NetworkSpec network_from_json(const std::string& text) {
    Json j = Json::parse(text);
    NetworkSpec net;
    net.scheme = scheme_from_string(j.at("scheme").get<std::string>());
    std::map<std::string, double> named;
    for (const auto& [k, v] : j.at("weights").items()) named[k] = v.get<double>();
    net.weights = build_connectivity(net.scheme, named);
    const auto& js = j.at("sigmoids");
    if (js.size() != 4) throw ConfigError("config needs exactly 4 sigmoids");
    for (int i = 0; i < 4; ++i) net.sigmoids[i] = sigmoid_from_json(js[i]);
    const auto& ji = j.at("inputs");
    if (ji.size() != 4) throw ConfigError("config needs exactly 4 inputs");
    for (int i = 0; i < 4; ++i) net.inputs[i] = ji[i].get<double>();
    net.tau_bar_ms = j.at("tau_bar_ms").get<double>();
    net.kernel.kind = kernel_from_string(j.at("kernel").at("kind").get<std::string>());
    net.kernel.tau_ms = j.at("kernel").at("tau_ms").get<double>();
    net.validate();
    return net;
}

NetworkSpec load_network(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    try {
        return network_from_json(ss.str());
    } catch (const Json::exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
}

std::string equilibria_to_json(const std::vector<Equilibrium>& eqs) {
    Json arr = Json::array();
    for (const auto& eq : eqs) {
        Json j;
        j["x_star"] = eq.x_star;
        j["phi"] = eq.phi;
        j["alpha"] = eq.alpha;
        j["beta"] = eq.beta;
        j["residual"] = eq.residual;
        arr.push_back(std::move(j));
    }
    return arr.dump(2);
}

std::string critical_set_to_json(const CriticalDelaySet& set) {
    Json j;
    j["alpha"] = set.alpha;
    j["beta"] = set.beta;
    j["kernel"] = to_string(set.kernel);
    j["stable_all_delays"] = set.stable_all_delays;
    j["saddle_unstable"] = set.saddle_unstable;
    if (set.kernel == Kernel::WeakGamma && !set.saddle_unstable) {
        switch (set.zone) {
            case GammaZone::StableAllDelays: j["zone"] = "stable"; break;
            case GammaZone::Gray: j["zone"] = "gray"; break;
            case GammaZone::Pink: j["zone"] = "pink"; break;
            case GammaZone::Cyan: j["zone"] = "cyan"; break;
        }
    }
    Json entries = Json::array();
    for (const auto& p : set.entries) {
        Json je;
        je["omega"] = p.omega;
        je["tau_tilde"] = p.tau_tilde;
        if (set.physical) {
            je["T_ms"] = p.T_ms;
            je["f_hz"] = p.f_hz;
        }
        je["transversality"] = p.transversality;
        je["case"] = p.hopf_case == HopfCase::Case1 ? 1 : 2;
        entries.push_back(std::move(je));
    }
    j["entries"] = std::move(entries);
    if (set.window) j["window"] = Json::array({set.window->first, set.window->second});
    if (set.window_ms)
        j["window_ms"] = Json::array({set.window_ms->first, set.window_ms->second});
    return j.dump(2);
}

void write_trajectory_csv(const Trajectory& traj, std::ostream& os) {
    bool aux = !traj.y.empty();
    os << "t_ms,E1,I1,E2,I2";
    if (aux) os << ",Y1,Y2,Y3,Y4";
    os << '\n';
    for (std::size_t k = 0; k < traj.x.size(); ++k) {
        os << fmt9(traj.t_ms[k]);
        for (int c = 0; c < 4; ++c) os << ',' << fmt9(traj.x[k][c]);
        if (aux)
            for (int c = 0; c < 4; ++c) os << ',' << fmt9(traj.y[k][c]);
        os << '\n';
    }
}

void write_trajectory_csv(const Trajectory& traj, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open output file: " + path);
    write_trajectory_csv(traj, os);
    if (!os) throw IoError("write failed: " + path);
}

Trajectory read_trajectory_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open trajectory file: " + path);
    std::string line;
    if (!std::getline(is, line)) throw IoError("empty trajectory file: " + path);
    bool aux = line.find(",Y1") != std::string::npos;
    if (line.rfind("t_ms,E1,I1,E2,I2", 0) != 0)
        throw IoError("unrecognized trajectory header: " + line);

    Trajectory traj;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string field;
        std::vector<double> vals;
        while (std::getline(ls, field, ',')) vals.push_back(std::stod(field));
        std::size_t expect = aux ? 9 : 5;
        if (vals.size() != expect) throw IoError("malformed trajectory row: " + line);
        traj.t_ms.push_back(vals[0]);
        traj.x.push_back({vals[1], vals[2], vals[3], vals[4]});
        if (aux) traj.y.push_back({vals[5], vals[6], vals[7], vals[8]});
    }
    if (traj.t_ms.size() < 2) throw IoError("trajectory has fewer than 2 samples");
    traj.dt_ms = traj.t_ms[1] - traj.t_ms[0];
    traj.horizon_ms = traj.t_ms.back();
    return traj;
}

}  // namespace wcdd
