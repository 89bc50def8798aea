#include "wcdd/model.hpp"

#include <cmath>
#include <set>

#include "wcdd/errors.hpp"

namespace wcdd {

const char* to_string(Scheme s) {
    switch (s) {
        case Scheme::EE: return "EE";
        case Scheme::II: return "II";
        case Scheme::EtoI: return "EtoI";
        case Scheme::ItoE: return "ItoE";
    }
    return "?";
}

Scheme scheme_from_string(const std::string& name) {
    if (name == "EE") return Scheme::EE;
    if (name == "II") return Scheme::II;
    if (name == "EtoI") return Scheme::EtoI;
    if (name == "ItoE") return Scheme::ItoE;
    throw ConfigError("unknown connectivity scheme: " + name);
}

namespace {

// Intra-pair slots are shared by all four schemes; only the cross pair differs.
constexpr WeightSlot kSlotsEE[6] = {
    {"w_E1I1", E1, I1}, {"w_I1E1", I1, E1}, {"w_E2I2", E2, I2},
    {"w_I2E2", I2, E2}, {"w_E1E2", E1, E2}, {"w_E2E1", E2, E1},
};
constexpr WeightSlot kSlotsII[6] = {
    {"w_E1I1", E1, I1}, {"w_I1E1", I1, E1}, {"w_E2I2", E2, I2},
    {"w_I2E2", I2, E2}, {"w_I1I2", I1, I2}, {"w_I2I1", I2, I1},
};
constexpr WeightSlot kSlotsEtoI[6] = {
    {"w_E1I1", E1, I1}, {"w_I1E1", I1, E1}, {"w_E2I2", E2, I2},
    {"w_I2E2", I2, E2}, {"w_I2E1", I2, E1}, {"w_I1E2", I1, E2},
};
constexpr WeightSlot kSlotsItoE[6] = {
    {"w_E1I1", E1, I1}, {"w_I1E1", I1, E1}, {"w_E2I2", E2, I2},
    {"w_I2E2", I2, E2}, {"w_E2I1", E2, I1}, {"w_E1I2", E1, I2},
};

// Reversed spellings used by part of the literature for the EtoI projections.
const char* etoi_alias(const std::string& name) {
    if (name == "w_E1I2") return "w_I2E1";
    if (name == "w_E2I1") return "w_I1E2";
    return nullptr;
}

}  // namespace

std::span<const WeightSlot> scheme_slots(Scheme s) {
    switch (s) {
        case Scheme::EE: return kSlotsEE;
        case Scheme::II: return kSlotsII;
        case Scheme::EtoI: return kSlotsEtoI;
        case Scheme::ItoE: return kSlotsItoE;
    }
    return {};
}

bool WeightMatrix::consistent_with(Scheme s) const {
    auto slots = scheme_slots(s);
    for (int r = 0; r < 4; ++r) {
        for (int col = 0; col < 4; ++col) {
            double v = c[r][col];
            if (v == 0.0) continue;
            bool admissible = false;
            for (const auto& slot : slots) {
                if (slot.row == r && slot.col == col) {
                    admissible = true;
                    break;
                }
            }
            if (!admissible) return false;
        }
    }
    return true;
}

WeightMatrix build_connectivity(Scheme s, const std::map<std::string, double>& named_weights) {
    auto slots = scheme_slots(s);
    WeightMatrix w;
    std::set<std::string> seen;

    for (const auto& [name, value] : named_weights) {
        std::string canonical = name;
        if (s == Scheme::EtoI) {
            if (const char* alias = etoi_alias(name)) canonical = alias;
        }
        const WeightSlot* slot = nullptr;
        for (const auto& cand : slots) {
            if (canonical == cand.name) {
                slot = &cand;
                break;
            }
        }
        if (!slot)
            throw UnknownWeightName("weight name '" + name + "' is not a slot of scheme " +
                                    to_string(s));
        if (!seen.insert(canonical).second)
            throw UnknownWeightName("weight '" + name + "' duplicates slot " + canonical);
        w(slot->row, slot->col) = value;
    }

    for (const auto& slot : slots) {
        if (!seen.count(slot.name))
            throw MissingWeight(std::string("scheme ") + to_string(s) + " is missing weight " +
                                slot.name);
    }
    return w;
}

SigmoidSpec SigmoidSpec::wilson_cowan(double b, double theta) {
    SigmoidSpec s;
    s.family = Family::WilsonCowan;
    s.gain = b;
    s.threshold = theta;
    s.validate();
    return s;
}

SigmoidSpec SigmoidSpec::wang_natural_max(double max_rate, double base_rate) {
    SigmoidSpec s;
    s.family = Family::WangNaturalMax;
    s.max_rate = max_rate;
    s.base_rate = base_rate;
    s.validate();
    return s;
}

void SigmoidSpec::validate() const {
    if (family == Family::WilsonCowan) {
        if (!(gain > 0.0) || !(threshold > 0.0))
            throw ConfigError("WilsonCowan sigmoid requires b > 0 and theta > 0");
    } else {
        if (!(base_rate > 0.0) || !(base_rate < max_rate))
            throw ConfigError("WangNaturalMax sigmoid requires 0 < B < M");
    }
}

double sigmoid_eval(const SigmoidSpec& spec, double u) {
    if (spec.family == SigmoidSpec::Family::WilsonCowan) {
        double b = spec.gain, th = spec.threshold;
        return 1.0 / (1.0 + std::exp(-b * (u - th))) - 1.0 / (1.0 + std::exp(b * th));
    }
    double m = spec.max_rate, base = spec.base_rate;
    return m / (1.0 + (m / base - 1.0) * std::exp(-4.0 * u / m));
}

double sigmoid_deriv(const SigmoidSpec& spec, double u) {
    if (spec.family == SigmoidSpec::Family::WilsonCowan) {
        double b = spec.gain, th = spec.threshold;
        double s = 1.0 / (1.0 + std::exp(-b * (u - th)));
        return b * s * (1.0 - s);
    }
    double m = spec.max_rate;
    double f = sigmoid_eval(spec, u);
    return 4.0 * f * (m - f) / (m * m);
}

const char* to_string(Kernel k) {
    return k == Kernel::Dirac ? "dirac" : "weak-gamma";
}

Kernel kernel_from_string(const std::string& name) {
    if (name == "dirac") return Kernel::Dirac;
    if (name == "weak-gamma" || name == "weak_gamma" || name == "weakgamma")
        return Kernel::WeakGamma;
    throw ConfigError("unknown kernel: " + name + " (expected dirac|weak-gamma)");
}

void KernelSpec::validate() const {
    if (!(tau_ms > 0.0)) throw ConfigError("kernel mean delay tau must be positive");
}

void NetworkSpec::validate() const {
    if (!(tau_bar_ms > 0.0)) throw ConfigError("time constant tau_bar must be positive");
    kernel.validate();
    for (const auto& s : sigmoids) s.validate();
    if (!weights.consistent_with(scheme))
        throw SchemeMismatch(std::string("weight matrix has entries outside the slots of scheme ") +
                             to_string(scheme));
}

Vec4 NetworkSpec::drive(const Vec4& x) const {
    Vec4 u;
    for (int j = 0; j < 4; ++j) u[j] = weights.row_dot(j, x) + inputs[j];
    return u;
}

Vec4 NetworkSpec::rate(const Vec4& u) const {
    Vec4 f;
    for (int j = 0; j < 4; ++j) f[j] = sigmoid_eval(sigmoids[j], u[j]);
    return f;
}

Vec4 NetworkSpec::gain(const Vec4& u) const {
    Vec4 g;
    for (int j = 0; j < 4; ++j) g[j] = sigmoid_deriv(sigmoids[j], u[j]);
    return g;
}

NetworkSpec preset(const std::string& name) {
    NetworkSpec net;
    if (name == "wang-baseline") {
        // Cortex / basal-ganglia loop: (E1,I1,E2,I2) = (STN, GPe, EXN, INN).
        net.scheme = Scheme::EE;
        net.weights = build_connectivity(Scheme::EE, {
                                                         {"w_E1I1", -4.87},  // -W_GS
                                                         {"w_I1E1", 2.56},   //  W_SG
                                                         {"w_E1E2", 6.60},   //  W_CS
                                                         {"w_E2E1", -2.58},  // -W_SC
                                                         {"w_E2I2", -1.56},  // -W_CC
                                                         {"w_I2E2", 1.56},   //  W_CC
                                                     });
        net.sigmoids = {SigmoidSpec::wang_natural_max(300.0, 17.0),
                        SigmoidSpec::wang_natural_max(400.0, 75.0),
                        SigmoidSpec::wang_natural_max(71.77, 3.62),
                        SigmoidSpec::wang_natural_max(277.39, 9.87)};
        // Striatal drive on the GPe is inhibitory (GABAergic): magnitude 40.51,
        // applied with a minus sign. Cortical drive on the EXN is excitatory.
        net.inputs = {0.0, -40.51, 172.18, 0.0};
        net.tau_bar_ms = 15.0;
        net.kernel = {Kernel::Dirac, 3.94924};
        return net;
    }
    if (name == "pfc-bla-a" || name == "pfc-bla-b") {
        // Prefrontal-amygdala circuits; cross weights are the swept parameters
        // (range [0,10]) and default to zero here.
        bool model_a = (name == "pfc-bla-a");
        net.scheme = model_a ? Scheme::EtoI : Scheme::EE;
        std::map<std::string, double> w = {
            {"w_E1I1", -16.0}, {"w_I1E1", 2.0}, {"w_E2I2", -16.0}, {"w_I2E2", 2.0}};
        if (model_a) {
            w["w_I2E1"] = 0.0;
            w["w_I1E2"] = 0.0;
        } else {
            w["w_E1E2"] = 0.0;
            w["w_E2E1"] = 0.0;
        }
        net.weights = build_connectivity(net.scheme, w);
        net.sigmoids = {SigmoidSpec::wilson_cowan(1.2, 4.0), SigmoidSpec::wilson_cowan(1.0, 2.0),
                        SigmoidSpec::wilson_cowan(1.2, 4.0), SigmoidSpec::wilson_cowan(1.0, 2.0)};
        net.inputs = {6.0, 0.0, 6.0, 0.0};
        net.tau_bar_ms = 10.0;
        net.kernel = {Kernel::Dirac, 10.0};
        return net;
    }
    throw UnknownPreset("unknown preset: " + name +
                        " (expected wang-baseline|pfc-bla-a|pfc-bla-b)");
}

}  // namespace wcdd
