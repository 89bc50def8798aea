#pragma once

#include <array>
#include <map>
#include <span>
#include <string>

namespace wcdd {

using Vec4 = std::array<double, 4>;
using Vec8 = std::array<double, 8>;

/// State ordering used everywhere: (E1, I1, E2, I2).
enum Node : int { E1 = 0, I1 = 1, E2 = 2, I2 = 3 };

/// Cross-coupling scheme between the two excitatory/inhibitory pairs.
///   EE:   E1 <-> E2
///   II:   I1 <-> I2
///   EtoI: E1 -> I2 and E2 -> I1
///   ItoE: I1 -> E2 and I2 -> E1
enum class Scheme { EE, II, EtoI, ItoE };

const char* to_string(Scheme s);
Scheme scheme_from_string(const std::string& name);

/// One admissible nonzero entry of a scheme's weight matrix.
/// Names follow the w_<target><source> convention (row = target, column = source).
struct WeightSlot {
    const char* name;
    int row;
    int col;
};

/// The six admissible slots of a scheme: four intra-pair plus two cross.
std::span<const WeightSlot> scheme_slots(Scheme s);

/// 4x4 synaptic weight matrix; row = target node, column = source node.
/// Signs are carried here (inhibitory connections are negative entries).
struct WeightMatrix {
    std::array<std::array<double, 4>, 4> c{};

    double& operator()(int row, int col) { return c[row][col]; }
    double operator()(int row, int col) const { return c[row][col]; }

    /// Row dot product [C_j] . x
    double row_dot(int row, const Vec4& x) const {
        const auto& r = c[row];
        return r[0] * x[0] + r[1] * x[1] + r[2] * x[2] + r[3] * x[3];
    }

    /// True when every entry outside the scheme's slots is exactly zero.
    bool consistent_with(Scheme s) const;
};

/// Place named weights into a scheme's slots.
///
/// Every slot of the scheme must be named exactly once (zero values included);
/// unknown names are rejected. For scheme EtoI the reversed spellings w_E1I2
/// and w_E2I1 are accepted as aliases of the slots w_I2E1 and w_I1E2 (the
/// source literature uses both subscript orders for these projections).
WeightMatrix build_connectivity(Scheme s, const std::map<std::string, double>& named_weights);

/// Input-integration sigmoid. Two families:
///   WilsonCowan:    F(u) = 1/(1+exp(-b(u-theta))) - 1/(1+exp(b*theta)),  F(0) = 0
///   WangNaturalMax: F(u) = M/(1+(M/B-1)exp(-4u/M)),  F(0) = B, range (0, M)
struct SigmoidSpec {
    enum class Family { WilsonCowan, WangNaturalMax };

    Family family = Family::WilsonCowan;
    double gain = 1.0;       // b      (WilsonCowan)
    double threshold = 1.0;  // theta  (WilsonCowan)
    double max_rate = 1.0;   // M, spk/s (WangNaturalMax)
    double base_rate = 0.5;  // B, spk/s (WangNaturalMax)

    static SigmoidSpec wilson_cowan(double b, double theta);
    static SigmoidSpec wang_natural_max(double max_rate, double base_rate);

    /// Throws ConfigError when the family's parameter constraints are violated.
    void validate() const;
};

double sigmoid_eval(const SigmoidSpec& spec, double u);

/// Exact closed-form derivative; strictly positive for valid specs.
double sigmoid_deriv(const SigmoidSpec& spec, double u);

enum class Kernel { Dirac, WeakGamma };

const char* to_string(Kernel k);
Kernel kernel_from_string(const std::string& name);

/// Delay kernel selection plus its mean delay.
struct KernelSpec {
    Kernel kind = Kernel::Dirac;
    double tau_ms = 1.0;

    void validate() const;
};

/// Full circuit: two coupled Wilson-Cowan pairs with distributed delays,
///   tau_bar * dX_j/dt = -X_j + F_j( [C_j] * (h*X)(t) + P_j ).
struct NetworkSpec {
    Scheme scheme = Scheme::EE;
    WeightMatrix weights;
    std::array<SigmoidSpec, 4> sigmoids;
    Vec4 inputs{};  // external drive P_j
    double tau_bar_ms = 1.0;
    KernelSpec kernel;

    void validate() const;

    /// u_j = [C_j] . x + P_j
    Vec4 drive(const Vec4& x) const;

    /// F_j(u_j) applied componentwise.
    Vec4 rate(const Vec4& u) const;

    /// phi_j = F_j'(u_j) applied componentwise.
    Vec4 gain(const Vec4& u) const;
};

/// Named circuits from the basal-ganglia and prefrontal-amygdala applications:
/// "wang-baseline", "pfc-bla-a", "pfc-bla-b". Throws UnknownPreset otherwise.
///
/// wang-baseline notes: the striatal drive on I1 (GPe) is inhibitory, so the
/// input enters as P_2 = -40.51 spk/s; the configured kernel delay is the
/// baseline critical delay 3.94924 ms.
NetworkSpec preset(const std::string& name);

}  // namespace wcdd
