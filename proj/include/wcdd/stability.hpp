#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "wcdd/equilibrium.hpp"
#include "wcdd/model.hpp"

namespace wcdd {

/// Kernel-independent classification of an (alpha, beta) point.
///   StableR:        |alpha| - 1 < beta < 1, stable for every kernel and delay
///   UnstableSaddle: beta < alpha - 1, unstable for every kernel and delay
///   Conditional:    stability depends on kernel and delay
enum class DelayIndependent { StableR, UnstableSaddle, Conditional };

enum class SaddleNode { Bifurcates, Degenerate };

/// Weak-Gamma root taxonomy of the (alpha, beta) plane.
/// StableAllDelays marks points whose characteristic equation admits no
/// imaginary-axis crossing for any delay; for points inside the no-delay
/// stability region this is equivalent to stability for all delays.
enum class GammaZone { StableAllDelays, Gray, Pink, Cyan };

/// Per-kernel fate of a no-delay-stable equilibrium as the delay grows.
enum class KernelClass { StableAllDelays, HopfWindow, HopfPersistent };

/// Which computational branch produced a critical point:
/// Case1 for beta >= alpha^2/4 (complex conjugate Q roots), Case2 otherwise.
enum class HopfCase { Case1, Case2 };

struct RegionClass {
    bool no_delay_stable = false;
    DelayIndependent delay_independent = DelayIndependent::Conditional;
    // Kernel classes and zone are meaningful only when the point is not
    // saddle-unstable; outside the no-delay stability region an absence of
    // crossings means "unstable at every delay" rather than stable.
    KernelClass dirac_class = KernelClass::StableAllDelays;
    KernelClass gamma_class = KernelClass::StableAllDelays;
    GammaZone gamma_zone = GammaZone::StableAllDelays;
};

struct CriticalPoint {
    double omega = 0.0;       // scaled frequency, root at z = i*omega
    double tau_tilde = 0.0;   // critical delay in units of tau_bar
    int transversality = +1;  // +1: roots cross into Re > 0; -1: cross back
    HopfCase hopf_case = HopfCase::Case1;
    double T_ms = 0.0;        // physical delay, filled by physical_critical_delays
    double f_hz = 0.0;        // onset frequency, filled by physical_critical_delays
};

struct CriticalDelaySet {
    double alpha = 0.0;
    double beta = 0.0;
    Kernel kernel = Kernel::Dirac;
    GammaZone zone = GammaZone::StableAllDelays;  // weak-Gamma taxonomy only

    std::vector<CriticalPoint> entries;  // sorted by tau_tilde ascending
    /// Instability window (tau-tilde units) for kernels that re-stabilize.
    std::optional<std::pair<double, double>> window;
    std::optional<std::pair<double, double>> window_ms;

    bool stable_all_delays = false;  // no crossing exists for any delay
    bool saddle_unstable = false;    // beta < alpha-1; no search performed

    bool physical = false;  // T_ms/f_hz entries populated
};

/// Region S (Routh-Hurwitz of the undelayed quartic):
/// alpha < 2 and alpha-1 < beta < (alpha-4)^2/4, all strict.
bool no_delay_stable(double alpha, double beta);

DelayIndependent delay_independent_class(double alpha, double beta);

/// On the line beta = alpha-1 the zero root is transversal iff alpha != 2.
SaddleNode saddle_node_check(double alpha);

/// dz/dbeta of the zero root along beta = alpha-1: tau/(2(tau+1)(alpha-2)).
double saddle_node_slope(double alpha, double tau_tilde);

/// Does the Dirac kernel admit any imaginary-axis crossing at this point?
bool dirac_has_hopf(double alpha, double beta);

/// All Dirac critical delays with ladder index k <= k_max, sorted ascending.
/// Case 1 (beta >= alpha^2/4, needs beta > 1):
///   omega_k(+-) = +-acos(alpha/(2 sqrt beta))/2 + k pi - atan sqrt(sqrt(beta)-1),
///   tau* = omega / sqrt(sqrt(beta)-1).
/// Case 2 (needs |alpha - sqrt(alpha^2-4 beta)| > 2):
///   omega_m = asin sqrt(2/|alpha - sqrt(alpha^2-4beta)|) + m pi restricted to
///   tan(omega) > 0, tau* = omega tan(omega).
/// Negative frequency candidates are dropped. Every entry is residual-verified;
/// all transversality signs are +1 (crossings only destabilize).
/// Throws ConfigError when beta < alpha-1 (saddle side, nothing to search).
CriticalDelaySet dirac_critical_delays(double alpha, double beta, int k_max = 8);

/// Weak-Gamma zone of a point with beta > alpha-1 (throws ConfigError below
/// the saddle line). StableAllDelays covers the union of region R, the band
/// 1 < beta < 16 with alpha < 2(8 - 8 beta^(1/4) + sqrt beta) above the
/// parabola beta = alpha^2/4, and alpha - sqrt(alpha^2-4beta) > -8 below it.
GammaZone gamma_zone_classify(double alpha, double beta);

/// Critical frequencies and the instability window for a Gray/Pink/Cyan point
/// (throws ZoneMismatch elsewhere).
///   Gray:  omega-+ with omega- < u2 < omega+, tau* = w/sqrt(sqrt(b)/(1+w^2)-1)
///   Pink:  additionally v-+ interleaved omega- < v- < u2 < v+ < omega+
///   Cyan:  omega-+ with omega- < 1 < omega+, tau* = omega^2; when the larger
///          quadratic root also clears -8 its secondary pair is reported too
/// window = (tau*(omega-), tau*(omega+)) brackets the unstable delays.
CriticalDelaySet gamma_critical_window(double alpha, double beta);

/// Sign of Re(dz/dtau) at a verified critical point. Dirac: always +1.
/// Weak Gamma: Case 2 sign(1 - omega^2); Case 1 sign of
/// 1 - omega/sqrt(sqrt(beta)/(omega^2+1) - 1), which changes at omega = u2.
/// Throws OnSignBoundary when the expression is within 1e-10 of zero.
int transversality_sign(double alpha, double beta, Kernel k, double omega, double tau_star);

/// Kernel dispatch; returns a saddle-flagged set instead of searching when
/// beta < alpha-1.
CriticalDelaySet critical_delays(double alpha, double beta, Kernel k, int k_max = 8);

/// Full region record for one (alpha, beta) point.
RegionClass classify_region(double alpha, double beta);

struct PhysicalOpts {
    int k_max = 8;
    SolverOpts solver{};
    int equilibrium_index = 0;  // into the norm-sorted equilibrium list
};

/// Pipeline equilibrium -> (alpha, beta) -> kernel critical delays, reported
/// in physical units: T = tau_tilde * tau_bar and f = 1000 w / (2 pi T).
CriticalDelaySet physical_critical_delays(const NetworkSpec& net, const PhysicalOpts& opts = {});

/// Weak-Gamma Case-1 constraint curve alpha = f(omega) on 0 <= omega <= omega_max;
/// f(0) = f(omega_max) = 4 - 2 sqrt(beta).
double gamma_case1_alpha_of_omega(double beta, double omega);

/// Domain end of the Case-1 constraint: omega_max = sqrt(sqrt(beta) - 1).
double gamma_case1_omega_max(double beta);

/// Sign-change point of the Case-1 transversality: u2 = sqrt(beta^(1/4) - 1).
double gamma_case1_u2(double beta);

}  // namespace wcdd
