#include "wcdd/stability.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "wcdd/chareq.hpp"
#include "wcdd/errors.hpp"

namespace wcdd {

namespace {

constexpr double kResidualTol = 1e-8;
constexpr double kPi = std::numbers::pi;

void require_not_saddle(double alpha, double beta, const char* who) {
    if (beta < alpha - 1.0) {
        std::ostringstream os;
        os << who << ": point (" << alpha << ", " << beta
           << ") lies below the saddle-node line beta = alpha-1";
        throw ConfigError(os.str());
    }
}

// One Newton step of g on omega with a centered numeric derivative; keeps the
// original value when the step does not reduce |g|.
template <class G>
double polish_root(const G& g, double omega, double lo, double hi) {
    double g0 = g(omega);
    double h = 1e-7 * (1.0 + std::abs(omega));
    double gp = (g(std::min(omega + h, hi)) - g(std::max(omega - h, lo))) /
                (std::min(omega + h, hi) - std::max(omega - h, lo));
    if (gp == 0.0 || !std::isfinite(gp)) return omega;
    double cand = omega - g0 / gp;
    if (!(cand > lo && cand < hi)) return omega;
    return std::abs(g(cand)) < std::abs(g0) ? cand : omega;
}

void verify_entry(double alpha, double beta, Kernel k, const CriticalPoint& p, const char* who) {
    double r = imag_axis_residual(alpha, beta, p.tau_tilde, p.omega, k);
    if (!(r < kResidualTol)) {
        std::ostringstream os;
        os << who << ": critical point (omega=" << p.omega << ", tau=" << p.tau_tilde
           << ") failed residual certification, |F(i w)| = " << r;
        throw NumericalError(os.str());
    }
}

}  // namespace

bool no_delay_stable(double alpha, double beta) {
    double quarter = (alpha - 4.0) * (alpha - 4.0) / 4.0;
    return alpha < 2.0 && alpha - 1.0 < beta && beta < quarter;
}

DelayIndependent delay_independent_class(double alpha, double beta) {
    if (beta < alpha - 1.0) return DelayIndependent::UnstableSaddle;
    if (std::abs(alpha) - 1.0 < beta && beta < 1.0) return DelayIndependent::StableR;
    return DelayIndependent::Conditional;
}

SaddleNode saddle_node_check(double alpha) {
    return std::abs(alpha - 2.0) <= 1e-12 ? SaddleNode::Degenerate : SaddleNode::Bifurcates;
}

double saddle_node_slope(double alpha, double tau_tilde) {
    return tau_tilde / (2.0 * (tau_tilde + 1.0) * (alpha - 2.0));
}

bool dirac_has_hopf(double alpha, double beta) {
    if (beta >= alpha * alpha / 4.0) return beta > 1.0;
    double d = std::abs(alpha - std::sqrt(alpha * alpha - 4.0 * beta));
    return d > 2.0;
}

CriticalDelaySet dirac_critical_delays(double alpha, double beta, int k_max) {
    require_not_saddle(alpha, beta, "dirac_critical_delays");
    if (k_max < 0) throw ConfigError("dirac_critical_delays: k_max must be >= 0");

    CriticalDelaySet set;
    set.alpha = alpha;
    set.beta = beta;
    set.kernel = Kernel::Dirac;

    if (beta >= alpha * alpha / 4.0) {
        // Case 1: |Q| = sqrt(beta) forces beta > 1 for a finite critical delay.
        if (beta <= 1.0) {
            set.stable_all_delays = true;
            return set;
        }
        double s = std::sqrt(std::sqrt(beta) - 1.0);
        double shift = std::atan(s);
        double c = std::clamp(alpha / (2.0 * std::sqrt(beta)), -1.0, 1.0);
        double psi = 0.5 * std::acos(c);
        auto constraint = [&](double w) { return std::cos(2.0 * (shift + w)) - c; };

        double last_omega = -1.0;
        for (int k = 0; k <= k_max; ++k) {
            for (double sign : {-1.0, 1.0}) {
                double w = sign * psi + k * kPi - shift;
                if (w <= 1e-12) continue;
                if (std::abs(w - last_omega) < 1e-12) continue;  // psi = 0 merges branches
                w = polish_root(constraint, w, 0.0, (k_max + 2) * kPi);
                CriticalPoint p;
                p.omega = w;
                p.tau_tilde = w / s;
                p.transversality = +1;
                p.hopf_case = HopfCase::Case1;
                verify_entry(alpha, beta, Kernel::Dirac, p, "dirac_critical_delays");
                set.entries.push_back(p);
                last_omega = w;
            }
        }
    } else {
        // Case 2: Q = (alpha - sqrt(alpha^2-4beta))/2 <= -1 requires D > 2.
        double d = std::abs(alpha - std::sqrt(alpha * alpha - 4.0 * beta));
        if (d <= 2.0) {
            set.stable_all_delays = true;
            return set;
        }
        double target = std::sqrt(2.0 / d);
        double a = std::asin(target);
        auto constraint = [&](double w) { return std::abs(std::sin(w)) - target; };
        for (int m = 0; m <= k_max; ++m) {
            double w = a + m * kPi;
            // keep within the tan > 0 band of this period
            w = polish_root(constraint, w, m * kPi, m * kPi + kPi / 2.0);
            CriticalPoint p;
            p.omega = w;
            p.tau_tilde = w * std::tan(w);
            p.transversality = +1;
            p.hopf_case = HopfCase::Case2;
            verify_entry(alpha, beta, Kernel::Dirac, p, "dirac_critical_delays");
            set.entries.push_back(p);
        }
    }

    std::sort(set.entries.begin(), set.entries.end(),
              [](const CriticalPoint& x, const CriticalPoint& y) {
                  return x.tau_tilde < y.tau_tilde;
              });
    set.stable_all_delays = set.entries.empty();
    return set;
}

double gamma_case1_omega_max(double beta) {
    if (beta <= 1.0) return 0.0;
    return std::sqrt(std::sqrt(beta) - 1.0);
}

double gamma_case1_u2(double beta) {
    return std::sqrt(std::pow(beta, 0.25) - 1.0);
}

double gamma_case1_alpha_of_omega(double beta, double omega) {
    double sb = std::sqrt(beta);
    double w2 = omega * omega;
    double rad = sb / (1.0 + w2) - 1.0;
    if (rad < 0.0 && rad > -1e-12) rad = 0.0;  // endpoint roundoff
    return -(sb * (-2.0 + 4.0 / (1.0 + w2)) +
             4.0 * (-1.0 + w2 + 2.0 * omega * std::sqrt(rad)));
}

GammaZone gamma_zone_classify(double alpha, double beta) {
    require_not_saddle(alpha, beta, "gamma_zone_classify");
    if (beta >= alpha * alpha / 4.0) {
        if (beta <= 1.0) return GammaZone::StableAllDelays;
        // The constraint curve alpha = f(omega) spans [f_lo, f_hi] built from
        // the endpoint value 4 - 2 sqrt(beta) and the interior extremum
        // 2(8 - 8 beta^(1/4) + sqrt beta); their order swaps at beta = 81.
        double f_end = 4.0 - 2.0 * std::sqrt(beta);
        double f_u2 = 2.0 * (8.0 - 8.0 * std::pow(beta, 0.25) + std::sqrt(beta));
        double f_lo = std::min(f_end, f_u2);
        double f_hi = std::max(f_end, f_u2);
        if (alpha >= f_hi) return GammaZone::StableAllDelays;  // no roots (outside S)
        if (alpha >= f_lo) return GammaZone::Gray;             // two roots
        // below both thresholds: four roots once the second extremal pair
        // exists (beta >= 16), otherwise none
        return beta < 16.0 ? GammaZone::StableAllDelays : GammaZone::Pink;
    }
    // Case-2 side: a crossing needs the smaller quadratic root below -4,
    // i.e. alpha - sqrt(alpha^2 - 4 beta) < -8.
    if (alpha - std::sqrt(alpha * alpha - 4.0 * beta) < -8.0) return GammaZone::Cyan;
    return GammaZone::StableAllDelays;
}

namespace {

double gamma_case1_tau(double beta, double omega) {
    double den = std::sqrt(beta) / (1.0 + omega * omega) - 1.0;
    return omega / std::sqrt(den);
}

CriticalPoint make_gamma_point(double alpha, double beta, double omega, HopfCase hc) {
    CriticalPoint p;
    p.omega = omega;
    p.tau_tilde = hc == HopfCase::Case1 ? gamma_case1_tau(beta, omega) : omega * omega;
    p.hopf_case = hc;
    p.transversality = transversality_sign(alpha, beta, Kernel::WeakGamma, omega, p.tau_tilde);
    verify_entry(alpha, beta, Kernel::WeakGamma, p, "gamma_critical_window");
    return p;
}

}  // namespace

CriticalDelaySet gamma_critical_window(double alpha, double beta) {
    GammaZone zone = gamma_zone_classify(alpha, beta);
    if (zone == GammaZone::StableAllDelays)
        throw ZoneMismatch("gamma_critical_window: point admits no weak-Gamma crossing");

    CriticalDelaySet set;
    set.alpha = alpha;
    set.beta = beta;
    set.kernel = Kernel::WeakGamma;
    set.zone = zone;

    if (zone == GammaZone::Cyan) {
        double sq = std::sqrt(alpha * alpha - 4.0 * beta);
        auto roots_for = [&](double d) -> std::pair<double, double> {
            double target = std::sqrt(2.0 / d);
            auto constraint = [&](double w) { return w / (1.0 + w * w) - target; };
            double wm = (-std::sqrt(d - 8.0) + std::sqrt(d)) / (2.0 * std::sqrt(2.0));
            double wp = (std::sqrt(d - 8.0) + std::sqrt(d)) / (2.0 * std::sqrt(2.0));
            wm = polish_root(constraint, wm, 0.0, 1.0);
            wp = polish_root(constraint, wp, 1.0, wp + 1.0);
            return {wm, wp};
        };
        auto [wm, wp] = roots_for(-(alpha - sq));
        set.entries.push_back(make_gamma_point(alpha, beta, wm, HopfCase::Case2));
        set.entries.push_back(make_gamma_point(alpha, beta, wp, HopfCase::Case2));
        set.window = {wm * wm, wp * wp};
        if (alpha + sq < -8.0) {
            // the larger quadratic root also crosses; its pair nests inside
            auto [vm, vp] = roots_for(-(alpha + sq));
            set.entries.push_back(make_gamma_point(alpha, beta, vm, HopfCase::Case2));
            set.entries.push_back(make_gamma_point(alpha, beta, vp, HopfCase::Case2));
        }
    } else {
        // Case-1 side: candidate roots from both closed-form pairs, validated
        // against the constraint curve (squaring turns the out-of-branch pair
        // into spurious values, e.g. the outer pair in the two-root band at
        // beta > 81).
        double sb = std::sqrt(beta);
        double g = std::sqrt(alpha + 2.0 * sb);
        double wmax = gamma_case1_omega_max(beta);
        double u2 = gamma_case1_u2(beta);
        auto constraint = [&](double w) { return gamma_case1_alpha_of_omega(beta, w) - alpha; };

        std::vector<double> roots;
        auto consider = [&](double factor_sign) {
            double inner =
                (alpha - 2.0 * sb) * (16.0 + alpha + factor_sign * 8.0 * g - 2.0 * sb);
            if (inner < 0.0) return;
            double si = std::sqrt(inner);
            double common = -8.0 - alpha - factor_sign * 4.0 * g + 2.0 * sb;
            for (double branch : {-1.0, 1.0}) {
                double rad = common + branch * si;
                if (rad <= 0.0) continue;
                double w = std::sqrt(rad) / (2.0 * std::sqrt(2.0));
                if (!(w > 0.0 && w < wmax)) continue;
                if (std::abs(constraint(w)) > 1e-5 * (1.0 + std::abs(alpha))) continue;
                double lo = w < u2 ? 0.0 : u2;
                double hi = w < u2 ? u2 : wmax;
                roots.push_back(polish_root(constraint, w, lo, hi));
            }
        };
        consider(-1.0);  // omega-pair expressions
        consider(+1.0);  // v-pair expressions
        std::sort(roots.begin(), roots.end());
        roots.erase(std::unique(roots.begin(), roots.end(),
                                [](double a, double b) { return std::abs(a - b) < 1e-10; }),
                    roots.end());
        std::size_t expected = zone == GammaZone::Pink ? 4 : 2;
        if (roots.size() != expected)
            throw NumericalError("gamma_critical_window: root count " +
                                 std::to_string(roots.size()) + ", expected " +
                                 std::to_string(expected));
        for (double w : roots)
            set.entries.push_back(make_gamma_point(alpha, beta, w, HopfCase::Case1));
        set.window = {set.entries.front().tau_tilde, set.entries.back().tau_tilde};
    }

    std::sort(set.entries.begin(), set.entries.end(),
              [](const CriticalPoint& x, const CriticalPoint& y) {
                  return x.tau_tilde < y.tau_tilde;
              });
    return set;
}

int transversality_sign(double alpha, double beta, Kernel k, double omega, double tau_star) {
    (void)tau_star;
    if (k == Kernel::Dirac) return +1;  // Re(dz/dtau) = w^2/(tau |G|^2) > 0
    double expr;
    if (beta < alpha * alpha / 4.0) {
        expr = 1.0 - omega * omega;
    } else {
        double den = std::sqrt(beta) / (1.0 + omega * omega) - 1.0;
        if (den <= 0.0)
            throw NumericalError("transversality_sign: omega outside the Case-1 domain");
        expr = 1.0 - omega / std::sqrt(den);
    }
    if (std::abs(expr) < 1e-10)
        throw OnSignBoundary("transversality expression vanishes at this critical point");
    return expr > 0.0 ? +1 : -1;
}

CriticalDelaySet critical_delays(double alpha, double beta, Kernel k, int k_max) {
    if (beta < alpha - 1.0) {
        CriticalDelaySet set;
        set.alpha = alpha;
        set.beta = beta;
        set.kernel = k;
        set.saddle_unstable = true;
        return set;
    }
    if (k == Kernel::Dirac) return dirac_critical_delays(alpha, beta, k_max);
    GammaZone zone = gamma_zone_classify(alpha, beta);
    if (zone == GammaZone::StableAllDelays) {
        CriticalDelaySet set;
        set.alpha = alpha;
        set.beta = beta;
        set.kernel = Kernel::WeakGamma;
        set.stable_all_delays = true;
        return set;
    }
    return gamma_critical_window(alpha, beta);
}

RegionClass classify_region(double alpha, double beta) {
    RegionClass rc;
    rc.no_delay_stable = no_delay_stable(alpha, beta);
    rc.delay_independent = delay_independent_class(alpha, beta);
    if (rc.delay_independent == DelayIndependent::UnstableSaddle) return rc;
    rc.dirac_class =
        dirac_has_hopf(alpha, beta) ? KernelClass::HopfPersistent : KernelClass::StableAllDelays;
    rc.gamma_zone = gamma_zone_classify(alpha, beta);
    rc.gamma_class = rc.gamma_zone == GammaZone::StableAllDelays ? KernelClass::StableAllDelays
                                                                 : KernelClass::HopfWindow;
    return rc;
}

CriticalDelaySet physical_critical_delays(const NetworkSpec& net, const PhysicalOpts& opts) {
    net.validate();
    auto eqs = find_equilibria(net, opts.solver);
    if (opts.equilibrium_index < 0 || opts.equilibrium_index >= static_cast<int>(eqs.size()))
        throw ConfigError("physical_critical_delays: equilibrium index out of range (found " +
                          std::to_string(eqs.size()) + ")");
    const Equilibrium& eq = eqs[opts.equilibrium_index];

    CriticalDelaySet set = critical_delays(eq.alpha, eq.beta, net.kernel.kind, opts.k_max);
    for (auto& p : set.entries) {
        p.T_ms = p.tau_tilde * net.tau_bar_ms;
        p.f_hz = 1000.0 * p.omega / (2.0 * kPi * p.T_ms);
    }
    if (set.window)
        set.window_ms = {set.window->first * net.tau_bar_ms, set.window->second * net.tau_bar_ms};
    set.physical = true;
    return set;
}

}  // namespace wcdd
