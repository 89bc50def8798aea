#include "wcdd/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wcdd/errors.hpp"

namespace wcdd {

void SolverOpts::validate() const {
    if (!(tolerance > 0.0)) throw ConfigError("solver tolerance must be positive");
    if (max_iterations <= 0) throw ConfigError("solver max_iterations must be positive");
    if (!(dedup_radius > 0.0)) throw ConfigError("solver dedup_radius must be positive");
}

double fixed_point_residual(const NetworkSpec& net, const Vec4& x) {
    Vec4 f = net.rate(net.drive(x));
    double r = 0.0;
    for (int j = 0; j < 4; ++j) r = std::max(r, std::abs(-x[j] + f[j]));
    return r;
}

namespace {

double sup_dist(const Vec4& a, const Vec4& b) {
    double d = 0.0;
    for (int j = 0; j < 4; ++j) d = std::max(d, std::abs(a[j] - b[j]));
    return d;
}

// Solve the 4x4 system A dx = rhs in place; returns false when A is singular.
bool solve4(std::array<std::array<double, 4>, 4> a, Vec4 rhs, Vec4& out) {
    int perm[4] = {0, 1, 2, 3};
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::abs(a[perm[r]][col]) > std::abs(a[perm[piv]][col])) piv = r;
        std::swap(perm[col], perm[piv]);
        double diag = a[perm[col]][col];
        if (std::abs(diag) < 1e-300) return false;
        for (int r = col + 1; r < 4; ++r) {
            double m = a[perm[r]][col] / diag;
            if (m == 0.0) continue;
            for (int k = col; k < 4; ++k) a[perm[r]][k] -= m * a[perm[col]][k];
            rhs[perm[r]] -= m * rhs[perm[col]];
        }
    }
    for (int col = 3; col >= 0; --col) {
        double s = rhs[perm[col]];
        for (int k = col + 1; k < 4; ++k) s -= a[perm[col]][k] * out[k];
        out[col] = s / a[perm[col]][col];
    }
    return true;
}

// Newton on r(x) = -x + F(Cx+P) with Jacobian -I + diag(phi) C and step
// halving when the full step does not reduce the defect.
bool newton_solve(const NetworkSpec& net, Vec4 x, const SolverOpts& opts, Vec4& out,
                  double& out_resid) {
    double resid = fixed_point_residual(net, x);
    for (int it = 0; it < opts.max_iterations; ++it) {
        Vec4 u = net.drive(x);
        Vec4 f = net.rate(u);
        Vec4 phi = net.gain(u);
        Vec4 r;
        for (int j = 0; j < 4; ++j) r[j] = -x[j] + f[j];

        std::array<std::array<double, 4>, 4> jac;
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                jac[j][k] = (j == k ? -1.0 : 0.0) + phi[j] * net.weights(j, k);

        Vec4 neg_r, dx;
        for (int j = 0; j < 4; ++j) neg_r[j] = -r[j];
        if (!solve4(jac, neg_r, dx)) return false;

        double lam = 1.0;
        Vec4 xn = x;
        double rn = resid;
        for (int half = 0; half < 40; ++half) {
            for (int j = 0; j < 4; ++j) xn[j] = x[j] + lam * dx[j];
            rn = fixed_point_residual(net, xn);
            if (rn < resid || lam < 1e-8) break;
            lam *= 0.5;
        }
        if (!(rn < resid) && resid > opts.tolerance) return false;  // stalled
        x = xn;
        resid = rn;
        if (resid <= opts.tolerance) {
            // two clean-up steps so the limit is start-independent
            for (int polish = 0; polish < 2; ++polish) {
                u = net.drive(x);
                f = net.rate(u);
                phi = net.gain(u);
                for (int j = 0; j < 4; ++j) neg_r[j] = x[j] - f[j];
                for (int j = 0; j < 4; ++j)
                    for (int k = 0; k < 4; ++k)
                        jac[j][k] = (j == k ? -1.0 : 0.0) + phi[j] * net.weights(j, k);
                if (!solve4(jac, neg_r, dx)) break;
                bool tiny = true;
                for (int j = 0; j < 4; ++j) {
                    x[j] += dx[j];
                    if (std::abs(dx[j]) > 1e-15 * (1.0 + std::abs(x[j]))) tiny = false;
                }
                if (tiny) break;
            }
            out = x;
            out_resid = fixed_point_residual(net, x);
            return out_resid <= opts.tolerance;
        }
    }
    return false;
}

bool damped_iteration(const NetworkSpec& net, Vec4 x, const SolverOpts& opts, Vec4& out,
                      double& out_resid) {
    const double lam = 0.2;
    const int itmax = 200000;
    for (int it = 0; it < itmax; ++it) {
        Vec4 f = net.rate(net.drive(x));
        double step = 0.0;
        for (int j = 0; j < 4; ++j) {
            double xn = (1.0 - lam) * x[j] + lam * f[j];
            step = std::max(step, std::abs(xn - x[j]));
            x[j] = xn;
        }
        if (!std::isfinite(step)) return false;
        if (step < 0.02 * opts.tolerance) break;
    }
    out = x;
    out_resid = fixed_point_residual(net, x);
    return out_resid <= opts.tolerance;
}

// Node value range used to seed the start lattice.
std::pair<double, double> node_range(const SigmoidSpec& s) {
    if (s.family == SigmoidSpec::Family::WangNaturalMax) return {0.0, s.max_rate};
    return {0.0, 1.0};
}

}  // namespace wcdd namespace

std::vector<Equilibrium> find_equilibria(const NetworkSpec& net, const SolverOpts& opts,
                                         const std::vector<Vec4>& extra_starts) {
    opts.validate();
    net.validate();

    std::vector<Vec4> starts;
    starts.push_back({0.0, 0.0, 0.0, 0.0});
    starts.push_back(net.rate(net.drive({0.0, 0.0, 0.0, 0.0})));
    const double fracs[3] = {0.25, 0.5, 0.75};
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c)
                for (int d = 0; d < 3; ++d) {
                    Vec4 x;
                    int f[4] = {a, b, c, d};
                    for (int j = 0; j < 4; ++j) {
                        auto [lo, hi] = node_range(net.sigmoids[j]);
                        x[j] = lo + fracs[f[j]] * (hi - lo);
                    }
                    starts.push_back(x);
                }
    starts.insert(starts.end(), extra_starts.begin(), extra_starts.end());

    double dedup = std::max(opts.dedup_radius, 10.0 * opts.tolerance);
    std::vector<Equilibrium> found;
    std::ostringstream diag;
    int failures = 0;

    for (std::size_t i = 0; i < starts.size(); ++i) {
        Vec4 x;
        double resid;
        bool ok = newton_solve(net, starts[i], opts, x, resid);
        if (!ok) ok = damped_iteration(net, starts[i], opts, x, resid);
        if (!ok) {
            if (failures < 8)
                diag << "  start " << i << ": no convergence (residual " << resid << ")\n";
            ++failures;
            continue;
        }
        bool dup = false;
        for (const auto& e : found)
            if (sup_dist(e.x_star, x) <= dedup) {
                dup = true;
                break;
            }
        if (dup) continue;

        Equilibrium eq;
        eq.x_star = x;
        eq.phi = net.gain(net.drive(x));
        eq.residual = resid;
        std::tie(eq.alpha, eq.beta) = alpha_beta(net, x);
        found.push_back(eq);
    }

    if (found.empty())
        throw NoConvergence("equilibrium solver failed from all " +
                            std::to_string(starts.size()) + " starts:\n" + diag.str());

    std::sort(found.begin(), found.end(), [](const Equilibrium& a, const Equilibrium& b) {
        auto n2 = [](const Vec4& v) {
            return v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3];
        };
        return n2(a.x_star) < n2(b.x_star);
    });
    return found;
}

std::pair<double, double> alpha_beta_from_gains(Scheme scheme, const WeightMatrix& w,
                                                const Vec4& phi) {
    if (!w.consistent_with(scheme))
        throw SchemeMismatch(std::string("weight matrix populated outside scheme ") +
                             to_string(scheme));
    double p1 = phi[0], p2 = phi[1], p3 = phi[2], p4 = phi[3];
    double intra1 = w(E1, I1) * w(I1, E1);  // first pair loop
    double intra2 = w(E2, I2) * w(I2, E2);  // second pair loop
    double alpha, beta;
    switch (scheme) {
        case Scheme::EE:
            alpha = p3 * p4 * intra2 + p1 * p3 * w(E1, E2) * w(E2, E1) + p1 * p2 * intra1;
            beta = p1 * p2 * p3 * p4 * intra1 * intra2;
            break;
        case Scheme::II:
            alpha = p3 * p4 * intra2 + p2 * p4 * w(I1, I2) * w(I2, I1) + p1 * p2 * intra1;
            beta = p1 * p2 * p3 * p4 * intra1 * intra2;
            break;
        case Scheme::EtoI:
            alpha = p3 * p4 * intra2 + p1 * p2 * intra1;
            beta = p1 * p2 * p3 * p4 * w(E2, I2) * w(E1, I1) *
                   (w(I1, E1) * w(I2, E2) - w(I1, E2) * w(I2, E1));
            break;
        case Scheme::ItoE:
            alpha = p3 * p4 * intra2 + p1 * p2 * intra1;
            beta = p1 * p2 * p3 * p4 * w(I2, E2) * w(I1, E1) *
                   (w(E1, I1) * w(E2, I2) - w(E2, I1) * w(E1, I2));
            break;
        default:
            throw ConfigError("unhandled scheme");
    }
    return {alpha, beta};
}

std::pair<double, double> alpha_beta(const NetworkSpec& net, const Vec4& eq_point) {
    return alpha_beta_from_gains(net.scheme, net.weights, net.gain(net.drive(eq_point)));
}

}  // namespace wcdd
