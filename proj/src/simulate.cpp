#include "wcdd/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wcdd/errors.hpp"

namespace wcdd {

namespace {

constexpr double kOverflowGuard = 1e6;

void check_state(const Vec4& x) {
    for (double v : x)
        if (!std::isfinite(v) || std::abs(v) > kOverflowGuard)
            throw Overflow("integration state exceeded the overflow guard");
}

long step_count(double horizon, double dt) {
    return std::lround(std::ceil(horizon / dt - 1e-9));
}

Vec4 axpy(const Vec4& x, double a, const Vec4& d) {
    return {x[0] + a * d[0], x[1] + a * d[1], x[2] + a * d[2], x[3] + a * d[3]};
}

}  // namespace

Trajectory simulate_dirac(const NetworkSpec& net, double T_ms, const Vec4& history,
                          double horizon_ms, double dt_ms) {
    net.validate();
    if (!(T_ms > 0.0)) throw ConfigError("simulate_dirac: delay T must be positive");
    if (!(dt_ms > 0.0) || dt_ms > T_ms / 20.0)
        throw StepTooLarge("simulate_dirac: need 0 < dt <= T/20");
    if (horizon_ms < 10.0 * T_ms)
        throw ConfigError("simulate_dirac: horizon must be at least 10 T");

    const double dt = dt_ms;
    const long n = step_count(horizon_ms, dt);
    const double tau_bar = net.tau_bar_ms;

    // rhs at time t given the delayed state
    auto rhs = [&](const Vec4& x, const Vec4& xd) {
        Vec4 u = net.drive(xd);
        Vec4 f = net.rate(u);
        Vec4 dx;
        for (int j = 0; j < 4; ++j) dx[j] = (-x[j] + f[j]) / tau_bar;
        return dx;
    };

    std::vector<Vec4> xs(n + 1), fs(n + 1);
    xs[0] = history;

    // cubic-Hermite read of the stored solution; constant before t = 0
    auto delayed = [&](double q, long known) -> Vec4 {
        if (q <= 0.0) return history;
        long j = static_cast<long>(q / dt);
        if (j >= known) j = known - 1;
        double s = (q - j * dt) / dt;
        double s2 = s * s;
        double h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
        double h10 = s * (1.0 - s) * (1.0 - s);
        double h01 = s2 * (3.0 - 2.0 * s);
        double h11 = s2 * (s - 1.0);
        Vec4 out;
        for (int c = 0; c < 4; ++c)
            out[c] = h00 * xs[j][c] + h10 * dt * fs[j][c] + h01 * xs[j + 1][c] +
                     h11 * dt * fs[j + 1][c];
        return out;
    };

    fs[0] = rhs(xs[0], delayed(-T_ms, 0));
    for (long k = 0; k < n; ++k) {
        double t = k * dt;
        const Vec4& x = xs[k];
        Vec4 k1 = fs[k];  // rhs at the node, stored for interpolation
        Vec4 xd_half = delayed(t + 0.5 * dt - T_ms, k);
        Vec4 k2 = rhs(axpy(x, 0.5 * dt, k1), xd_half);
        Vec4 k3 = rhs(axpy(x, 0.5 * dt, k2), xd_half);
        Vec4 xd_full = delayed(t + dt - T_ms, k);
        Vec4 k4 = rhs(axpy(x, dt, k3), xd_full);
        Vec4 next;
        for (int c = 0; c < 4; ++c)
            next[c] = x[c] + dt / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
        check_state(next);
        xs[k + 1] = next;
        fs[k + 1] = rhs(next, delayed(t + dt - T_ms, k + 1));
    }

    Trajectory traj;
    traj.kernel = Kernel::Dirac;
    traj.T_ms = T_ms;
    traj.dt_ms = dt;
    traj.horizon_ms = horizon_ms;
    traj.tau_bar_ms = tau_bar;
    for (int c = 0; c < 4; ++c) traj.initial[c] = history[c];
    traj.t_ms.resize(n + 1);
    for (long k = 0; k <= n; ++k) traj.t_ms[k] = k * dt;
    traj.x = std::move(xs);
    return traj;
}

namespace {

struct GammaRhs {
    const NetworkSpec& net;
    double T;

    Vec8 operator()(const Vec8& s) const {
        Vec4 y = {s[4], s[5], s[6], s[7]};
        Vec4 u = net.drive(y);
        Vec4 f = net.rate(u);
        Vec8 d;
        for (int j = 0; j < 4; ++j) {
            d[j] = (-s[j] + f[j]) / net.tau_bar_ms;
            d[4 + j] = (s[j] - s[4 + j]) / T;
        }
        return d;
    }
};

}  // namespace

Trajectory simulate_weak_gamma(const NetworkSpec& net, double T_ms, const Vec8& init,
                               double horizon_ms, double dt_ms, bool store_aux) {
    net.validate();
    if (!(T_ms > 0.0)) throw ConfigError("simulate_weak_gamma: delay T must be positive");
    double dt_cap = std::min(net.tau_bar_ms, T_ms) / 20.0;
    if (!(dt_ms > 0.0) || dt_ms > dt_cap)
        throw StepTooLarge("simulate_weak_gamma: need 0 < dt <= min(tau_bar, T)/20");

    const double dt = dt_ms;
    const long n = step_count(horizon_ms, dt);
    GammaRhs rhs{net, T_ms};

    Trajectory traj;
    traj.kernel = Kernel::WeakGamma;
    traj.T_ms = T_ms;
    traj.dt_ms = dt;
    traj.horizon_ms = horizon_ms;
    traj.tau_bar_ms = net.tau_bar_ms;
    traj.initial = init;
    traj.t_ms.resize(n + 1);
    traj.x.resize(n + 1);
    if (store_aux) traj.y.resize(n + 1);

    Vec8 s = init;
    for (long k = 0; k <= n; ++k) {
        traj.t_ms[k] = k * dt;
        traj.x[k] = {s[0], s[1], s[2], s[3]};
        if (store_aux) traj.y[k] = {s[4], s[5], s[6], s[7]};
        check_state(traj.x[k]);
        if (k == n) break;
        Vec8 k1 = rhs(s), s2;
        for (int c = 0; c < 8; ++c) s2[c] = s[c] + 0.5 * dt * k1[c];
        Vec8 k2 = rhs(s2), s3;
        for (int c = 0; c < 8; ++c) s3[c] = s[c] + 0.5 * dt * k2[c];
        Vec8 k3 = rhs(s3), s4;
        for (int c = 0; c < 8; ++c) s4[c] = s[c] + dt * k3[c];
        Vec8 k4 = rhs(s4);
        for (int c = 0; c < 8; ++c)
            s[c] += dt / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
    }
    return traj;
}

namespace {

// Product-integration weights for exp(-(q-s)/T)/T against a linear segment of
// width h: with E_a = exp(-(q-a)/T),
//   int K ds           = E_a * expm1(h/T)
//   int K (s-a)/h ds   = E_a * (e^(h/T) - expm1(h/T)/(h/T))
// The E_a-independent factors are fixed per step and precomputed here.
struct SegmentFactors {
    double w_total;  // expm1(h/T)
    double w_right;  // e^(h/T) - expm1(h/T)/(h/T)
    double decay;    // e^(-h/T), backward recurrence factor

    SegmentFactors(double h, double T) {
        double x = h / T;
        w_total = std::expm1(x);
        if (x < 1e-5) {
            // e^x - expm1(x)/x = x/2 + x^2/3 + x^3/8 + O(x^4)
            w_right = x * (0.5 + x * (1.0 / 3.0 + x / 8.0));
        } else {
            w_right = std::exp(x) - w_total / x;
        }
        decay = std::exp(-x);
    }
};

}  // namespace

Trajectory convolution_oracle(const NetworkSpec& net, double T_ms, const Vec8& init,
                              double horizon_ms, double dt_ms) {
    net.validate();
    if (!(T_ms > 0.0)) throw ConfigError("convolution_oracle: delay T must be positive");
    double dt_cap = std::min(net.tau_bar_ms, T_ms) / 20.0;
    if (!(dt_ms > 0.0) || dt_ms > dt_cap)
        throw StepTooLarge("convolution_oracle: need 0 < dt <= min(tau_bar, T)/20");

    const double dt = dt_ms;
    const long n = step_count(horizon_ms, dt);
    if (3 * n > 1000000)
        throw HorizonTooLong("convolution_oracle: more than 1e6 quadrature ops per step");

    const double T = T_ms;
    Vec4 x0 = {init[0], init[1], init[2], init[3]};
    std::vector<Vec4> xs(n + 1);
    xs[0] = x0;

    // lag term: pre-history tail plus product-trapezoid over completed steps;
    // E_a runs backward from the newest segment so far-past weights underflow
    // to their true (negligible) size instead of blowing up
    const SegmentFactors seg(dt, T);
    auto lag = [&](double q, long known) -> Vec4 {
        Vec4 acc;
        double tail = std::exp(-q / T);
        for (int c = 0; c < 4; ++c) acc[c] = tail * x0[c];
        if (known <= 0) return acc;
        double eb = std::exp(-(q - known * dt) / T);  // E at the newest node
        for (long m = known - 1; m >= 0; --m) {
            double ea = eb * seg.decay;
            double w1 = ea * seg.w_right;
            double w0 = ea * seg.w_total - w1;
            if (ea == 0.0) break;  // everything older is fully damped
            for (int c = 0; c < 4; ++c) acc[c] += w0 * xs[m][c] + w1 * xs[m + 1][c];
            eb = ea;
        }
        return acc;
    };

    auto rate_term = [&](const Vec4& y) {
        Vec4 f = net.rate(net.drive(y));
        return f;
    };
    auto xdot = [&](const Vec4& x, const Vec4& y) {
        Vec4 f = rate_term(y);
        Vec4 d;
        for (int c = 0; c < 4; ++c) d[c] = (-x[c] + f[c]) / net.tau_bar_ms;
        return d;
    };

    const double kq = 1.0 / T;  // kernel value at zero lag, scaled by 1/T
    for (long k = 0; k < n; ++k) {
        double t = k * dt;
        const Vec4& x = xs[k];
        Vec4 lag_t = lag(t, k);
        Vec4 lag_h = lag(t + 0.5 * dt, k);
        Vec4 lag_f = lag(t + dt, k);

        // Pouzet stages: the within-step part of the convolution uses the
        // same Butcher weights applied to the kernel.
        double kh = std::exp(-0.5 * dt / T) / T;
        Vec4 k1 = xdot(x, lag_t);
        Vec4 x2 = axpy(x, 0.5 * dt, k1);
        Vec4 y2;
        for (int c = 0; c < 4; ++c) y2[c] = lag_h[c] + dt * 0.5 * kh * x[c];
        Vec4 k2 = xdot(x2, y2);
        Vec4 x3 = axpy(x, 0.5 * dt, k2);
        Vec4 y3;
        for (int c = 0; c < 4; ++c) y3[c] = lag_h[c] + dt * 0.5 * kq * x2[c];
        Vec4 k3 = xdot(x3, y3);
        Vec4 x4 = axpy(x, dt, k3);
        Vec4 y4;
        for (int c = 0; c < 4; ++c) y4[c] = lag_f[c] + dt * kh * x3[c];
        Vec4 k4 = xdot(x4, y4);

        Vec4 next;
        for (int c = 0; c < 4; ++c)
            next[c] = x[c] + dt / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
        check_state(next);
        xs[k + 1] = next;
    }

    Trajectory traj;
    traj.kernel = Kernel::WeakGamma;
    traj.T_ms = T_ms;
    traj.dt_ms = dt;
    traj.horizon_ms = horizon_ms;
    traj.tau_bar_ms = net.tau_bar_ms;
    traj.initial = init;
    traj.t_ms.resize(n + 1);
    for (long k = 0; k <= n; ++k) traj.t_ms[k] = k * dt;
    traj.x = std::move(xs);
    return traj;
}

Classification classify_longterm(const Trajectory& traj, const Equilibrium& eq) {
    if (traj.x.size() < 16) throw ConfigError("classify_longterm: trajectory too short");
    if (traj.horizon_ms < 20.0 * traj.tau_bar_ms)
        throw ConfigError("classify_longterm: horizon must be at least 20 tau_bar");

    const std::size_t n = traj.x.size();
    const std::size_t w0 = (n * 6) / 10;  // analysis window: last 40%
    auto sup_dist = [&](std::size_t k) {
        double d = 0.0;
        for (int c = 0; c < 4; ++c) d = std::max(d, std::abs(traj.x[k][c] - eq.x_star[c]));
        return d;
    };

    Classification out;
    double tail_sup = 0.0;
    for (std::size_t k = (n * 9) / 10; k < n; ++k) tail_sup = std::max(tail_sup, sup_dist(k));
    out.final_distance = tail_sup;
    if (tail_sup < 1e-5) {
        out.kind = LongTerm::ConvergesToEquilibrium;
        return out;
    }

    // oscillation analysis on the E1 channel
    std::vector<std::size_t> peaks, troughs;
    double lo = traj.x[w0][0], hi = lo;
    for (std::size_t k = w0; k < n; ++k) {
        double v = traj.x[k][0];
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        if (k == w0 || k + 1 >= n) continue;
        double prev = traj.x[k - 1][0], next = traj.x[k + 1][0];
        if (v > prev && v >= next) peaks.push_back(k);
        if (v < prev && v <= next) troughs.push_back(k);
    }
    double range = hi - lo;
    double scale = std::max({1.0, std::abs(eq.x_star[0]), std::abs(hi), std::abs(lo)});
    if (range < 1e-7 * scale || peaks.size() < 3 || troughs.size() < 3) {
        out.kind = LongTerm::Undetermined;
        return out;
    }

    // successive cycle amplitudes (peak minus following trough)
    std::vector<double> amps;
    std::size_t ti = 0;
    for (std::size_t pi = 0; pi < peaks.size(); ++pi) {
        while (ti < troughs.size() && troughs[ti] < peaks[pi]) ++ti;
        if (ti >= troughs.size()) break;
        amps.push_back(traj.x[peaks[pi]][0] - traj.x[troughs[ti]][0]);
    }
    if (amps.size() < 3) {
        out.kind = LongTerm::Undetermined;
        return out;
    }
    double mean_amp = 0.0;
    for (double a : amps) mean_amp += a;
    mean_amp /= amps.size();
    bool stationary = mean_amp > 0.0;
    for (std::size_t i = 0; i + 1 < amps.size(); ++i)
        if (std::abs(amps[i + 1] - amps[i]) > 0.02 * mean_amp) stationary = false;
    if (!stationary) {
        out.kind = LongTerm::Undetermined;
        return out;
    }

    // period from parabolic-refined peak times
    auto refined_time = [&](std::size_t k) {
        double ym = traj.x[k - 1][0], y0 = traj.x[k][0], yp = traj.x[k + 1][0];
        double den = ym - 2.0 * y0 + yp;
        double delta = den == 0.0 ? 0.0 : 0.5 * (ym - yp) / den;
        return traj.t_ms[k] + delta * traj.dt_ms;
    };
    double spacing = 0.0;
    int spans = 0;
    for (std::size_t i = 1; i < peaks.size(); ++i) {
        spacing += refined_time(peaks[i]) - refined_time(peaks[i - 1]);
        ++spans;
    }
    out.kind = LongTerm::LimitCycle;
    out.amplitude = 0.5 * mean_amp;
    out.period_ms = spacing / spans;
    return out;
}

}  // namespace wcdd
