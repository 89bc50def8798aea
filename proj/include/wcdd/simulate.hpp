#pragma once

#include <vector>

#include "wcdd/equilibrium.hpp"
#include "wcdd/model.hpp"

namespace wcdd {

/// Uniformly sampled solution of the circuit.
struct Trajectory {
    std::vector<double> t_ms;
    std::vector<Vec4> x;  // (E1, I1, E2, I2) per sample
    std::vector<Vec4> y;  // weak-Gamma auxiliary block, filled on request

    Kernel kernel = Kernel::Dirac;
    double T_ms = 0.0;
    double dt_ms = 0.0;
    double horizon_ms = 0.0;
    double tau_bar_ms = 0.0;
    Vec8 initial{};  // X0 in [0..3]; Y0 in [4..7] for the weak-Gamma system
};

/// Discrete-delay system tau_bar X' = -X + F(C X(t-T) + P), integrated by the
/// method of steps: fixed-step RK4 with cubic-Hermite interpolation of the
/// stored history for delayed reads. X(t) = history for all t <= 0.
/// Requires 0 < dt <= T/20 and horizon >= 10 T.
Trajectory simulate_dirac(const NetworkSpec& net, double T_ms, const Vec4& history,
                          double horizon_ms, double dt_ms);

/// Weak-Gamma system via the linear chain trick: the convolution variable
/// Y = h*X turns the circuit into the 8-dimensional ODE
///   tau_bar X' = -X + F(C Y + P),   T Y' = X - Y,
/// integrated with fixed-step RK4. init packs (X0, Y0); Y0 = X0 reproduces a
/// constant pre-history. Requires 0 < dt <= min(tau_bar, T)/20.
Trajectory simulate_weak_gamma(const NetworkSpec& net, double T_ms, const Vec8& init,
                               double horizon_ms, double dt_ms, bool store_aux = false);

/// Reference integrator for the weak-Gamma system that evaluates the memory
/// term directly: trapezoidal product quadrature of int h(t-s) X(s) ds with
/// exact exponential weights per subinterval, constant history before t = 0,
/// and Pouzet-type RK4 stages. Quadratic cost; throws HorizonTooLong past the
/// 1e6 quadrature-ops-per-step guard. Validates simulate_weak_gamma.
Trajectory convolution_oracle(const NetworkSpec& net, double T_ms, const Vec8& init,
                              double horizon_ms, double dt_ms);

enum class LongTerm { ConvergesToEquilibrium, LimitCycle, Undetermined };

struct Classification {
    LongTerm kind = LongTerm::Undetermined;
    double amplitude = 0.0;       // mean half peak-to-trough of E1 (LimitCycle)
    double period_ms = 0.0;       // mean refined peak spacing (LimitCycle)
    double final_distance = 0.0;  // sup-distance to x* over the trailing samples
};

/// Last-40%-window analysis against a reference equilibrium:
/// sup-distance over the trailing 10% below 1e-5 => ConvergesToEquilibrium;
/// stationary oscillation (successive cycle amplitudes within 2%) => LimitCycle;
/// anything else => Undetermined. Requires horizon >= 20 tau_bar.
Classification classify_longterm(const Trajectory& traj, const Equilibrium& eq);

}  // namespace wcdd
