#pragma once

#include <vector>

#include "wcdd/model.hpp"

namespace wcdd {

struct SolverOpts {
    double tolerance = 1e-10;    // sup-norm of the fixed-point defect
    int max_iterations = 200;    // Newton iterations per start
    double dedup_radius = 1e-9;  // sup-distance below which two solutions coincide

    void validate() const;
};

/// Fixed point of the circuit with its linearization data.
struct Equilibrium {
    Vec4 x_star{};    // equilibrium rates (E1*, I1*, E2*, I2*)
    Vec4 phi{};       // sigmoid gains phi_j at the equilibrium drive
    double residual = 0.0;  // sup-norm of -x* + F(Cx* + P)
    double alpha = 0.0;
    double beta = 0.0;
};

/// sup-norm of the fixed-point defect -x + F(Cx + P).
double fixed_point_residual(const NetworkSpec& net, const Vec4& x);

/// All equilibria found by multi-start Newton (3^4 lattice over each node's
/// range plus the origin and F(P)), with damped fixed-point fallback.
/// Deduplicated and sorted by Euclidean norm ascending. Throws NoConvergence
/// with per-start diagnostics when no start converges. extra_starts appends
/// caller-supplied seeds (e.g. a sweep's warm start) to the standard list.
std::vector<Equilibrium> find_equilibria(const NetworkSpec& net, const SolverOpts& opts = {},
                                         const std::vector<Vec4>& extra_starts = {});

/// Reduced characteristic coefficients at an equilibrium point.
std::pair<double, double> alpha_beta(const NetworkSpec& net, const Vec4& eq_point);

/// Same reduction from explicit gains; lets callers substitute phi directly.
std::pair<double, double> alpha_beta_from_gains(Scheme scheme, const WeightMatrix& w,
                                                const Vec4& phi);

}  // namespace wcdd
