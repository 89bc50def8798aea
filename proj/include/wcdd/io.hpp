#pragma once

#include <iosfwd>
#include <string>

#include "wcdd/equilibrium.hpp"
#include "wcdd/model.hpp"
#include "wcdd/simulate.hpp"
#include "wcdd/stability.hpp"

namespace wcdd {

/// Circuit configuration document:
/// { scheme, weights: {name: value}, sigmoids: [4 x {family, params}],
///   inputs: [4], tau_bar_ms, kernel: {kind, tau_ms} }
std::string network_to_json(const NetworkSpec& net);
NetworkSpec network_from_json(const std::string& text);
NetworkSpec load_network(const std::string& path);

/// Equilibrium report: [{x_star, phi, alpha, beta, residual}, ...]
std::string equilibria_to_json(const std::vector<Equilibrium>& eqs);

/// Critical-delay report:
/// { alpha, beta, kernel, zone, stable_all_delays, saddle_unstable,
///   entries: [{omega, tau_tilde, T_ms, f_hz, transversality, case}], window, window_ms }
std::string critical_set_to_json(const CriticalDelaySet& set);

/// Trajectory CSV: header t_ms,E1,I1,E2,I2 (plus Y1..Y4 when stored),
/// %.9g formatting.
void write_trajectory_csv(const Trajectory& traj, std::ostream& os);
void write_trajectory_csv(const Trajectory& traj, const std::string& path);

/// Reads a trajectory CSV produced by write_trajectory_csv (Y columns optional).
Trajectory read_trajectory_csv(const std::string& path);

}  // namespace wcdd
