#pragma once

#include "wcdd/simulate.hpp"

namespace wcdd {

/// EEG band taxonomy: delta < 4 <= theta < 8 <= alpha < 12 <= beta <= 30 < gamma.
enum class Band { Delta, Theta, Alpha, Beta, Gamma };

const char* to_string(Band b);

/// Boundary values go to the higher band except 30 Hz, which is still Beta.
Band band_classify(double f_hz);

/// Analytical onset frequency of a critical point: f = 1000 w / (2 pi T).
double onset_frequency(double omega, double T_ms);

/// Dominant oscillation frequency of the E1 channel: drop the first half
/// (transient), remove the mean, Hann window, zero-pad x4, peak of the
/// magnitude spectrum with parabolic interpolation. Throws NoPeak for flat
/// signals.
double dominant_frequency(const Trajectory& traj);

/// Same analysis on a raw uniformly sampled signal.
double dominant_frequency_of(const std::vector<double>& samples, double dt_ms);

}  // namespace wcdd
