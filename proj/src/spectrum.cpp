#include "wcdd/spectrum.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "wcdd/errors.hpp"

namespace wcdd {

namespace {

constexpr double kPi = std::numbers::pi;

// In-place iterative radix-2 Cooley-Tukey; n must be a power of two.
void fft(std::vector<std::complex<double>>& a) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        double ang = -2.0 * kPi / static_cast<double>(len);
        std::complex<double> wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                auto u = a[i + k];
                auto v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

}  // namespace

const char* to_string(Band b) {
    switch (b) {
        case Band::Delta: return "delta";
        case Band::Theta: return "theta";
        case Band::Alpha: return "alpha";
        case Band::Beta: return "beta";
        case Band::Gamma: return "gamma";
    }
    return "?";
}

Band band_classify(double f_hz) {
    if (f_hz < 0.0) throw ConfigError("band_classify: frequency must be non-negative");
    if (f_hz < 4.0) return Band::Delta;
    if (f_hz < 8.0) return Band::Theta;
    if (f_hz < 12.0) return Band::Alpha;
    if (f_hz <= 30.0) return Band::Beta;
    return Band::Gamma;
}

double onset_frequency(double omega, double T_ms) {
    if (!(omega > 0.0) || !(T_ms > 0.0))
        throw ConfigError("onset_frequency: omega and T must be positive");
    return 1000.0 * omega / (2.0 * kPi * T_ms);
}

double dominant_frequency_of(const std::vector<double>& samples, double dt_ms) {
    if (samples.size() < 16 || !(dt_ms > 0.0))
        throw ConfigError("dominant_frequency: too few samples");

    // discard the transient half
    const std::size_t n = samples.size() - samples.size() / 2;
    const std::size_t off = samples.size() - n;

    double mean = 0.0;
    for (std::size_t k = 0; k < n; ++k) mean += samples[off + k];
    mean /= static_cast<double>(n);

    double power = 0.0;
    std::size_t nfft = next_pow2(4 * n);
    std::vector<std::complex<double>> buf(nfft, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        double hann = 0.5 - 0.5 * std::cos(2.0 * kPi * k / (n - 1));
        double v = (samples[off + k] - mean) * hann;
        buf[k] = v;
        power += v * v;
    }
    if (power < 1e-24 * static_cast<double>(n)) throw NoPeak("signal is flat");
    fft(buf);

    std::size_t half = nfft / 2;
    std::size_t best = 0;
    double best_mag = 0.0;
    for (std::size_t k = 1; k < half; ++k) {
        double m = std::abs(buf[k]);
        if (m > best_mag) {
            best_mag = m;
            best = k;
        }
    }
    if (best == 0 || best_mag <= 0.0) throw NoPeak("magnitude spectrum has no interior peak");

    // parabolic refinement on log magnitude
    double delta = 0.0;
    if (best + 1 < half && best > 1) {
        double lm = std::log(std::abs(buf[best - 1]) + 1e-300);
        double l0 = std::log(best_mag + 1e-300);
        double lp = std::log(std::abs(buf[best + 1]) + 1e-300);
        double den = lm - 2.0 * l0 + lp;
        if (den < 0.0) delta = 0.5 * (lm - lp) / den;
    }
    double fs_hz = 1000.0 / dt_ms;
    return (static_cast<double>(best) + delta) * fs_hz / static_cast<double>(nfft);
}

double dominant_frequency(const Trajectory& traj) {
    std::vector<double> e1(traj.x.size());
    for (std::size_t k = 0; k < traj.x.size(); ++k) e1[k] = traj.x[k][0];
    return dominant_frequency_of(e1, traj.dt_ms);
}

}  // namespace wcdd
