#pragma once

// Shared helpers for the test suites: deterministic RNG wrappers and small
// independent numerical oracles (kept free of the library's solver paths).

#include <array>
#include <complex>
#include <random>
#include <vector>

#include "wcdd/model.hpp"

namespace wcdd::testing {

inline std::mt19937& rng() {
    static std::mt19937 gen(0x5eed1234u);
    return gen;
}

inline double uniform(double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    return d(rng());
}

// Roots of a complex polynomial by Durand-Kerner iteration. Coefficients are
// ascending: p(x) = c[0] + c[1] x + ... + c[n] x^n, c[n] != 0.
inline std::vector<std::complex<double>> poly_roots(
    const std::vector<std::complex<double>>& coeffs) {
    using C = std::complex<double>;
    int n = static_cast<int>(coeffs.size()) - 1;
    std::vector<C> monic(coeffs.begin(), coeffs.end());
    for (auto& c : monic) c /= coeffs.back();

    auto eval = [&](C x) {
        C acc = monic[n];
        for (int i = n - 1; i >= 0; --i) acc = acc * x + monic[i];
        return acc;
    };

    std::vector<C> roots(n);
    C seed(0.4, 0.9);
    C acc(1.0, 0.0);
    for (int i = 0; i < n; ++i) {
        acc *= seed;
        roots[i] = acc;
    }
    for (int iter = 0; iter < 500; ++iter) {
        double moved = 0.0;
        for (int i = 0; i < n; ++i) {
            C denom(1.0, 0.0);
            for (int j = 0; j < n; ++j)
                if (j != i) denom *= roots[i] - roots[j];
            C delta = eval(roots[i]) / denom;
            roots[i] -= delta;
            moved = std::max(moved, std::abs(delta));
        }
        if (moved < 1e-13) break;
    }
    return roots;
}

// Determinant of a 4x4 complex matrix by cofactor expansion.
inline std::complex<double> det4(const std::array<std::array<std::complex<double>, 4>, 4>& m) {
    using C = std::complex<double>;
    auto det3 = [&](int r0, int r1, int r2, int c0, int c1, int c2) {
        return m[r0][c0] * (m[r1][c1] * m[r2][c2] - m[r1][c2] * m[r2][c1]) -
               m[r0][c1] * (m[r1][c0] * m[r2][c2] - m[r1][c2] * m[r2][c0]) +
               m[r0][c2] * (m[r1][c0] * m[r2][c1] - m[r1][c1] * m[r2][c0]);
    };
    C acc(0.0, 0.0);
    int cols[4] = {0, 1, 2, 3};
    double sign = 1.0;
    for (int k = 0; k < 4; ++k) {
        int c0 = -1, c1 = -1, c2 = -1;
        int idx = 0;
        for (int c = 0; c < 4; ++c) {
            if (c == cols[k]) continue;
            (idx == 0 ? c0 : idx == 1 ? c1 : c2) = c;
            ++idx;
        }
        acc += sign * m[0][cols[k]] * det3(1, 2, 3, c0, c1, c2);
        sign = -sign;
    }
    return acc;
}

// Random weights restricted to a scheme's slots, uniform in [-mag, mag].
inline WeightMatrix random_scheme_weights(Scheme s, double mag) {
    std::map<std::string, double> named;
    for (const auto& slot : scheme_slots(s)) named[slot.name] = uniform(-mag, mag);
    return build_connectivity(s, named);
}

inline Vec4 random_gains(double lo, double hi) {
    return {uniform(lo, hi), uniform(lo, hi), uniform(lo, hi), uniform(lo, hi)};
}

// (alpha, beta) samplers for the stability taxonomy.

inline std::pair<double, double> sample_region_R() {
    double a = uniform(-1.999, 1.999);
    double b = uniform(std::abs(a) - 1.0 + 1e-9, 1.0 - 1e-9);
    return {a, b};
}

inline std::pair<double, double> sample_saddle() {
    double a = uniform(-8.0, 8.0);
    double b = a - 1.0 - uniform(1e-6, 6.0);
    return {a, b};
}

// Case-1 Dirac points with a nonempty ladder: beta > max(1, alpha^2/4).
inline std::pair<double, double> sample_dirac_case1() {
    for (;;) {
        double b = uniform(1.01, 40.0);
        double cap = 2.0 * std::sqrt(b);
        double a = uniform(-cap, std::min(2.0, cap));
        if (b >= a * a / 4.0 && b > a - 1.0) return {a, b};
    }
}

// Case-2 Dirac points with a crossing: |alpha - sqrt(alpha^2-4beta)| > 2.
inline std::pair<double, double> sample_dirac_case2() {
    for (;;) {
        double a = uniform(-12.0, 1.9);
        double b = uniform(a - 1.0 + 1e-6, a * a / 4.0 - 1e-9);
        if (b >= a * a / 4.0) continue;
        if (std::abs(a - std::sqrt(a * a - 4.0 * b)) > 2.0 + 1e-9) return {a, b};
    }
}

inline std::pair<double, double> sample_gray() {
    // two-root band: between the constraint curve's extremal levels
    for (;;) {
        double b = uniform(1.05, 120.0);
        double f_end = 4.0 - 2.0 * std::sqrt(b);
        double f_u2 = 2.0 * (8.0 - 8.0 * std::pow(b, 0.25) + std::sqrt(b));
        double lo = std::min(f_end, f_u2), hi = std::max(f_end, f_u2);
        if (!(lo + 1e-3 < hi - 1e-3)) continue;
        double a = uniform(lo + 1e-3, hi - 1e-3);
        if (b >= a * a / 4.0 && b > a - 1.0) return {a, b};
    }
}

inline std::pair<double, double> sample_pink() {
    // four-root band: above the parabola, below both extremal levels
    for (;;) {
        double b = uniform(16.5, 120.0);
        double f_end = 4.0 - 2.0 * std::sqrt(b);
        double f_u2 = 2.0 * (8.0 - 8.0 * std::pow(b, 0.25) + std::sqrt(b));
        double hi = std::min(f_end, f_u2);
        double lo = -2.0 * std::sqrt(b);
        if (!(lo + 1e-3 < hi - 1e-3)) continue;
        double a = uniform(lo + 1e-3, hi - 1e-3);
        if (b >= a * a / 4.0 && b > a - 1.0) return {a, b};
    }
}

inline std::pair<double, double> sample_cyan() {
    for (;;) {
        double a = uniform(-30.0, 1.9);
        double b = uniform(a - 1.0 + 1e-6, a * a / 4.0 - 1e-9);
        if (b >= a * a / 4.0) continue;
        if (a - std::sqrt(a * a - 4.0 * b) < -8.0 - 1e-6) return {a, b};
    }
}

}  // namespace wcdd::testing
