#pragma once

#include <complex>

#include "wcdd/model.hpp"

namespace wcdd {

using Complex = std::complex<double>;

/// Polar form of the normalized kernel transform on the imaginary axis,
/// H^(i*omega) = rho(omega) * exp(-i*theta(omega)).
struct KernelTransform {
    double rho;    // modulus, 0 < rho <= 1
    double theta;  // phase, radians
};

/// Closed-form (rho, theta) for omega >= 0.
///   Dirac:     rho = 1,               theta = omega
///   WeakGamma: rho = 1/sqrt(1+w^2),   theta = arctan(omega)
KernelTransform kernel_transform(Kernel k, double omega);

/// Normalized Laplace transform H^(z): exp(-z) for Dirac, 1/(1+z) for WeakGamma.
Complex kernel_laplace(Kernel k, Complex z);

/// Q_tt(z) = ((z + tt) / (tt * H^(z)))^2, the reduced characteristic variable.
/// Equals exactly 1 at z = 0 for both kernels. Throws KernelSingularity where
/// H^ is singular or vanishes to working precision (WeakGamma z = -1; Dirac
/// Re(z) beyond exp range).
Complex q_value(double tau_tilde, Complex z, Kernel k);

/// Characteristic residual F(z) = Q^2 - alpha*Q + beta. A root certifies an
/// eigenvalue of the linearized circuit at s = z/tau (physical units).
Complex char_residual(double alpha, double beta, double tau_tilde, Complex z, Kernel k);

/// |F(i*omega)| at a candidate critical point; < 1e-8 certifies a crossing.
double imag_axis_residual(double alpha, double beta, double tau_tilde, double omega, Kernel k);

}  // namespace wcdd
