#include "wcdd/chareq.hpp"

#include <cmath>

#include "wcdd/errors.hpp"

namespace wcdd {

KernelTransform kernel_transform(Kernel k, double omega) {
    if (k == Kernel::Dirac) return {1.0, omega};
    return {1.0 / std::sqrt(omega * omega + 1.0), std::atan(omega)};
}

Complex kernel_laplace(Kernel k, Complex z) {
    if (k == Kernel::Dirac) return std::exp(-z);
    return 1.0 / (1.0 + z);
}

Complex q_value(double tau_tilde, Complex z, Kernel k) {
    if (k == Kernel::WeakGamma) {
        if (z == Complex(-1.0, 0.0))
            throw KernelSingularity("weak-Gamma transform is singular at z = -1");
        // Rational form (z + tt)^2 (1 + z)^2 / tt^2 avoids the intermediate pole.
        Complex w = (z + tau_tilde) * (1.0 + z) / tau_tilde;
        return w * w;
    }
    Complex h = std::exp(-z);
    if (!(std::isfinite(h.real()) && std::isfinite(h.imag())) || std::abs(h) == 0.0)
        throw KernelSingularity("Dirac transform under/overflowed at this z");
    Complex w = (z + tau_tilde) / (tau_tilde * h);
    return w * w;
}

Complex char_residual(double alpha, double beta, double tau_tilde, Complex z, Kernel k) {
    Complex q = q_value(tau_tilde, z, k);
    return q * q - alpha * q + beta;
}

double imag_axis_residual(double alpha, double beta, double tau_tilde, double omega, Kernel k) {
    return std::abs(char_residual(alpha, beta, tau_tilde, Complex(0.0, omega), k));
}

}  // namespace wcdd
