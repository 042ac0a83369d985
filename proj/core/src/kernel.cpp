#include "logspiral/kernel.hpp"

#include <cmath>
#include <string>

#include "logspiral/errors.hpp"

namespace logspiral {

SpiralParams::SpiralParams(double beta) : beta_(beta) {
    if (!std::isfinite(beta) || beta == 0.0)
        throw DomainError("beta must be finite and nonzero, got " + std::to_string(beta));
    const double d = 1.0 + beta * beta;
    const std::complex<double> bmi(beta, -1.0);
    z_ = 2.0 * std::numbers::pi * bmi / d;
    gamma_ = 4.0 * std::numbers::pi / d;
    c_ = 2.0 * bmi / d;
    inv_ = 1.0 / (std::exp(2.0 * z_) - 1.0);
}

KernelValues kernel_closed(const SpiralParams& p, double theta) {
    // w = e^{2kz}/(e^{2z}-1); K = Im w / 2 and each θ-derivative multiplies w by c.
    const std::complex<double> w = std::exp(theta / std::numbers::pi * p.z()) * p.resolvent();
    const std::complex<double> cw = p.deriv_factor() * w;
    const std::complex<double> ccw = p.deriv_factor() * cw;
    return {theta, 0.5 * w.imag(), 0.5 * cw.imag(), 0.5 * ccw.imag()};
}

static void require_interior(double theta) {
    if (!(theta > 0.0 && theta < two_pi))
        throw DomainError("theta must lie in (0, 2pi), got " + std::to_string(theta));
}

KernelValues eval_kernel(const SpiralParams& p, double theta) {
    require_interior(theta);
    return kernel_closed(p, theta);
}

KernelValues eval_kernel_reflected(const SpiralParams& p, double theta) {
    require_interior(theta);
    return kernel_closed(p, two_pi - theta);
}

KernelLimits kernel_limits(const SpiralParams& p) {
    const KernelValues plus = kernel_closed(p, 0.0);
    const KernelValues minus = kernel_closed(p, two_pi);
    KernelLimits lim{};
    lim.k1_plus0 = plus.K1;
    lim.k1_minus0 = minus.K1;
    lim.k1_zero = 0.5 * (plus.K1 + minus.K1);
    lim.k0 = plus.K;
    lim.k2_plus0 = plus.K2;
    lim.k2_minus0 = minus.K2;
    return lim;
}

}  // namespace logspiral
