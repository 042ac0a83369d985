#pragma once

#include <complex>
#include <numbers>

namespace logspiral {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

class SpiralParams {
public:
    // Throws DomainError for beta == 0 or non-finite beta.
    explicit SpiralParams(double beta);

    double beta() const { return beta_; }
    // z = 2π(β−i)/(1+β²)
    std::complex<double> z() const { return z_; }
    // γ = 4π/(1+β²)
    double gamma() const { return gamma_; }
    // d/dθ of e^{2kz} with k = θ/2π is c·e^{2kz}, c = 2(β−i)/(1+β²)
    std::complex<double> deriv_factor() const { return c_; }
    // 1/(e^{2z} − 1)
    std::complex<double> resolvent() const { return inv_; }

private:
    double beta_;
    std::complex<double> z_;
    double gamma_;
    std::complex<double> c_;
    std::complex<double> inv_;
};

struct KernelValues {
    double theta;
    double K;
    double K1;
    double K2;
};

struct KernelLimits {
    double k1_plus0;
    double k1_minus0;
    double k1_zero;  // midpoint, the value K'(0) used in the dynamics
    double k0;       // K(0) = K(2π)
    double k2_plus0;
    double k2_minus0;
};

// theta strictly inside (0, 2π).
KernelValues eval_kernel(const SpiralParams& p, double theta);

// Values at 2π − theta, i.e. K(−θ), K'(−θ), K''(−θ) on the fundamental domain.
KernelValues eval_kernel_reflected(const SpiralParams& p, double theta);

KernelLimits kernel_limits(const SpiralParams& p);

// Same closed form on [0, 2π]: theta = 0 gives the +0 limits and theta = 2π the −0 limits.
// No domain check beyond finiteness; callers clamp.
KernelValues kernel_closed(const SpiralParams& p, double theta);

}  // namespace logspiral
