#pragma once

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "logspiral/kernel.hpp"

namespace logspiral {

struct ThetaSolutions {
    std::vector<double> thetas;                         // sorted, inside (0, 2π)
    std::vector<std::pair<double, double>> brackets;    // branch interval that produced each root
    std::optional<double> theta1, theta2, theta3;       // labelled as in the count table

    int count() const { return static_cast<int>(thetas.size()); }
};

struct CriticalConstants {
    double beta0;
    double beta1;
    double beta_star;
    double beta2;
    double beta3;
};

struct AsymmetricFixedPoint {
    double theta_bar;
    double r_bar;
};

// The seven open parameter bands used throughout; beta = 1 separates the last two
// although nothing degenerates there except the R2 nullcline.
enum class Band { below_beta0, beta0_beta1, beta1_star, star_beta2, beta2_one, one_beta3, above_beta3 };

enum class Critical { beta0, beta1, beta_star, beta2, one, beta3 };

CriticalConstants solve_critical_betas();
// Solved once, then shared.
const CriticalConstants& critical_constants();

double critical_value(Critical c);
std::string_view critical_name(Critical c);
Band band_of(double beta);
std::string_view band_label(Band b);
// Throws NearCriticalError when |beta - c| < guard for some listed c.
void require_away_from(double beta, double guard, std::initializer_list<Critical> which);

ThetaSolutions solve_theta_stars(const SpiralParams& p);
// {0} ∪ roots ∪ {2π}: the angles of the equilibria on R = 0.
std::vector<double> zero_line_angles(const ThetaSolutions& s);

double eval_F(const SpiralParams& p, double theta);
double eval_Fprime(const SpiralParams& p, double theta);
double eval_Fprime_pi(const SpiralParams& p);
double solve_alpha(const SpiralParams& p);
std::optional<AsymmetricFixedPoint> solve_asymmetric_fixed_point(const SpiralParams& p);

namespace detail {
// No guard band; used while the critical constants themselves are being solved.
ThetaSolutions theta_stars_unguarded(const SpiralParams& p);
// g(β) = cot γ − e^{−γβ} csc γ − β
double count_discriminant(double beta);
}  // namespace detail

}  // namespace logspiral
