#pragma once

#include <array>
#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include "logspiral/criticality.hpp"
#include "logspiral/kernel.hpp"

namespace logspiral {

struct PhasePoint {
    enum class Tag { finite, plus_infinity, minus_infinity };

    Tag tag = Tag::finite;
    double r = 0.0;  // meaningful only when finite
    double theta = 0.0;

    static PhasePoint finite(double r, double theta) { return {Tag::finite, r, theta}; }
    static PhasePoint infinity(int sign, double theta) {
        return {sign > 0 ? Tag::plus_infinity : Tag::minus_infinity, 0.0, theta};
    }
    bool is_finite() const { return tag == Tag::finite; }
    int infinity_sign() const { return tag == Tag::plus_infinity ? 1 : tag == Tag::minus_infinity ? -1 : 0; }
};

std::string to_string(const PhasePoint& p);

enum class StabilityKind { attractor, repeller, saddle };
std::string_view kind_name(StabilityKind k);
StabilityKind time_reversed(StabilityKind k);

using Matrix2 = std::array<std::array<double, 2>, 2>;

struct EigenData {
    double trace;
    double determinant;
    std::array<std::complex<double>, 2> eigenvalues;
};

EigenData eigen_data(const Matrix2& m);
// Sign test on (trace, det); throws NonHyperbolicError inside the 1e-8 guard.
StabilityKind classify_eigen(const EigenData& e);

struct Equilibrium {
    std::string id;  // symbolic, e.g. "(0,theta2)" or "(+inf,2pi-theta3)"
    PhasePoint location;
    StabilityKind kind = StabilityKind::saddle;
    double trace = 0.0;
    double determinant = 0.0;
    std::array<std::complex<double>, 2> eigenvalues{};
    bool log_scaled = false;    // eigen-data taken in the A = log R chart
    bool compactified = false;  // point at R = ±inf, kind inherited through the swap symmetry
    std::string mirror_of;      // finite partner of a compactified point
    std::string note;
};

// (K'(θ) − K'(0)) / (K'(−θ) − K'(0)); pole at θ = 2π − α.
double nullcline_R1(const SpiralParams& p, double theta);
// (K(θ) − K(0)) / (K(−θ) − K(0)); asymptotes at θ = 2π − θi.
double nullcline_R2(const SpiralParams& p, double theta);

// θ0 ∈ [0, 2π]; the end points use the one-sided kernel limits.
Matrix2 jacobian_reparam(const SpiralParams& p, double r0, double theta0);
// Jacobian of the log-scaled field g1 (sign = +1) or g2 (sign = −1) at (A, θ).
Matrix2 jacobian_log(const SpiralParams& p, double a0, double theta0, int sign = 1);

std::vector<Equilibrium> list_equilibria(const SpiralParams& p);

// Symbolic angle names shared with the classifier and the graph.
std::string angle_name(const ThetaSolutions& s, double theta);
std::string mirrored_angle_name(const ThetaSolutions& s, double theta);
std::string zero_line_id(const ThetaSolutions& s, double theta);
std::string infinity_id(const ThetaSolutions& s, int sign, double partner_theta);

}  // namespace logspiral
