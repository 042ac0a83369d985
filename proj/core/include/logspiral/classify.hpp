#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "logspiral/criticality.hpp"
#include "logspiral/dynamics.hpp"
#include "logspiral/equilibria.hpp"

namespace logspiral {

// Long-time cases of the reparametrized flow; i1_only / i2_only are the invariant lines I2 = 0 / I1 = 0.
enum class CaseId { c1, c2, c2p, c3, c3p, c4, c5, c6, c7, c7p, c8, c8p, c9, c10, i1_only, i2_only };
std::string_view case_name(CaseId c);
bool finite_time(CaseId c);

// power_t:     I ≈ coefficient · t^exponent
// power_tstar: I ≈ coefficient · (t − t*)^exponent
// log_exponent: log|I| ≈ exponent · log|τ| with τ = t − t* when t* exists, else t; no coefficient.
enum class RateKind { power_t, power_tstar, log_exponent };
std::string_view rate_kind_name(RateKind k);

struct RateTerm {
    std::string quantity;  // "I1" or "I2"
    RateKind kind;
    double exponent;
    double coefficient;  // NaN for log_exponent
};

struct BehaviorClass {
    CaseId case_id = CaseId::c1;
    // 1..5 for the five long-time regimes (up to symmetry); 0 when none applies.
    int theorem_bullet = 0;
    bool saddle_destined = false;
    Direction direction = Direction::forward;
    PhasePoint destination;
    std::string destination_id;
    std::optional<double> t_star;
    std::vector<RateTerm> rates;
    std::string note;
};

// Per-beta data shared by many classifications (angles, equilibria, capture targets).
class Classifier {
public:
    // Throws NearCriticalError within 1e-4 of beta0, beta*, beta2 or beta3.
    explicit Classifier(double beta, Controls controls = {});

    BehaviorClass classify(double i1, double i2, double theta, Direction dir) const;

    double beta() const { return beta_; }
    const ThetaSolutions& angles() const { return sol_; }
    const std::vector<Equilibrium>& equilibria() const { return eq_; }

private:
    BehaviorClass classify_positive(double i1, double i2, double theta, Direction dir) const;
    BehaviorClass invariant_line(double i1, double i2, double theta, Direction dir) const;
    const Equilibrium* find(const std::string& id) const;

    double beta_;
    SpiralParams p_;  // |beta|
    KernelLimits lim_;
    ThetaSolutions sol_;
    std::vector<Equilibrium> eq_;
    Controls ctl_;
    std::vector<std::string> target_ids_;
};

BehaviorClass classify_behavior(const SpiralParams& p, double i1, double i2, double theta, Direction dir);

struct HeteroclinicGraph {
    double beta;
    Band band;
    std::vector<Equilibrium> nodes;
    std::vector<std::pair<std::string, std::string>> edges;

    bool has_edge(std::string_view from, std::string_view to) const;
    std::vector<std::string> successors(std::string_view id) const;
    std::vector<std::string> predecessors(std::string_view id) const;
};

// Invariant-line edges plus the band's separatrix edges. Throws NearCriticalError within 1e-4
// of any critical value including beta1 and 1.
HeteroclinicGraph predicted_heteroclinic_graph(const SpiralParams& p);

struct GridSpec {
    int n_a = 61;
    int n_theta = 61;
    double eps = 1e-3;
    double a_max = 3.0;
};

struct BasinCell {
    double a_or_r;  // A = log|R| on the two sheets, R = 0 on the zero line
    double theta;
    int sheet;      // +1: R > 0, −1: R < 0, 0: R = 0
    std::string destination_id;  // "unresolved" when classification failed
    std::string case_id;
};

struct BasinSweep {
    GridSpec grid;
    Direction direction;
    std::vector<BasinCell> cells;  // sheet +1, then −1 (A-major, θ-minor), then the zero line
    std::size_t unresolved = 0;
};

BasinSweep basin_sweep(const SpiralParams& p, const GridSpec& grid = {}, Direction dir = Direction::forward);

struct RateTable {
    double c1;                   // K'(−0)/K'(0)
    std::optional<double> c2;    // K'(θ2)/K'(0)
    std::vector<std::pair<std::string, double>> decay_exponents;  // −K'(θi)/K'(0) for θi with K'(θi) > 0
    double case1_coefficient;    // 1/(−2(K'(0)+K'(π)))
    std::optional<std::pair<double, double>> case2_coefficients;  // (I1, I2) at (R̄, θ̄)
    std::pair<double, double> case4_coefficients;  // (I1, I2)
    std::pair<double, double> case9_coefficients;  // (I1, I2)
};

RateTable asymptotic_rate_table(const SpiralParams& p);

}  // namespace logspiral
