#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace logspiral {

enum class CheckStatus { pass, fail, skipped_near_critical };
std::string_view status_name(CheckStatus s);

struct Witness {
    double beta;
    std::vector<std::pair<std::string, double>> at;  // further coordinates of the worst case
};

// One audited property over the whole beta grid. margin > 0 means the property holds with room;
// the witness is the grid point with the smallest margin.
struct Check {
    std::string id;
    std::string description;
    CheckStatus status = CheckStatus::skipped_near_critical;
    std::size_t evaluated = 0;
    std::vector<double> skipped_betas;
    double margin = 0.0;
    Witness witness{0.0, {}};
    std::string note;
};

struct BetaGrid {
    double beta_min = 0.05;
    double beta_max = 5.0;
    int points = 200;
    double guard = 1e-3;         // half-width of the skipped band around each critical beta
    std::vector<double> betas;   // overrides the uniform grid when nonempty

    std::vector<double> values() const;
};

struct VerificationReport {
    BetaGrid grid;
    std::vector<Check> checks;

    bool all_passed() const;
    std::size_t count(CheckStatus s) const;
};

// Kernel identities and inequalities: K'(0) < 0 and its companions, the derivative jump at 0,
// root counts, sign tables at the roots, and the two quadrature identities.
VerificationReport check_lemmas(const BetaGrid& grid = {});

// Numerically supported hypotheses: monotone angles and their ordering per band, uniqueness of
// alpha and of the asymmetric angle, the sign change of F'(pi), and the two slope inequalities.
VerificationReport check_assumptions(const BetaGrid& grid = {});

// Both suites in one report.
VerificationReport verify_all(const BetaGrid& grid = {});

}  // namespace logspiral
