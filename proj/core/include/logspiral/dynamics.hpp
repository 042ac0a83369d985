#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "logspiral/equilibria.hpp"
#include "logspiral/kernel.hpp"

namespace logspiral {

struct SpiralState {
    double i1;
    double i2;
    double theta;
    double t = 0.0;
};

// Planar state of the reparametrized flow. log_i2 and t carry the quadratures of
// (log I2)' = 2K'(0) + 2K'(−θ)R and t' = 1/I2 along the orbit, both started from 0
// (i.e. normalized to I2(0) = 1); integrate_reparam fills them in.
struct ReparamState {
    double r;
    double theta;
    double s = 0.0;
    double log_i2 = 0.0;
    double t = 0.0;
};

enum class Direction { forward, backward };
inline int direction_sign(Direction d) { return d == Direction::forward ? 1 : -1; }
inline Direction reversed(Direction d) { return d == Direction::forward ? Direction::backward : Direction::forward; }
std::string_view direction_name(Direction d);

// Which planar system carries the integration: the linear (R, θ) field, the
// log-scaled fields in A = log|R|, or automatic switching between them.
enum class Chart { automatic, linear, log };

enum class TerminalEvent { horizon_reached, equilibrium_captured, escaped_to_infinity, blowup_detected, boundary_reached };
std::string_view event_name(TerminalEvent e);

struct Controls {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    double max_time = 1e5;  // pseudo-time span for the planar flow, time span for the original system
    double escape_radius = 1e6;
    double capture_radius = 1e-6;
    int capture_steps = 10;
    double blowup_threshold = 1e9;
    double initial_step = 0.0;  // 0 selects automatically
    std::size_t max_steps = 2'000'000;
    double event_tol = 1e-10;
    // When nonempty, samples are taken only at these times (plus the initial and final state).
    std::vector<double> output_times;
    bool record_steps = true;
    // Finite points at which the planar flow may be captured; empty means the equilibria of beta.
    std::vector<PhasePoint> capture_targets;
};

struct Termination {
    TerminalEvent event = TerminalEvent::horizon_reached;
    std::optional<PhasePoint> captured;
    int escape_sign = 0;
    std::optional<double> t_star;  // blowup: reciprocal extrapolation of the dominant strength
    std::string diagnostic;
    std::size_t accepted_steps = 0;
    std::size_t rejected_steps = 0;
};

struct OriginalTrajectory {
    std::vector<SpiralState> samples;
    Direction direction = Direction::forward;
    Termination end;
};

struct ReparamTrajectory {
    std::vector<ReparamState> samples;
    Direction direction = Direction::forward;
    Chart chart = Chart::automatic;
    Termination end;
    bool time_saturated = false;  // 1/I2 overflowed; t is only a lower bound afterwards
};

std::array<double, 3> vector_field_original(const SpiralParams& p, const SpiralState& s);
std::array<double, 2> vector_field_reparam(const SpiralParams& p, double r, double theta);
// sign = +1 selects g1 (R > 0), sign = −1 selects g2 (R < 0).
std::array<double, 2> vector_field_log(const SpiralParams& p, double a, double theta, int sign);

OriginalTrajectory integrate_original(const SpiralParams& p, const SpiralState& init, Direction dir,
                                      const Controls& ctl = {});
// Accepts θ on the closed interval [0, 2π]; the boundary lines are invariant.
ReparamTrajectory integrate_reparam(const SpiralParams& p, const ReparamState& init, Direction dir,
                                    const Controls& ctl = {}, Chart chart = Chart::automatic);

// I2 = i2_at_0·e^{log_i2}, t = t_rel / i2_at_0, I1 = R·I2. Needs i2_at_0 > 0.
OriginalTrajectory recover_original(const SpiralParams& p, const ReparamTrajectory& traj, double i2_at_0);

enum class Symmetry { negate_reverse, swap };

// negate_reverse: (I1, I2, θ, t) → (−I1, −I2, θ, −t); swap: (I1, I2, θ) → (I2, I1, 2π − θ).
SpiralState apply_symmetry(const SpiralState& s, Symmetry which);
// negate_reverse: same (R, θ), s → −s, t → −t; swap: (R, θ) → (1/R, 2π − θ), undefined at R = 0.
ReparamState apply_symmetry(const ReparamState& s, Symmetry which);
OriginalTrajectory apply_symmetry(const OriginalTrajectory& tr, Symmetry which);
ReparamTrajectory apply_symmetry(const ReparamTrajectory& tr, Symmetry which);

// Finite equilibria used as capture targets (no guard bands; negative beta mirrored).
std::vector<PhasePoint> default_capture_targets(const SpiralParams& p);

}  // namespace logspiral
