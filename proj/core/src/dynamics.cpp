#include "logspiral/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "dopri5.hpp"
#include "logspiral/criticality.hpp"
#include "logspiral/errors.hpp"

namespace logspiral {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();
// Beyond this log I2 the reciprocal 1/I2 is treated as infinite.
constexpr double log_i2_floor = -690.0;
constexpr double boundary_slack = 1e-9;

struct KPair {
    KernelValues t, m;
};

// Kernel at θ and −θ with θ clamped to [0, 2π]; the ends pick up the one-sided limits.
KPair kpair(const SpiralParams& p, double theta) {
    const double th = std::clamp(theta, 0.0, two_pi);
    return {kernel_closed(p, th), kernel_closed(p, two_pi - th)};
}

void require_open_angle(double theta) {
    if (!(theta > 0.0 && theta < two_pi))
        throw DomainError("theta must lie in (0, 2pi), got " + std::to_string(theta));
}

std::array<double, 2> planar(const KPair& k, const KernelLimits& lim, double r) {
    const double k10 = lim.k1_zero, k0 = lim.k0;
    return {2.0 * (k10 - k.m.K1) * r * r + 2.0 * (k.t.K1 - k10) * r,
            2.0 * (k0 - k.m.K) * r + 2.0 * (k.t.K - k0)};
}

std::vector<double> sorted_outputs(std::vector<double> ts, int dir) {
    std::sort(ts.begin(), ts.end());
    if (dir < 0) std::reverse(ts.begin(), ts.end());
    return ts;
}

std::string describe(double t, const double* y, std::size_t n) {
    std::ostringstream os;
    os.precision(17);
    os << "t=" << t << " state=(";
    for (std::size_t i = 0; i < n; ++i) os << (i ? "," : "") << y[i];
    os << ")";
    return os.str();
}

enum class Mode { linear, log_pos, log_neg };

}  // namespace

std::string_view direction_name(Direction d) { return d == Direction::forward ? "forward" : "backward"; }

std::string_view event_name(TerminalEvent e) {
    switch (e) {
        case TerminalEvent::horizon_reached: return "horizon_reached";
        case TerminalEvent::equilibrium_captured: return "equilibrium_captured";
        case TerminalEvent::escaped_to_infinity: return "escaped_to_infinity";
        case TerminalEvent::blowup_detected: return "blowup_detected";
        case TerminalEvent::boundary_reached: return "boundary_reached";
    }
    return "";
}

std::array<double, 3> vector_field_original(const SpiralParams& p, const SpiralState& s) {
    require_open_angle(s.theta);
    const auto k = kpair(p, s.theta);
    const auto lim = kernel_limits(p);
    const double k10 = lim.k1_zero, k0 = lim.k0;
    return {2.0 * k10 * s.i1 * s.i1 + 2.0 * k.t.K1 * s.i1 * s.i2,
            2.0 * k10 * s.i2 * s.i2 + 2.0 * k.m.K1 * s.i1 * s.i2,
            2.0 * (k0 - k.m.K) * s.i1 + 2.0 * (k.t.K - k0) * s.i2};
}

std::array<double, 2> vector_field_reparam(const SpiralParams& p, double r, double theta) {
    require_open_angle(theta);
    return planar(kpair(p, theta), kernel_limits(p), r);
}

std::array<double, 2> vector_field_log(const SpiralParams& p, double a, double theta, int sign) {
    require_open_angle(theta);
    if (sign != 1 && sign != -1) throw DomainError("sign must be +1 or -1");
    const auto k = kpair(p, theta);
    const auto lim = kernel_limits(p);
    const double e = sign * std::exp(a);
    const double k10 = lim.k1_zero, k0 = lim.k0;
    return {2.0 * (k10 - k.m.K1) * e + 2.0 * (k.t.K1 - k10), 2.0 * (k0 - k.m.K) * e + 2.0 * (k.t.K - k0)};
}

std::vector<PhasePoint> default_capture_targets(const SpiralParams& p) {
    if (p.beta() < 0.0) {
        auto pts = default_capture_targets(SpiralParams(-p.beta()));
        for (auto& q : pts) q.theta = two_pi - q.theta;
        return pts;
    }
    std::vector<PhasePoint> pts{PhasePoint::finite(1.0, std::numbers::pi), PhasePoint::finite(-1.0, 0.0),
                                PhasePoint::finite(-1.0, two_pi)};
    for (double th : zero_line_angles(detail::theta_stars_unguarded(p))) pts.push_back(PhasePoint::finite(0.0, th));
    if (p.beta() < critical_constants().beta_star - 1e-6) {
        try {
            if (auto fp = solve_asymmetric_fixed_point(p)) {
                pts.push_back(PhasePoint::finite(fp->r_bar, fp->theta_bar));
                pts.push_back(PhasePoint::finite(1.0 / fp->r_bar, two_pi - fp->theta_bar));
            }
        } catch (const NotFoundError&) {
        }
    }
    return pts;
}

ReparamTrajectory integrate_reparam(const SpiralParams& p, const ReparamState& init, Direction direction,
                                    const Controls& ctl, Chart chart) {
    // The boundary lines are invariant, so a start on them is admissible here.
    if (!(init.theta >= 0.0 && init.theta <= two_pi))
        throw DomainError("theta must lie in [0, 2pi], got " + std::to_string(init.theta));
    if (!std::isfinite(init.r)) throw DomainError("r must be finite");
    if (chart == Chart::log && init.r == 0.0) throw DomainError("log chart needs r != 0");

    const int dir = direction_sign(direction);
    const auto lim = kernel_limits(p);
    const double k10 = lim.k1_zero;
    const std::vector<PhasePoint> targets =
        ctl.capture_targets.empty() ? default_capture_targets(p) : ctl.capture_targets;
    const double log_esc = std::log(ctl.escape_radius);
    const double log_back = std::log(8.0);

    Mode mode = Mode::linear;
    auto want_log = [&](double r) {
        if (chart == Chart::linear || r == 0.0) return false;
        if (chart == Chart::log) return true;
        return std::abs(r) > 10.0 || std::abs(r) < 0.1;
    };
    using State = std::array<double, 4>;  // u (R or A), θ, log I2, t
    auto to_state = [&](double r, double th, double L, double T) -> State {
        if (want_log(r)) {
            mode = r > 0.0 ? Mode::log_pos : Mode::log_neg;
            return {std::log(std::abs(r)), th, L, T};
        }
        mode = Mode::linear;
        return {r, th, L, T};
    };
    auto r_of = [&](const State& y) {
        switch (mode) {
            case Mode::log_pos: return std::exp(y[0]);
            case Mode::log_neg: return -std::exp(y[0]);
            default: return y[0];
        }
    };

    auto rhs = [&](double, const State& y, State& dy) {
        const auto k = kpair(p, y[1]);
        const double r = r_of(y);
        const auto f = planar(k, lim, r);
        if (mode == Mode::linear) {
            dy[0] = f[0];
        } else {
            dy[0] = 2.0 * (k10 - k.m.K1) * r + 2.0 * (k.t.K1 - k10);
        }
        dy[1] = f[1];
        dy[2] = 2.0 * k10 + 2.0 * k.m.K1 * r;
        dy[3] = y[2] < log_i2_floor ? 0.0 : std::exp(-y[2]);
    };

    ReparamTrajectory out;
    out.direction = direction;
    out.chart = chart;
    auto push = [&](double s, const State& y) {
        if (!out.samples.empty() && out.samples.back().s == s) return;
        out.samples.push_back({r_of(y), y[1], s, y[2], y[3]});
        if (y[2] < log_i2_floor) out.time_saturated = true;
    };

    detail::Dopri5<4> solver(rhs, ctl.rel_tol, ctl.abs_tol);
    State y0 = to_state(init.r, init.theta, init.log_i2, init.t);
    solver.start(init.s, y0, dir, ctl.initial_step);
    push(init.s, y0);

    const double s_end = init.s + dir * ctl.max_time;
    const std::vector<double> outs = sorted_outputs(ctl.output_times, dir);
    std::size_t next_out = 0;
    while (next_out < outs.size() && dir * (outs[next_out] - init.s) <= 0.0) ++next_out;

    std::size_t last_target = std::numeric_limits<std::size_t>::max();
    std::vector<double> hist;

    enum class Ev { none, leave_high, leave_low, come_back, escape, boundary_low, boundary_high };

    for (;;) {
        if (solver.accepted() >= ctl.max_steps) {
            out.end.event = TerminalEvent::horizon_reached;
            out.end.diagnostic = "step budget exhausted";
            break;
        }
        const auto st = solver.step(s_end);
        if (st != detail::Dopri5<4>::Status::ok) {
            throw IntegrationError(std::string(st == detail::Dopri5<4>::Status::underflow ? "step-size underflow"
                                                                                            : "non-finite state") +
                                   " in planar flow at " + describe(solver.t(), solver.y().data(), 4));
        }

        // earliest event inside the step
        Ev ev = Ev::none;
        double t_ev = nan;
        auto consider = [&](Ev kind, auto g) {
            const double tc = detail::locate_crossing(solver, g, ctl.event_tol);
            if (std::isnan(tc)) return;
            if (ev == Ev::none || dir * (tc - t_ev) < 0.0) {
                ev = kind;
                t_ev = tc;
            }
        };
        if (mode == Mode::linear) {
            if (chart == Chart::automatic && solver.y_old()[0] != 0.0) {
                consider(Ev::leave_high, [](const State& y) { return std::abs(y[0]) - 10.0; });
                consider(Ev::leave_low, [](const State& y) { return 0.1 - std::abs(y[0]); });
            } else {
                consider(Ev::escape, [&](const State& y) { return std::abs(y[0]) - ctl.escape_radius; });
            }
        } else {
            consider(Ev::escape, [&](const State& y) { return y[0] - log_esc; });
            if (chart == Chart::automatic)
                consider(Ev::come_back, [&](const State& y) { return log_back - std::abs(y[0]); });
        }
        consider(Ev::boundary_low, [](const State& y) { return -y[1] - boundary_slack; });
        consider(Ev::boundary_high, [](const State& y) { return y[1] - two_pi - boundary_slack; });

        // scheduled outputs up to the event (or the step end)
        const double t_stop = ev == Ev::none ? solver.t() : t_ev;
        while (next_out < outs.size() && dir * (outs[next_out] - t_stop) <= 0.0) {
            push(outs[next_out], solver.dense(outs[next_out]));
            ++next_out;
        }

        if (ev != Ev::none) {
            const State ye = solver.dense(t_ev);
            if (ev == Ev::leave_high || ev == Ev::leave_low || ev == Ev::come_back) {
                const double r = r_of(ye);
                if (outs.empty() && ctl.record_steps) push(t_ev, ye);
                const double h = solver.step_size();
                // Force the switch: at the crossing the chart test sits exactly on its threshold.
                State yn;
                if (ev == Ev::come_back) {
                    mode = Mode::linear;
                    yn = {r, ye[1], ye[2], ye[3]};
                } else {
                    mode = r > 0.0 ? Mode::log_pos : Mode::log_neg;
                    yn = {std::log(std::abs(r)), ye[1], ye[2], ye[3]};
                }
                solver.start(t_ev, yn, dir, h);
                continue;
            }
            push(t_ev, ye);
            if (ev == Ev::escape) {
                out.end.event = TerminalEvent::escaped_to_infinity;
                out.end.escape_sign = r_of(ye) > 0.0 ? 1 : -1;
            } else {
                out.end.event = TerminalEvent::boundary_reached;
                out.end.diagnostic = ev == Ev::boundary_low ? "theta crossed 0" : "theta crossed 2pi";
            }
            break;
        }

        if (outs.empty() && ctl.record_steps) push(solver.t(), solver.y());

        // capture: close to a target with the distance shrinking over the last capture_steps steps
        const double r = r_of(solver.y()), th = solver.y()[1];
        std::size_t best = 0;
        double dbest = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < targets.size(); ++i) {
            const double d = std::hypot(r - targets[i].r, th - targets[i].theta);
            if (d < dbest) {
                dbest = d;
                best = i;
            }
        }
        if (best != last_target) {
            hist.clear();
            last_target = best;
        }
        hist.push_back(dbest);
        if (hist.size() > std::size_t(ctl.capture_steps) + 1) hist.erase(hist.begin());
        if (dbest < ctl.capture_radius && hist.size() == std::size_t(ctl.capture_steps) + 1) {
            bool inward = true;
            for (std::size_t i = 1; i < hist.size(); ++i) inward = inward && hist[i] <= hist[i - 1];
            if (inward) {
                if (!outs.empty() || !ctl.record_steps) push(solver.t(), solver.y());
                out.end.event = TerminalEvent::equilibrium_captured;
                out.end.captured = targets[best];
                break;
            }
        }

        if (solver.t() == s_end) {
            if (!outs.empty() || !ctl.record_steps) push(solver.t(), solver.y());
            out.end.event = TerminalEvent::horizon_reached;
            break;
        }
    }
    out.end.accepted_steps = solver.accepted();
    out.end.rejected_steps = solver.rejected();
    return out;
}

OriginalTrajectory integrate_original(const SpiralParams& p, const SpiralState& init, Direction direction,
                                      const Controls& ctl) {
    require_open_angle(init.theta);
    if (!std::isfinite(init.i1) || !std::isfinite(init.i2)) throw DomainError("strengths must be finite");

    const int dir = direction_sign(direction);
    const auto lim = kernel_limits(p);
    const double k10 = lim.k1_zero, k0 = lim.k0;
    using State = std::array<double, 3>;
    auto rhs = [&](double, const State& y, State& dy) {
        const auto k = kpair(p, y[2]);
        dy[0] = 2.0 * k10 * y[0] * y[0] + 2.0 * k.t.K1 * y[0] * y[1];
        dy[1] = 2.0 * k10 * y[1] * y[1] + 2.0 * k.m.K1 * y[0] * y[1];
        dy[2] = 2.0 * (k0 - k.m.K) * y[0] + 2.0 * (k.t.K - k0) * y[1];
    };

    OriginalTrajectory out;
    out.direction = direction;
    auto push = [&](double t, const State& y) {
        if (!out.samples.empty() && out.samples.back().t == t) return;
        out.samples.push_back({y[0], y[1], y[2], t});
    };

    detail::Dopri5<3> solver(rhs, ctl.rel_tol, ctl.abs_tol);
    const State y0{init.i1, init.i2, init.theta};
    solver.start(init.t, y0, dir, ctl.initial_step);
    push(init.t, y0);

    const double t_end = init.t + dir * ctl.max_time;
    const std::vector<double> outs = sorted_outputs(ctl.output_times, dir);
    std::size_t next_out = 0;
    while (next_out < outs.size() && dir * (outs[next_out] - init.t) <= 0.0) ++next_out;

    enum class Ev { none, blowup, boundary_low, boundary_high };
    for (;;) {
        if (solver.accepted() >= ctl.max_steps) {
            out.end.event = TerminalEvent::horizon_reached;
            out.end.diagnostic = "step budget exhausted";
            break;
        }
        const auto st = solver.step(t_end);
        if (st != detail::Dopri5<3>::Status::ok) {
            throw IntegrationError(std::string(st == detail::Dopri5<3>::Status::underflow ? "step-size underflow"
                                                                                            : "non-finite state") +
                                   " in original system at " + describe(solver.t(), solver.y().data(), 3));
        }
        Ev ev = Ev::none;
        double t_ev = nan;
        auto consider = [&](Ev kind, auto g) {
            const double tc = detail::locate_crossing(solver, g, ctl.event_tol * std::max(1.0, std::abs(solver.t())));
            if (std::isnan(tc)) return;
            if (ev == Ev::none || dir * (tc - t_ev) < 0.0) {
                ev = kind;
                t_ev = tc;
            }
        };
        consider(Ev::blowup,
                 [&](const State& y) { return std::max(std::abs(y[0]), std::abs(y[1])) - ctl.blowup_threshold; });
        consider(Ev::boundary_low, [](const State& y) { return -y[2] - boundary_slack; });
        consider(Ev::boundary_high, [](const State& y) { return y[2] - two_pi - boundary_slack; });

        const double t_stop = ev == Ev::none ? solver.t() : t_ev;
        while (next_out < outs.size() && dir * (outs[next_out] - t_stop) <= 0.0) {
            push(outs[next_out], solver.dense(outs[next_out]));
            ++next_out;
        }
        if (ev != Ev::none) {
            const State ye = solver.dense(t_ev);
            push(t_ev, ye);
            if (ev == Ev::blowup) {
                out.end.event = TerminalEvent::blowup_detected;
                State dy;
                rhs(t_ev, ye, dy);
                // 1/I is asymptotically linear in t: extrapolate its zero.
                const int j = std::abs(ye[0]) >= std::abs(ye[1]) ? 0 : 1;
                out.end.t_star = t_ev + ye[j] / dy[j];
            } else {
                out.end.event = TerminalEvent::boundary_reached;
                out.end.diagnostic = ev == Ev::boundary_low ? "theta crossed 0" : "theta crossed 2pi";
            }
            break;
        }
        if (outs.empty() && ctl.record_steps) push(solver.t(), solver.y());
        if (solver.t() == t_end) {
            if (!outs.empty() || !ctl.record_steps) push(solver.t(), solver.y());
            out.end.event = TerminalEvent::horizon_reached;
            break;
        }
    }
    out.end.accepted_steps = solver.accepted();
    out.end.rejected_steps = solver.rejected();
    return out;
}

OriginalTrajectory recover_original(const SpiralParams&, const ReparamTrajectory& traj, double i2_at_0) {
    if (!(i2_at_0 > 0.0) || !std::isfinite(i2_at_0))
        throw DomainError("recover_original needs I2(0) > 0; route I2 < 0 through the negation symmetry first");
    OriginalTrajectory out;
    out.direction = traj.direction;
    out.end = traj.end;
    if (traj.time_saturated) {
        if (!out.end.diagnostic.empty()) out.end.diagnostic += "; ";
        out.end.diagnostic += "1/I2 overflowed: original time saturates (t -> infinity)";
    }
    out.samples.reserve(traj.samples.size());
    for (const auto& s : traj.samples) {
        const double i2 = i2_at_0 * std::exp(s.log_i2);
        const double t = s.log_i2 < log_i2_floor ? std::copysign(std::numeric_limits<double>::infinity(), s.t)
                                                 : s.t / i2_at_0;
        out.samples.push_back({s.r * i2, i2, s.theta, t});
    }
    return out;
}

SpiralState apply_symmetry(const SpiralState& s, Symmetry which) {
    if (which == Symmetry::negate_reverse) return {-s.i1, -s.i2, s.theta, -s.t};
    return {s.i2, s.i1, two_pi - s.theta, s.t};
}

ReparamState apply_symmetry(const ReparamState& s, Symmetry which) {
    if (which == Symmetry::negate_reverse) return {s.r, s.theta, -s.s, s.log_i2, -s.t};
    if (s.r == 0.0) throw DomainError("swap symmetry is undefined at r = 0");
    // the new second strength is I1 = R·I2
    return {1.0 / s.r, two_pi - s.theta, s.s, s.log_i2 + std::log(std::abs(s.r)), s.t};
}

OriginalTrajectory apply_symmetry(const OriginalTrajectory& tr, Symmetry which) {
    OriginalTrajectory out = tr;
    for (auto& s : out.samples) s = apply_symmetry(s, which);
    if (which == Symmetry::negate_reverse) out.direction = reversed(tr.direction);
    return out;
}

ReparamTrajectory apply_symmetry(const ReparamTrajectory& tr, Symmetry which) {
    ReparamTrajectory out = tr;
    for (auto& s : out.samples) s = apply_symmetry(s, which);
    if (which == Symmetry::negate_reverse) {
        out.direction = reversed(tr.direction);
    } else if (!tr.samples.empty() && tr.samples.front().r < 0.0) {
        // on the R < 0 sheet the mirrored orbit runs the other way
        out.direction = reversed(tr.direction);
    }
    return out;
}

}  // namespace logspiral
