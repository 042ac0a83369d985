#include "logspiral/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "logspiral/errors.hpp"

namespace logspiral {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();
const std::string id_p = "(1,pi)";
const std::string id_a = "(Rbar,thetabar)";
const std::string id_am = "(1/Rbar,2pi-thetabar)";

int sgn(double x) { return x > 0.0 ? 1 : -1; }

void append_note(std::string& note, std::string_view more) {
    if (!note.empty()) note += "; ";
    note += more;
}

}  // namespace

std::string_view case_name(CaseId c) {
    switch (c) {
        case CaseId::c1: return "1";
        case CaseId::c2: return "2";
        case CaseId::c2p: return "2'";
        case CaseId::c3: return "3";
        case CaseId::c3p: return "3'";
        case CaseId::c4: return "4";
        case CaseId::c5: return "5";
        case CaseId::c6: return "6";
        case CaseId::c7: return "7";
        case CaseId::c7p: return "7'";
        case CaseId::c8: return "8";
        case CaseId::c8p: return "8'";
        case CaseId::c9: return "9";
        case CaseId::c10: return "10";
        case CaseId::i1_only: return "i1_only";
        case CaseId::i2_only: return "i2_only";
    }
    return "";
}

bool finite_time(CaseId c) {
    switch (c) {
        case CaseId::c5:
        case CaseId::c6:
        case CaseId::c7:
        case CaseId::c7p:
        case CaseId::c8:
        case CaseId::c8p: return true;
        default: return false;
    }
}

std::string_view rate_kind_name(RateKind k) {
    switch (k) {
        case RateKind::power_t: return "power_t";
        case RateKind::power_tstar: return "power_tstar";
        case RateKind::log_exponent: return "log_exponent";
    }
    return "";
}

Classifier::Classifier(double beta, Controls controls)
    : beta_(beta), p_(std::abs(beta)), lim_(kernel_limits(p_)), ctl_(std::move(controls)) {
    require_away_from(p_.beta(), 1e-4, {Critical::beta0, Critical::beta_star, Critical::beta2, Critical::beta3});
    sol_ = solve_theta_stars(p_);
    eq_ = list_equilibria(p_);
    ctl_.record_steps = false;
    ctl_.output_times.clear();
    ctl_.capture_targets.clear();
    for (const auto& e : eq_) {
        if (!e.location.is_finite()) continue;
        ctl_.capture_targets.push_back(e.location);
        target_ids_.push_back(e.id);
    }
}

const Equilibrium* Classifier::find(const std::string& id) const {
    for (const auto& e : eq_)
        if (e.id == id) return &e;
    return nullptr;
}

BehaviorClass Classifier::classify(double i1, double i2, double theta, Direction dir) const {
    if (!std::isfinite(i1) || !std::isfinite(i2)) throw DomainError("strengths must be finite");
    if (i1 == 0.0 && i2 == 0.0) throw DomainError("I1 and I2 cannot both vanish");
    if (!(theta > 0.0 && theta < two_pi)) throw DomainError("theta must lie in (0, 2pi)");

    if (beta_ > 0.0) {
        return (i1 == 0.0 || i2 == 0.0) ? invariant_line(i1, i2, theta, dir) : classify_positive(i1, i2, theta, dir);
    }
    // beta < 0 is the |beta| system with θ → 2π − θ and time reversed.
    const double th = two_pi - theta;
    const Direction rdir = reversed(dir);
    BehaviorClass b = (i1 == 0.0 || i2 == 0.0) ? invariant_line(i1, i2, th, rdir) : classify_positive(i1, i2, th, rdir);
    b.direction = dir;
    b.destination.theta = two_pi - b.destination.theta;
    if (b.t_star) b.t_star = -*b.t_star;
    for (auto& r : b.rates)
        if (r.kind != RateKind::log_exponent) r.coefficient = -r.coefficient;
    append_note(b.note, "beta < 0: classified as |beta| with theta -> 2pi - theta and time reversed; ids name |beta| angles");
    return b;
}

BehaviorClass Classifier::invariant_line(double i1, double i2, double theta, Direction dir) const {
    const bool i1_only = i2 == 0.0;
    const double a = i1_only ? i1 : i2;
    const double k10 = lim_.k1_zero, k0 = lim_.k0;

    // θ' = 2(K(0) − K(−θ))I1 on I2 = 0 and 2(K(θ) − K(0))I2 on I1 = 0.
    // Zeros are kept with their partner angle on R = 0 so that ids come out symbolic.
    struct Zero {
        double at, partner;
    };
    std::vector<Zero> zeros;
    for (double z : zero_line_angles(sol_)) zeros.push_back(i1_only ? Zero{two_pi - z, z} : Zero{z, z});
    std::sort(zeros.begin(), zeros.end(), [](const Zero& x, const Zero& y) { return x.at < y.at; });
    auto h = [&](double th) {
        return i1_only ? k0 - kernel_closed(p_, two_pi - th).K : kernel_closed(p_, th).K - k0;
    };

    Zero lim{theta, i1_only ? two_pi - theta : theta};
    bool on_zero = false;
    for (const auto& z : zeros)
        if (std::abs(z.at - theta) <= 1e-12) {
            lim = z;
            on_zero = true;
        }
    if (!on_zero) {
        const int eff = sgn(h(theta)) * sgn(a) * direction_sign(dir);
        std::size_t k = 0;
        while (k + 1 < zeros.size() && zeros[k + 1].at < theta) ++k;
        lim = eff > 0 ? zeros[k + 1] : zeros[k];
    }

    BehaviorClass b;
    b.case_id = i1_only ? CaseId::i1_only : CaseId::i2_only;
    b.direction = dir;
    if (i1_only) {
        b.destination = PhasePoint::infinity(sgn(a), lim.at);
        b.destination_id = infinity_id(sol_, sgn(a), lim.partner);
    } else {
        b.destination = PhasePoint::finite(0.0, lim.at);
        b.destination_id = zero_line_id(sol_, lim.partner);
    }
    if (const auto* e = find(b.destination_id)) b.saddle_destined = e->kind == StabilityKind::saddle;

    // I' = 2K'(0)I² ⇒ I(t) = I(0)/(1 − 2K'(0)I(0)t)
    const double coeff = 1.0 / (-2.0 * k10);
    const double ts = 1.0 / (2.0 * k10 * a);
    if (ts * direction_sign(dir) > 0.0) {
        b.t_star = ts;
        b.rates.push_back({i1_only ? "I1" : "I2", RateKind::power_tstar, -1.0, coeff});
    } else {
        b.rates.push_back({i1_only ? "I1" : "I2", RateKind::power_t, -1.0, coeff});
    }
    b.theorem_bullet = 0;
    b.note = "invariant line: closed-form scalar Riccati solution";
    return b;
}

BehaviorClass Classifier::classify_positive(double i1, double i2, double theta, Direction dir) const {
    // Reduce to I2 > 0 through (I1, I2, t) → (−I1, −I2, −t).
    const int s0 = sgn(i2);
    const Direction dred = s0 > 0 ? dir : reversed(dir);
    const double c = std::abs(i2);
    const int d = direction_sign(dred);

    auto resolve = [&](const ReparamTrajectory& tr, std::string_view stage) {
        if (tr.end.event == TerminalEvent::equilibrium_captured || tr.end.event == TerminalEvent::escaped_to_infinity)
            return;
        std::string msg = "trajectory ended without a destination (" + std::string(event_name(tr.end.event)) + ", " +
                          std::string(stage) + ")";
        if (!tr.end.diagnostic.empty()) msg += ": " + tr.end.diagnostic;
        throw UnresolvedError(msg);
    };
    auto target_id = [&](const PhasePoint& q) {
        for (std::size_t i = 0; i < ctl_.capture_targets.size(); ++i) {
            const auto& t = ctl_.capture_targets[i];
            if (t.r == q.r && t.theta == q.theta) return target_ids_[i];
        }
        throw InternalError("captured point is not a listed equilibrium");
    };

    const ReparamTrajectory ta = integrate_reparam(p_, {i1 / i2, theta}, dred, ctl_);
    resolve(ta, "first leg");

    BehaviorClass b;
    b.direction = dir;
    int sigma_map = 0;  // 0: no mirror leg, ±1: sign of the escape
    const ReparamTrajectory* fin = &ta;
    ReparamTrajectory tb;
    int d_fin = d;

    if (ta.end.event == TerminalEvent::equilibrium_captured) {
        const PhasePoint q = *ta.end.captured;
        b.destination = q;
        b.destination_id = target_id(q);
        const std::string& id = b.destination_id;
        if (d > 0) {
            if (id == id_p) b.case_id = CaseId::c1;
            else if (id == id_a) b.case_id = CaseId::c2;
            else if (id == id_am) b.case_id = CaseId::c2p;
            else if (id == "(0,2pi)") b.case_id = CaseId::c3;
            else if (id == "(-1,2pi)") b.case_id = CaseId::c4;
            else throw UnresolvedError("forward orbit captured at " + id + ", outside the long-time table");
        } else {
            if (id == id_p) b.case_id = CaseId::c6;
            else if (id == id_a) b.case_id = CaseId::c7;
            else if (id == id_am) b.case_id = CaseId::c7p;
            else if (q.r == 0.0 && q.theta < two_pi) b.case_id = CaseId::c8;
            else if (id == "(-1,0)") b.case_id = CaseId::c9;
            else throw UnresolvedError("backward orbit captured at " + id + ", outside the long-time table");
        }
    } else {
        // R escaped to ±∞: continue on the swapped system (1/R, 2π − θ), which sees I1 as its second strength.
        const int sigma = ta.end.escape_sign;
        const ReparamState& e = ta.samples.back();
        ReparamState init{1.0 / e.r, std::clamp(two_pi - e.theta, 0.0, two_pi), 0.0, e.log_i2 + std::log(std::abs(e.r)),
                          sigma > 0 ? e.t : -e.t};
        const Direction db = sigma > 0 ? dred : reversed(dred);
        tb = integrate_reparam(p_, init, db, ctl_);
        resolve(tb, "mirrored leg");
        if (tb.end.event != TerminalEvent::equilibrium_captured || tb.end.captured->r != 0.0)
            throw UnresolvedError("mirrored leg did not settle on R = 0");
        const double phi = tb.end.captured->theta;
        b.destination = PhasePoint::infinity(sigma, two_pi - phi);
        b.destination_id = infinity_id(sol_, sigma, phi);
        sigma_map = sigma;
        fin = &tb;
        d_fin = direction_sign(db);
        if (sigma > 0) {
            if (d > 0 && phi == two_pi) b.case_id = CaseId::c3p;
            else if (d < 0) b.case_id = CaseId::c8p;
            else throw UnresolvedError("forward orbit reached " + b.destination_id + ", outside the long-time table");
        } else {
            if (d > 0) b.case_id = CaseId::c5;
            else if (phi == two_pi) b.case_id = CaseId::c10;
            else throw UnresolvedError("backward orbit reached " + b.destination_id + ", outside the long-time table");
        }
    }
    if (const auto* eq = find(b.destination_id)) b.saddle_destined = eq->kind == StabilityKind::saddle;

    // Tail of the time quadrature past the capture: log I2 grows linearly with slope λ.
    const PhasePoint q = *fin->end.captured;
    const ReparamState& last = fin->samples.back();
    const double k10 = lim_.k1_zero;
    const double lambda = 2.0 * k10 + 2.0 * kernel_closed(p_, two_pi - q.theta).K1 * q.r;
    const bool finite = d_fin * lambda > 0.0;
    if (finite != finite_time(b.case_id))
        throw InternalError("time behavior of case " + std::string(case_name(b.case_id)) +
                            " disagrees with the exponential tail");
    const int eps = s0 * (sigma_map == 0 ? 1 : sigma_map);
    if (finite) b.t_star = eps * (last.t + std::exp(-last.log_i2) / lambda) / c;
    if (ta.time_saturated || tb.time_saturated) append_note(b.note, "time quadrature saturated");

    // Rates in I ≈ a/(t − t*) form are invariant under the reductions, so no sign bookkeeping is needed.
    const RateKind kind = finite ? RateKind::power_tstar : RateKind::power_t;
    const double a = 1.0 / (-lambda);
    const std::string q2 = sigma_map == 0 ? "I2" : "I1";
    const std::string q1 = sigma_map == 0 ? "I1" : "I2";
    b.rates.push_back({q2, kind, -1.0, a});
    double log_exp = nan;
    if (q.r != 0.0) {
        b.rates.push_back({q1, kind, -1.0, q.r * a});
    } else {
        log_exp = -kernel_closed(p_, q.theta).K1 / k10;
        b.rates.push_back({q1, RateKind::log_exponent, log_exp, nan});
    }
    std::sort(b.rates.begin(), b.rates.end(), [](const RateTerm& x, const RateTerm& y) { return x.quantity < y.quantity; });

    if (!finite) {
        b.theorem_bullet = std::isnan(log_exp) ? 1 : (log_exp < -1.0 ? 2 : 0);
    } else if (std::isnan(log_exp)) {
        b.theorem_bullet = 4;
    } else if (log_exp > 0.0) {
        b.theorem_bullet = 3;
    } else if (log_exp > -1.0) {
        b.theorem_bullet = 5;
    }
    const bool root_limit = b.destination.theta > 0.0 && b.destination.theta < two_pi;
    if ((b.case_id == CaseId::c5 || b.case_id == CaseId::c8 || b.case_id == CaseId::c8p) && root_limit)
        append_note(b.note, "limit angle theta0 taken as a root of K(theta0) = K(0)");
    if (s0 < 0) append_note(b.note, "I2 < 0: case read through (-I1, -I2, theta) with time reversed");
    return b;
}

BehaviorClass classify_behavior(const SpiralParams& p, double i1, double i2, double theta, Direction dir) {
    return Classifier(p.beta()).classify(i1, i2, theta, dir);
}

bool HeteroclinicGraph::has_edge(std::string_view from, std::string_view to) const {
    return std::any_of(edges.begin(), edges.end(), [&](const auto& e) { return e.first == from && e.second == to; });
}

std::vector<std::string> HeteroclinicGraph::successors(std::string_view id) const {
    std::vector<std::string> out;
    for (const auto& e : edges)
        if (e.first == id) out.push_back(e.second);
    return out;
}

std::vector<std::string> HeteroclinicGraph::predecessors(std::string_view id) const {
    std::vector<std::string> out;
    for (const auto& e : edges)
        if (e.second == id) out.push_back(e.first);
    return out;
}

HeteroclinicGraph predicted_heteroclinic_graph(const SpiralParams& p) {
    if (!(p.beta() > 0.0)) throw DomainError("the heteroclinic graph is defined for beta > 0");
    require_away_from(p.beta(), 1e-4,
                      {Critical::beta0, Critical::beta1, Critical::beta_star, Critical::beta2, Critical::one,
                       Critical::beta3});
    HeteroclinicGraph g;
    g.beta = p.beta();
    g.band = band_of(p.beta());
    g.nodes = list_equilibria(p);
    const ThetaSolutions sol = solve_theta_stars(p);
    auto edge = [&](std::string a, std::string b) { g.edges.emplace_back(std::move(a), std::move(b)); };

    // R = 0 carries θ' = 2(K(θ) − K(0)); R = +∞ mirrors it, R = −∞ mirrors it reversed.
    const std::vector<double> zl = zero_line_angles(sol);
    for (std::size_t i = 0; i + 1 < zl.size(); ++i) {
        const double mid = 0.5 * (zl[i] + zl[i + 1]);
        const bool up = kernel_closed(p, mid).K > kernel_limits(p).k0;
        const double from = up ? zl[i] : zl[i + 1], to = up ? zl[i + 1] : zl[i];
        edge(zero_line_id(sol, from), zero_line_id(sol, to));
        edge(infinity_id(sol, 1, from), infinity_id(sol, 1, to));
        edge(infinity_id(sol, -1, to), infinity_id(sol, -1, from));
    }
    // θ = 0 and θ = 2π: R' = ±(R² + R)/(1 + β²)
    edge("(0,0)", "(+inf,0)");
    edge("(0,0)", "(-1,0)");
    edge("(-inf,0)", "(-1,0)");
    edge("(+inf,2pi)", "(0,2pi)");
    edge("(-1,2pi)", "(0,2pi)");
    edge("(-1,2pi)", "(-inf,2pi)");

    auto Z = [&](double th) { return zero_line_id(sol, th); };
    auto Pinf = [&](double th) { return infinity_id(sol, 1, th); };
    auto Minf = [&](double th) { return infinity_id(sol, -1, th); };
    const std::string Z2pi = "(0,2pi)", Pinf0 = "(+inf,0)";

    switch (g.band) {
        case Band::below_beta0:
        case Band::beta0_beta1: {
            const double t1 = g.band == Band::below_beta0 ? *sol.theta1 : 0.0;
            const double t2 = *sol.theta2, t3 = *sol.theta3;
            edge(Z(t1), id_a);
            edge(Pinf(t3), id_a);
            edge(id_a, Pinf0);
            edge(id_a, id_p);
            edge(Pinf(t1), id_am);
            edge(Z(t3), id_am);
            edge(id_am, id_p);
            edge(id_am, Z2pi);
            edge(Z(t2), id_p);
            edge(Z(t2), Minf(t3));
            edge(Pinf(t2), id_p);
            edge(Z(t3), Minf(t2));
            edge("(-1,0)", Minf(t3));
            edge(Z(t3), "(-1,2pi)");
            break;
        }
        case Band::beta1_star: {
            const double t2 = *sol.theta2, t3 = *sol.theta3;
            edge(Z(t3), id_a);
            edge(Pinf(t3), id_a);
            edge(Z(t3), id_am);
            edge(Pinf(t3), id_am);
            edge(id_a, Pinf0);
            edge(id_a, id_p);
            edge(id_am, id_p);
            edge(id_am, Z2pi);
            edge(Z(t2), Pinf0);
            edge(Z(t2), Minf(t3));
            edge(Pinf(t2), Z2pi);
            edge(Z(t3), Minf(t2));
            edge("(-1,0)", Minf(t3));
            edge(Z(t3), "(-1,2pi)");
            break;
        }
        case Band::star_beta2: {
            const double t2 = *sol.theta2, t3 = *sol.theta3;
            edge(Z(t3), id_p);
            edge(Pinf(t3), id_p);
            edge(id_p, Pinf0);
            edge(id_p, Z2pi);
            edge(Z(t2), Pinf0);
            edge(Z(t2), Minf(t3));
            edge(Pinf(t2), Z2pi);
            edge(Z(t3), Minf(t2));
            edge("(-1,0)", Minf(t3));
            edge(Z(t3), "(-1,2pi)");
            break;
        }
        case Band::beta2_one:
        case Band::one_beta3: {
            const double t3 = *sol.theta3;
            edge(Z(t3), id_p);
            edge(Pinf(t3), id_p);
            edge(id_p, Pinf0);
            edge(id_p, Z2pi);
            edge("(-1,0)", Minf(t3));
            edge(Z(t3), "(-1,2pi)");
            break;
        }
        case Band::above_beta3:
            edge("(0,0)", id_p);
            edge("(+inf,2pi)", id_p);
            edge(id_p, Pinf0);
            edge(id_p, Z2pi);
            edge("(-1,0)", "(-inf,2pi)");
            edge("(0,0)", "(-1,2pi)");
            break;
    }
    return g;
}

BasinSweep basin_sweep(const SpiralParams& p, const GridSpec& grid, Direction dir) {
    if (grid.n_a < 2 || grid.n_theta < 2) throw DomainError("grid needs at least 2 points per axis");
    if (!(grid.eps > 0.0 && grid.eps < std::numbers::pi) || !(grid.a_max > 0.0))
        throw DomainError("grid needs 0 < eps < pi and a_max > 0");
    const Classifier cl(p.beta());
    BasinSweep out;
    out.grid = grid;
    out.direction = dir;
    auto theta_at = [&](int j) { return grid.eps + (two_pi - 2.0 * grid.eps) * j / (grid.n_theta - 1); };
    auto label = [&](double i1, double i2, double th, double coord, int sheet) {
        BasinCell cell{coord, th, sheet, "unresolved", ""};
        try {
            const BehaviorClass b = cl.classify(i1, i2, th, dir);
            cell.destination_id = b.destination_id;
            cell.case_id = std::string(case_name(b.case_id));
        } catch (const UnresolvedError&) {
            ++out.unresolved;
        } catch (const IntegrationError&) {
            ++out.unresolved;
        }
        out.cells.push_back(std::move(cell));
    };
    for (int sheet : {1, -1})
        for (int i = 0; i < grid.n_a; ++i) {
            const double a = -grid.a_max + 2.0 * grid.a_max * i / (grid.n_a - 1);
            for (int j = 0; j < grid.n_theta; ++j) label(sheet * std::exp(a), 1.0, theta_at(j), a, sheet);
        }
    for (int j = 0; j < grid.n_theta; ++j) label(0.0, 1.0, theta_at(j), 0.0, 0);
    return out;
}

RateTable asymptotic_rate_table(const SpiralParams& p) {
    if (!(p.beta() > 0.0)) throw DomainError("rate table is defined for beta > 0");
    const KernelLimits lim = kernel_limits(p);
    const double k10 = lim.k1_zero;
    const ThetaSolutions sol = solve_theta_stars(p);
    RateTable t;
    t.c1 = lim.k1_minus0 / k10;
    if (sol.theta2) t.c2 = eval_kernel(p, *sol.theta2).K1 / k10;
    for (const auto& [name, th] : {std::pair{"theta1", sol.theta1}, std::pair{"theta3", sol.theta3}}) {
        if (!th) continue;
        const double k1 = eval_kernel(p, *th).K1;
        if (k1 > 0.0) t.decay_exponents.emplace_back(name, -k1 / k10);
    }
    t.case1_coefficient = 1.0 / (-2.0 * (k10 + eval_kernel(p, std::numbers::pi).K1));
    if (p.beta() < critical_constants().beta_star - 1e-6) {
        if (const auto fp = solve_asymmetric_fixed_point(p)) {
            const double kp = eval_kernel(p, fp->theta_bar).K1, km = eval_kernel_reflected(p, fp->theta_bar).K1;
            const double den = -2.0 * (kp * km - k10 * k10);
            t.case2_coefficients = std::pair{(kp - k10) / den, (km - k10) / den};
        }
    }
    t.case4_coefficients = {1.0 / (2.0 * (k10 - lim.k1_plus0)), 1.0 / (-2.0 * (k10 - lim.k1_plus0))};
    t.case9_coefficients = {1.0 / (2.0 * (k10 - lim.k1_minus0)), 1.0 / (-2.0 * (k10 - lim.k1_minus0))};
    return t;
}

}  // namespace logspiral
