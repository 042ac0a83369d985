// Acceptance criteria, one PASS/FAIL line each. `acceptance --criterion N` runs one.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "logspiral/classify.hpp"
#include "logspiral/criticality.hpp"
#include "logspiral/dynamics.hpp"
#include "logspiral/equilibria.hpp"
#include "logspiral/errors.hpp"
#include "logspiral/kernel.hpp"
#include "logspiral/verify.hpp"
#include "seeds.hpp"

#ifdef LOGSPIRAL_ACCEPTANCE_CLI
#include "cli.hpp"
#endif

using namespace logspiral;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
    bool pass = true;
    std::string detail;
};

// Collects failures while keeping a one-line summary.
class Tally {
public:
    void require(bool ok, const std::string& what) {
        ++checked_;
        if (!ok && failures_.size() < 3) failures_.push_back(what);
        failed_ += ok ? 0 : 1;
    }
    Outcome done(const std::string& summary) const {
        std::ostringstream s;
        s << summary << " [" << checked_ - failed_ << "/" << checked_ << " checks]";
        for (const auto& f : failures_) s << "; " << f;
        return {failed_ == 0, s.str()};
    }

private:
    std::size_t checked_ = 0, failed_ = 0;
    std::vector<std::string> failures_;
};

std::string fmt(double x, int digits = 6) {
    std::ostringstream s;
    s.precision(digits);
    s << x;
    return s.str();
}

double rel(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(b), 1e-300); }

Outcome critical_constants_check() {
    const auto c = solve_critical_betas();
    Tally t;
    const std::pair<const char*, std::pair<double, double>> rows[] = {{"beta0", {c.beta0, 0.44}},
                                                                       {"beta1", {c.beta1, 0.57}},
                                                                       {"beta*", {c.beta_star, 0.71}},
                                                                       {"beta2", {c.beta2, 0.87}},
                                                                       {"beta3", {c.beta3, 1.55}}};
    std::string summary;
    for (const auto& [name, v] : rows) {
        t.require(std::fabs(v.first - v.second) <= 0.01, std::string(name) + " = " + fmt(v.first));
        summary += std::string(name) + "=" + fmt(v.first, 10) + " ";
    }
    return t.done(summary);
}

Outcome kernel_identities() {
    Tally t;
    double worst_jump = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double beta = 0.05 + (5.0 - 0.05) * (i + 0.5) / 100.0;
        const auto l = kernel_limits(SpiralParams(beta));
        const double err = std::fabs(l.k1_plus0 - l.k1_minus0 - 1.0 / (1.0 + beta * beta));
        worst_jump = std::max(worst_jump, err);
        t.require(err <= 1e-10, "jump at beta " + fmt(beta));
    }
    // K'(0) = −4β ∫ K'² over (0, 2π), five-point Gauss-Legendre on 256 panels
    static constexpr double x[5] = {0.0, -0.5384693101056831, 0.5384693101056831, -0.9061798459386640, 0.9061798459386640};
    static constexpr double w[5] = {0.5688888888888889, 0.4786286704993665, 0.4786286704993665, 0.2369268850561891,
                                    0.2369268850561891};
    double worst_quad = 0.0;
    for (int i = 0; i < 20; ++i) {
        const double beta = 0.05 + (5.0 - 0.05) * (i + 0.5) / 20.0;
        const SpiralParams p(beta);
        const int panels = 256;
        const double h = two_pi / panels;
        double sum = 0.0;
        for (int k = 0; k < panels; ++k)
            for (int q = 0; q < 5; ++q) {
                const double k1 = eval_kernel(p, h * (k + 0.5 + 0.5 * x[q])).K1;
                sum += 0.5 * h * w[q] * k1 * k1;
            }
        const double err = std::fabs(kernel_limits(p).k1_zero + 4.0 * beta * sum);
        worst_quad = std::max(worst_quad, err);
        t.require(err <= 1e-6, "quadrature at beta " + fmt(beta) + " off by " + fmt(err));
    }
    return t.done("max jump error " + fmt(worst_jump, 3) + ", max quadrature error " + fmt(worst_quad, 3));
}

Outcome solution_counts() {
    Tally t;
    const std::pair<double, std::size_t> rows[] = {{0.3, 3}, {0.6, 2}, {1.2, 1}, {1.8, 0}};
    for (const auto& [beta, n] : rows) {
        const auto got = solve_theta_stars(SpiralParams(beta)).count();
        t.require(got == n, "beta " + fmt(beta) + " has " + std::to_string(got) + " roots");
    }
    const auto s = solve_theta_stars(SpiralParams(1.0));
    const double err = s.theta3 ? std::fabs(*s.theta3 - pi) : INFINITY;
    t.require(err <= 1e-8, "theta3(1) - pi = " + fmt(err));
    return t.done("counts 3/2/1/0, |theta3(1) - pi| = " + fmt(err, 3));
}

Outcome equilibrium_tables() {
    using K = StabilityKind;
    const auto& c = critical_constants();
    Tally t;
    std::size_t notes = 0;
    for (double beta : {0.3, 0.5, 0.63, 0.8, 0.93, 1.2, 1.8}) {
        std::map<std::string, K> expect;
        expect["(1,pi)"] = beta < c.beta_star ? K::attractor : K::saddle;
        if (beta < c.beta_star) expect["(Rbar,thetabar)"] = expect["(1/Rbar,2pi-thetabar)"] = K::saddle;
        expect["(0,2pi)"] = K::attractor;
        if (beta < c.beta3) expect["(0,theta3)"] = K::repeller;
        if (beta < c.beta2) expect["(0,theta2)"] = K::saddle;
        if (beta < c.beta0) expect["(0,theta1)"] = K::repeller;
        expect["(0,0)"] = (beta < c.beta0 || (beta > c.beta2 && beta < c.beta3)) ? K::saddle : K::repeller;
        expect["(-1,0)"] = expect["(-1,2pi)"] = K::saddle;

        std::size_t finite = 0;
        for (const auto& e : list_equilibria(SpiralParams(beta))) {
            if (e.compactified) continue;
            ++finite;
            const auto it = expect.find(e.id);
            t.require(it != expect.end() && it->second == e.kind,
                      "beta " + fmt(beta) + " " + e.id + " is " + std::string(kind_name(e.kind)));
            if (e.id == "(1,pi)" && beta > c.beta_star) {
                t.require(!e.note.empty(), "missing saddle note at beta " + fmt(beta));
                notes += e.note.empty() ? 0 : 1;
            }
        }
        t.require(finite == expect.size(), "beta " + fmt(beta) + " lists " + std::to_string(finite) + " finite points");
    }
    return t.done("7 bands, (1,pi) saddle note on " + std::to_string(notes) + " bands above beta*");
}

Outcome jacobian_cross_checks() {
    Tally t;
    std::string summary;
    for (double beta : {0.3, 0.5, 0.63, 0.8, 1.2, 1.8}) {
        const SpiralParams p(beta);
        const auto j = jacobian_reparam(p, 1.0, pi);
        const double det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        const double e = rel(det, 4.0 * eval_Fprime_pi(p));
        t.require(e <= 1e-6, "(1,pi) det at beta " + fmt(beta) + " rel err " + fmt(e));
    }
    for (double beta : {0.3, 0.63}) {
        const SpiralParams p(beta);
        const auto fp = solve_asymmetric_fixed_point(p);
        t.require(fp.has_value(), "no (Rbar,thetabar) at beta " + fmt(beta));
        if (!fp) continue;
        const auto j = jacobian_log(p, std::log(fp->r_bar), fp->theta_bar, 1);
        const double det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        const double fpr = eval_Fprime(p, fp->theta_bar);
        t.require(det < 0.0, "log det not negative at beta " + fmt(beta));
        const double ratio = det / fpr;
        t.require(rel(ratio, 4.0 * fp->r_bar) <= 1e-6, "det / F'(thetabar) = " + fmt(ratio) + " at beta " + fmt(beta));
        summary += "beta " + fmt(beta) + ": log det " + fmt(det) + " = " + fmt(ratio) + " F'(thetabar); ";
    }
    return t.done(summary + "(1,pi) det = 4F'(pi) on 6 betas");
}

Outcome destination_correctness() {
    const SpiralParams p(fixtures::region_beta);
    const Classifier c(fixtures::region_beta);
    Tally t;
    Controls ctl;
    ctl.record_steps = false;
    for (const auto& s : fixtures::region_seeds) {
        const double r = s.sheet == 0 ? 0.0 : s.sheet * std::exp(s.a);
        const std::string tag = "seed (" + std::to_string(s.sheet) + "," + fmt(s.a) + "," + fmt(s.theta) + ")";
        for (Direction d : {Direction::forward, Direction::backward}) {
            const std::string want = d == Direction::forward ? s.forward : s.backward;
            const auto b = c.classify(r, 1.0, s.theta, d);
            t.require(b.destination_id == want, tag + " " + std::string(direction_name(d)) + " -> " + b.destination_id);
            // planar endpoint independently of the classifier's id bookkeeping
            const auto tr = integrate_reparam(p, {r, s.theta}, d, ctl);
            if (want.rfind("(+inf", 0) == 0 || want.rfind("(-inf", 0) == 0) {
                const int sign = want[1] == '+' ? 1 : -1;
                t.require(tr.end.event == TerminalEvent::escaped_to_infinity && tr.end.escape_sign == sign,
                          tag + " " + std::string(direction_name(d)) + " did not escape");
            } else {
                t.require(tr.end.event == TerminalEvent::equilibrium_captured && tr.end.captured &&
                              tr.end.captured->r == b.destination.r && tr.end.captured->theta == b.destination.theta,
                          tag + " " + std::string(direction_name(d)) + " not captured at " + want);
            }
        }
    }
    return t.done(std::to_string(fixtures::region_seeds.size()) + " seeds at beta 0.3, forward and backward");
}

// a in I ≈ a/(t − t0) from two samples, free of the offset t0
double inverse_slope(double t0, double i0, double t1, double i1) { return (t1 - t0) / (1.0 / i1 - 1.0 / i0); }

Outcome sharp_rates() {
    const SpiralParams p(0.3);
    const auto table = asymptotic_rate_table(p);
    Tally t;
    std::string summary;

    // Case 1: orbit captured by (1,pi)
    {
        Controls ctl;
        ctl.output_times = {1e4};
        ctl.max_time = 1e4;
        const auto tr = integrate_original(p, {0.9, 1.0, 3.0}, Direction::forward, ctl);
        const auto& e = tr.samples.back();
        const double c2 = e.t * e.i2, c1 = e.t * e.i1;
        const double err = std::max(rel(c2, table.case1_coefficient), rel(c1, table.case1_coefficient));
        t.require(e.t == 1e4 && err <= 0.02, "case 1 t*I = " + fmt(c2) + " vs " + fmt(table.case1_coefficient));
        summary += "case 1: t*I2(1e4) = " + fmt(c2) + " vs " + fmt(table.case1_coefficient) + " (" +
                   fmt(100 * err, 2) + "%); ";
    }

    // Case 2: locate the stable manifold of (Rbar,thetabar) by bisection across it, then follow it
    {
        const auto fp = solve_asymmetric_fixed_point(p);
        t.require(fp && table.case2_coefficients, "no asymmetric fixed point");
        if (!fp || !table.case2_coefficients) return t.done(summary);
        const auto j = jacobian_reparam(p, fp->r_bar, fp->theta_bar);
        const auto ed = eigen_data(j);
        auto vec = [&](double lam) {
            std::array<double, 2> v{j[0][1], lam - j[0][0]};
            const double n = std::hypot(v[0], v[1]);
            return std::array<double, 2>{v[0] / n, v[1] / n};
        };
        const double ls = std::min(ed.eigenvalues[0].real(), ed.eigenvalues[1].real());
        const double lu = std::max(ed.eigenvalues[0].real(), ed.eigenvalues[1].real());
        const auto vs = vec(ls), vu = vec(lu);
        const double delta = 1e-3;
        auto point = [&](double u) {
            return std::array<double, 2>{fp->r_bar + delta * vs[0] + u * vu[0], fp->theta_bar + delta * vs[1] + u * vu[1]};
        };
        Controls side_ctl;
        side_ctl.capture_targets = {PhasePoint::finite(1.0, pi)};
        side_ctl.record_steps = false;
        auto escapes = [&](double u) {
            const auto q = point(u);
            return integrate_reparam(p, {q[0], q[1]}, Direction::forward, side_ctl).end.event ==
                   TerminalEvent::escaped_to_infinity;
        };
        double lo = -delta, hi = delta;
        const bool lo_esc = escapes(lo);
        t.require(lo_esc != escapes(hi), "transversal does not straddle the stable manifold");
        for (int k = 0; k < 60; ++k) {
            const double mid = 0.5 * (lo + hi);
            (escapes(mid) == lo_esc ? lo : hi) = mid;
        }
        const auto q = point(0.5 * (lo + hi));

        // follow the orbit in the original system and read a from 1/I over the closest approach
        Controls ctl;
        ctl.max_time = 1e12;
        for (double lt = 0.0; lt <= 12.0; lt += 0.05) ctl.output_times.push_back(std::pow(10.0, lt));
        const auto tr = integrate_original(p, {q[0], 1.0, q[1]}, Direction::forward, ctl);
        std::size_t best = 1;
        double dbest = INFINITY;
        for (std::size_t k = 1; k < tr.samples.size(); ++k) {
            const auto& s = tr.samples[k];
            const double d = std::hypot(s.i1 / s.i2 - fp->r_bar, s.theta - fp->theta_bar);
            if (d < dbest) dbest = d, best = k;
        }
        const std::size_t k0 = best > 1 ? best - 1 : best, k1 = best > 1 ? best : best + 1;
        const auto& a = tr.samples[k0];
        const auto& b = tr.samples[k1];
        const double c1 = inverse_slope(a.t, a.i1, b.t, b.i1), c2 = inverse_slope(a.t, a.i2, b.t, b.i2);
        const auto [w1, w2] = *table.case2_coefficients;
        const double err = std::max(rel(c1, w1), rel(c2, w2));
        t.require(err <= 0.05, "case 2 coefficients (" + fmt(c1) + ", " + fmt(c2) + ") vs (" + fmt(w1) + ", " + fmt(w2) + ")");
        summary += "case 2 at t = " + fmt(b.t, 3) + ": (" + fmt(c1) + ", " + fmt(c2) + ") vs (" + fmt(w1) + ", " + fmt(w2) +
                   ") (" + fmt(100 * err, 2) + "%)";
    }
    return t.done(summary);
}

Outcome log_rates() {
    // Case 3 at beta = 0.3: (R, theta) -> (0, 2pi), log|I1| ~ -K'(-0)/K'(0) log t
    const SpiralParams p(0.3);
    const auto l = kernel_limits(p);
    const double want = -l.k1_minus0 / l.k1_zero;
    Tally t;
    const auto b = classify_behavior(p, std::exp(2.0), 1.0, 5.871, Direction::forward);
    t.require(b.case_id == CaseId::c3, "seed is not case 3 but " + std::string(case_name(b.case_id)));
    Controls ctl;
    ctl.max_time = 1e8;
    for (int k = 0; k <= 40; ++k) ctl.output_times.push_back(std::pow(10.0, 7.0 + k / 40.0));
    const auto tr = integrate_original(p, {std::exp(2.0), 1.0, 5.871}, Direction::forward, ctl);
    // least squares over the final decade
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const auto& s : tr.samples) {
        if (s.t < 1e7) continue;
        const double x = std::log(s.t), y = std::log(std::fabs(s.i1));
        sx += x, sy += y, sxx += x * x, sxy += x * y, ++n;
    }
    t.require(n == 41, "final decade not reached");
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double err = rel(slope, want);
    t.require(err <= 0.05, "slope " + fmt(slope) + " vs " + fmt(want));
    return t.done("case 3 slope over [1e7, 1e8] = " + fmt(slope) + " vs " + fmt(want) + " (" + fmt(100 * err, 2) + "%)");
}

Outcome recovery_round_trip() {
    const SpiralParams p(0.5);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> mag(0.2, 3.0), th(0.2, two_pi - 0.2);
    Tally t;
    double worst = 0.0;
    int used = 0, tried = 0;
    while (used < 5 && tried < 100) {
        ++tried;
        const double i1 = mag(rng), i2 = mag(rng), theta = th(rng);
        Controls rc;
        rc.capture_radius = 0.0;  // keep integrating past the approach to an equilibrium
        rc.max_time = 1e3;
        const auto rec = recover_original(p, integrate_reparam(p, {i1 / i2, theta}, Direction::forward, rc), i2);
        if (rec.samples.back().t < 100.0) continue;  // escaped before t = 100: not admissible here
        ++used;
        Controls direct;
        for (const auto& x : rec.samples)
            if (x.t > 0.0 && x.t <= 100.0) direct.output_times.push_back(x.t);
        direct.max_time = direct.output_times.back();
        const auto orig = integrate_original(p, {i1, i2, theta}, Direction::forward, direct);
        t.require(orig.samples.size() == direct.output_times.size() + 1, "sample count mismatch");
        for (std::size_t k = 1; k < orig.samples.size() && k < rec.samples.size(); ++k) {
            const auto& a = rec.samples[k];
            const auto& b = orig.samples[k];
            const double e = std::max({rel(a.i1, b.i1), rel(a.i2, b.i2), rel(a.theta, b.theta)});
            worst = std::max(worst, e);
            t.require(e <= 1e-6, "seed " + fmt(i1) + "," + fmt(i2) + "," + fmt(theta) + " off by " + fmt(e) + " at t " + fmt(a.t));
        }
    }
    t.require(used == 5, "only " + std::to_string(used) + " admissible seeds");
    return t.done(std::to_string(used) + " seeds at beta 0.5 over t in [0, 100], worst relative error " + fmt(worst, 3));
}

Outcome blowup_coherence() {
    std::mt19937_64 rng(10);
    std::uniform_real_distribution<double> mag(-1.5, 1.5), th(0.1, two_pi - 0.1);
    Tally t;
    int finite = 0, compared = 0;
    double worst = 0.0;
    const double betas[] = {0.3, 0.8, 2.0};
    for (int k = 0; k < 100; ++k) {
        const double beta = betas[k % 3];
        const SpiralParams p(beta);
        const double i1 = std::exp(mag(rng)) * (rng() % 2 ? 1 : -1);
        const double i2 = std::exp(mag(rng)) * (rng() % 2 ? 1 : -1);
        const double theta = th(rng);
        const std::string tag = "beta " + fmt(beta) + " seed " + fmt(i1) + "," + fmt(i2) + "," + fmt(theta);
        const auto b = classify_behavior(p, i1, i2, theta, Direction::forward);
        Controls ctl;
        ctl.max_time = 1e4;
        const auto tr = integrate_original(p, {i1, i2, theta}, Direction::forward, ctl);
        bool against = false;
        for (const auto& s : tr.samples) against = against || beta * (s.i1 + s.i2) < 0.0;
        t.require(b.t_star.has_value() == against, tag + ": t* " + (b.t_star ? "finite" : "none") +
                                                       ", sign condition " + (against ? "holds" : "fails"));
        if (!b.t_star) continue;
        ++finite;
        t.require(tr.end.event == TerminalEvent::blowup_detected, tag + ": no blowup event");
        // reciprocal extrapolation of the largest strength from the last two samples above 1e6
        const auto n = tr.samples.size();
        if (n < 2) continue;
        const auto& u = tr.samples[n - 2];
        const auto& v = tr.samples[n - 1];
        const bool use1 = std::fabs(v.i1) >= std::fabs(v.i2);
        const double au = std::fabs(use1 ? u.i1 : u.i2), av = std::fabs(use1 ? v.i1 : v.i2);
        if (au <= 1e6) continue;
        const double ts = v.t + (v.t - u.t) * (1.0 / av) / (1.0 / au - 1.0 / av);
        const double e = rel(*b.t_star, ts);
        worst = std::max(worst, e);
        ++compared;
        t.require(e <= 0.01, tag + ": t* " + fmt(*b.t_star) + " vs extrapolated " + fmt(ts));
    }
    return t.done(std::to_string(finite) + " of 100 seeds blow up; t* vs extrapolation on " + std::to_string(compared) +
                  ", worst " + fmt(100 * worst, 3) + "%");
}

Outcome verification_suite() {
#ifdef LOGSPIRAL_ACCEPTANCE_CLI
    std::ostringstream out, err;
    const int code = cli::run({"verify"}, out, err);
    Tally t;
    t.require(code == 0, "verify exited " + std::to_string(code));
    return t.done("logspiral verify exit code " + std::to_string(code));
#else
    const auto r = verify_all();
    Tally t;
    t.require(r.all_passed(), std::to_string(r.count(CheckStatus::fail)) + " checks failed");
    return t.done(std::to_string(r.count(CheckStatus::pass)) + " checks passed");
#endif
}

Outcome symmetry_properties() {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> mag(-2.0, 2.0), th(0.05, two_pi - 0.05), bet(0.1, 3.0);
    Tally t;
    double worst = 0.0;
    auto close = [&](double a, double b, double scale) {
        const double e = std::fabs(a - b) / std::max(1.0, scale);
        worst = std::max(worst, e);
        return e <= 1e-10;
    };
    for (int k = 0; k < 100; ++k) {
        const SpiralParams p(bet(rng));
        const double i1 = std::exp(mag(rng)) * (rng() % 2 ? 1 : -1), i2 = std::exp(mag(rng)) * (rng() % 2 ? 1 : -1);
        const double theta = th(rng), a = mag(rng);
        const auto f = vector_field_original(p, {i1, i2, theta});
        const double sc = std::max({std::fabs(f[0]), std::fabs(f[1]), std::fabs(f[2])});
        // (I1, I2, t) -> (-I1, -I2, -t)
        const auto n = vector_field_original(p, {-i1, -i2, theta});
        t.require(close(n[0], f[0], sc) && close(n[1], f[1], sc) && close(n[2], -f[2], sc), "negation identity");
        // (I1, I2, theta) -> (I2, I1, 2pi - theta)
        const auto s = vector_field_original(p, {i2, i1, two_pi - theta});
        t.require(close(s[0], f[1], sc) && close(s[1], f[0], sc) && close(s[2], -f[2], sc), "swap identity");
        // log-scaled fields under (A, theta) -> (-A, 2pi - theta)
        const auto g1 = vector_field_log(p, a, theta, 1), g1m = vector_field_log(p, -a, two_pi - theta, 1);
        const auto g2 = vector_field_log(p, a, theta, -1), g2m = vector_field_log(p, -a, two_pi - theta, -1);
        const double gs = std::max({std::fabs(g1[0]), std::fabs(g1[1]), std::fabs(g2[0]), std::fabs(g2[1])});
        t.require(close(g1m[0], -std::exp(-a) * g1[0], gs) && close(g1m[1], -std::exp(-a) * g1[1], gs), "g1 identity");
        t.require(close(g2m[0], std::exp(-a) * g2[0], gs) && close(g2m[1], std::exp(-a) * g2[1], gs), "g2 identity");
    }

    // classification coherence: swap keeps the regime, negation equals time reversal
    std::uniform_real_distribution<double> cmag(-2.0, 2.0);
    const double betas[] = {0.3, 0.5, 0.63, 0.8, 1.2};
    for (int k = 0; k < 50; ++k) {
        const Classifier c(betas[k % 5]);
        const double i1 = std::exp(cmag(rng)) * (rng() % 2 ? 1 : -1), i2 = std::exp(cmag(rng)) * (rng() % 2 ? 1 : -1);
        const double theta = th(rng);
        const std::string tag = "beta " + fmt(c.beta()) + " seed " + fmt(i1) + "," + fmt(i2) + "," + fmt(theta);
        for (Direction d : {Direction::forward, Direction::backward}) {
            const auto a = c.classify(i1, i2, theta, d);
            const auto sw = c.classify(i2, i1, two_pi - theta, d);
            t.require(sw.theorem_bullet == a.theorem_bullet && sw.t_star.has_value() == a.t_star.has_value() &&
                          (!a.t_star || rel(*sw.t_star, *a.t_star) <= 1e-6),
                      tag + " swap changes the regime");
            for (const auto& r : a.rates) {
                auto it = std::find_if(sw.rates.begin(), sw.rates.end(),
                                       [&](const RateTerm& x) { return x.quantity != r.quantity; });
                t.require(it != sw.rates.end() && it->kind == r.kind && rel(it->exponent, r.exponent) <= 1e-6,
                          tag + " swap does not exchange the rates");
            }
            const auto ng = c.classify(-i1, -i2, theta, d);
            const auto rv = c.classify(i1, i2, theta, reversed(d));
            t.require(ng.destination_id == rv.destination_id && ng.case_id == rv.case_id &&
                          ng.t_star.has_value() == rv.t_star.has_value() &&
                          (!ng.t_star || rel(*ng.t_star, -*rv.t_star) <= 1e-9),
                      tag + " negation is not time reversal");
        }
    }
    return t.done("field identities on 100 states (worst " + fmt(worst, 3) + "), coherence on 50 seeds");
}

struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> list{
        {1, "critical constants", 5, critical_constants_check},
        {2, "kernel identities", 10, kernel_identities},
        {3, "solution counts", 2, solution_counts},
        {4, "equilibrium tables", 5, equilibrium_tables},
        {5, "Jacobian cross-checks", 2, jacobian_cross_checks},
        {6, "destination correctness", 30, destination_correctness},
        {7, "asymptotic rates, sharp cases", 60, sharp_rates},
        {8, "asymptotic rates, log cases", 60, log_rates},
        {9, "recovery round trip", 30, recovery_round_trip},
        {10, "blowup criterion coherence", 120, blowup_coherence},
        {11, "verification suite", 120, verification_suite},
        {12, "symmetry properties", 60, symmetry_properties},
    };
    return list;
}

bool run_one(const Criterion& c) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = c.run();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.budget_s;
    const bool pass = o.pass && in_time;
    std::printf("criterion %2d %s: %s (%.2f s of %.0f s) %s%s\n", c.id, c.name, pass ? "PASS" : "FAIL", secs, c.budget_s,
                o.detail.c_str(), in_time ? "" : " [over budget]");
    std::fflush(stdout);
    return pass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app("logspiral acceptance criteria");
    int only = 0;
    app.add_option("--criterion", only, "run a single criterion (1-12)")->check(CLI::Range(1, 12));
    CLI11_PARSE(app, argc, argv);

    bool all = true;
    for (const auto& c : criteria())
        if (only == 0 || c.id == only) all = run_one(c) && all;
    return all ? 0 : 1;
}
