#include "logspiral/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "logspiral/criticality.hpp"
#include "logspiral/equilibria.hpp"
#include "logspiral/errors.hpp"
#include "logspiral/kernel.hpp"

namespace logspiral {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double quad_tol = 1e-6;
constexpr double jump_tol = 1e-10;

// Running worst case of one property across the grid.
class Tally {
public:
    Tally(std::string id, std::string description) {
        c_.id = std::move(id);
        c_.description = std::move(description);
    }
    void skip(double beta) { c_.skipped_betas.push_back(beta); }
    void observe(double beta, double margin, std::vector<std::pair<std::string, double>> at = {}) {
        if (std::isnan(margin)) margin = -std::numeric_limits<double>::infinity();
        if (c_.evaluated == 0 || margin < c_.margin) {
            c_.margin = margin;
            c_.witness = {beta, std::move(at)};
        }
        ++c_.evaluated;
    }
    void note(std::string n) { c_.note = std::move(n); }
    Check finish() {
        if (c_.evaluated == 0)
            c_.status = CheckStatus::skipped_near_critical;
        else
            c_.status = c_.margin > 0.0 ? CheckStatus::pass : CheckStatus::fail;
        return std::move(c_);
    }

private:
    Check c_;
};

bool near_any(double beta, double guard, std::initializer_list<Critical> which) {
    for (Critical c : which)
        if (std::abs(beta - critical_value(c)) < guard) return true;
    return false;
}

double k1_at(const SpiralParams& p, double th) { return kernel_closed(p, th).K1; }

// Sign of K(θ) − K(0) between consecutive roots: the sign just after 0 is that of K'(+0),
// and each root is a simple crossing.
int expected_sign(const ThetaSolutions& sol, double kplus, double th) {
    int s = kplus > 0.0 ? 1 : -1;
    for (double r : sol.thetas)
        if (th > r) s = -s;
    return s;
}

int expected_count(Band b) {
    switch (b) {
        case Band::below_beta0: return 3;
        case Band::beta0_beta1:
        case Band::beta1_star:
        case Band::star_beta2: return 2;
        case Band::beta2_one:
        case Band::one_beta3: return 1;
        case Band::above_beta3: return 0;
    }
    return -1;
}

double integrate(const std::function<double(double)>& f, double a, double b) {
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-13);
}

// ∫ K'(θ)K'(θ + α) over one period; the periodic extension of K' jumps at θ = 2π − α.
double cross_integral(const SpiralParams& p, double alpha) {
    auto f1 = [&](double t) { return k1_at(p, t) * k1_at(p, t + alpha); };
    auto f2 = [&](double t) { return k1_at(p, t) * k1_at(p, t + alpha - two_pi); };
    return integrate(f1, 0.0, two_pi - alpha) + integrate(f2, two_pi - alpha, two_pi);
}

}  // namespace

std::string_view status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        case CheckStatus::skipped_near_critical: return "skipped-near-critical";
    }
    return "";
}

std::vector<double> BetaGrid::values() const {
    if (!betas.empty()) return betas;
    if (points < 1 || !(beta_min > 0.0) || !(beta_max >= beta_min))
        throw DomainError("beta grid needs points >= 1 and 0 < beta_min <= beta_max");
    std::vector<double> v;
    if (points == 1) return {beta_min};
    for (int i = 0; i < points; ++i) v.push_back(beta_min + (beta_max - beta_min) * i / (points - 1));
    return v;
}

bool VerificationReport::all_passed() const {
    return std::none_of(checks.begin(), checks.end(), [](const Check& c) { return c.status == CheckStatus::fail; });
}

std::size_t VerificationReport::count(CheckStatus s) const {
    return std::size_t(std::count_if(checks.begin(), checks.end(), [&](const Check& c) { return c.status == s; }));
}

VerificationReport check_lemmas(const BetaGrid& grid) {
    const std::vector<double> betas = grid.values();
    for (double b : betas)
        if (!(b > 0.0)) throw DomainError("verification grid needs beta > 0");
    const double g = grid.guard;

    Tally k0neg("kprime0_negative", "K'(0) < 0");
    Tally sum_bound("kprime_sum_bound", "|K'(a) + K'(-a)| < -2K'(0) for a on a 720-point grid in (0, 2pi)");
    Tally pi_bound("kprime_pi_bound", "|K'(pi)| < -K'(0)");
    Tally jump("kprime_jump", "K'(+0) - K'(-0) = 1/(1+beta^2) within 1e-10");
    Tally minus0("kprime_minus0_negative", "K'(-0) < 0 and K'(+0) < -K'(-0)");
    Tally count("root_count", "number of roots of K(theta) = K(0) is 3/2/1/0 across beta0, beta2, beta3");
    Tally slopes("root_slope_signs", "K'(theta1) > 0, K'(theta2) < 0, K'(theta3) > 0");
    Tally plus0("kprime_plus0_sign", "K'(+0) < 0 on (0,beta0) and (beta2,beta3), > 0 on (beta0,beta2) and (beta3,inf)");
    Tally pattern("k_minus_k0_sign", "sign pattern of K(theta) - K(0) between the roots, 200 samples");
    Tally q0("quadrature_kprime0", "K'(0) = -4 beta int K'^2 within 1e-6");
    Tally qsum("quadrature_kprime_sum", "K'(a) + K'(-a) = -8 beta int K'(t)K'(t+a) within 1e-6, 8 angles");

    for (double beta : betas) {
        const SpiralParams p(beta);
        const KernelLimits lim = kernel_limits(p);
        const double k10 = lim.k1_zero;

        k0neg.observe(beta, -k10);

        double worst = std::numeric_limits<double>::infinity(), worst_a = 0.0;
        for (int i = 0; i < 720; ++i) {
            const double a = two_pi * (i + 0.5) / 720.0;
            const double m = -2.0 * k10 - std::abs(k1_at(p, a) + k1_at(p, two_pi - a));
            if (m < worst) worst = m, worst_a = a;
        }
        sum_bound.observe(beta, worst, {{"alpha", worst_a}});
        pi_bound.observe(beta, -k10 - std::abs(k1_at(p, pi)));
        const double jerr = std::abs(lim.k1_plus0 - lim.k1_minus0 - 1.0 / (1.0 + beta * beta));
        jump.observe(beta, jump_tol - jerr, {{"error", jerr}});
        minus0.observe(beta, std::min(-lim.k1_minus0, -lim.k1_minus0 - lim.k1_plus0));

        const double i2 = integrate([&](double t) { return k1_at(p, t) * k1_at(p, t); }, 0.0, two_pi);
        const double e0 = std::abs(k10 + 4.0 * beta * i2);
        q0.observe(beta, quad_tol - e0, {{"error", e0}});
        double qworst = std::numeric_limits<double>::infinity(), qa = 0.0;
        for (int i = 0; i < 8; ++i) {
            const double a = two_pi * (i + 0.5) / 8.0;
            const double e = std::abs(k1_at(p, a) + k1_at(p, two_pi - a) + 8.0 * beta * cross_integral(p, a));
            if (quad_tol - e < qworst) qworst = quad_tol - e, qa = a;
        }
        qsum.observe(beta, qworst, {{"alpha", qa}});

        if (near_any(beta, g, {Critical::beta0, Critical::beta2, Critical::beta3})) {
            for (Tally* t : {&count, &slopes, &plus0, &pattern}) t->skip(beta);
            continue;
        }
        const Band band = band_of(beta);
        const ThetaSolutions sol = solve_theta_stars(p);
        const int want = expected_count(band);
        count.observe(beta, sol.count() == want ? 1.0 : -1.0,
                      {{"found", double(sol.count())}, {"expected", double(want)}});

        double sm = std::numeric_limits<double>::infinity();
        std::vector<std::pair<std::string, double>> sw;
        auto slope = [&](const std::optional<double>& th, int sign, const char* name) {
            if (!th) return;
            const double m = sign * eval_kernel(p, *th).K1;
            if (m < sm) sm = m, sw = {{name, *th}};
        };
        slope(sol.theta1, 1, "theta1");
        slope(sol.theta2, -1, "theta2");
        slope(sol.theta3, 1, "theta3");
        if (sol.count() > 0) slopes.observe(beta, sm, sw);
        else slopes.skip(beta);

        const bool neg = band == Band::below_beta0 || band == Band::beta2_one || band == Band::one_beta3;
        plus0.observe(beta, (neg ? -1.0 : 1.0) * lim.k1_plus0);

        double pm = std::numeric_limits<double>::infinity(), pt = 0.0;
        for (int i = 0; i < 200; ++i) {
            const double th = two_pi * (i + 0.5) / 200.0;
            if (std::any_of(sol.thetas.begin(), sol.thetas.end(), [&](double r) { return std::abs(r - th) < 1e-9; }))
                continue;
            const double m = expected_sign(sol, lim.k1_plus0, th) * (eval_kernel(p, th).K - lim.k0);
            if (m < pm) pm = m, pt = th;
        }
        pattern.observe(beta, pm, {{"theta", pt}});
    }

    VerificationReport r;
    r.grid = grid;
    for (Tally* t : {&k0neg, &sum_bound, &pi_bound, &jump, &minus0, &count, &slopes, &plus0, &pattern, &q0, &qsum})
        r.checks.push_back(t->finish());
    return r;
}

VerificationReport check_assumptions(const BetaGrid& grid) {
    std::vector<double> betas = grid.values();
    std::sort(betas.begin(), betas.end());
    for (double b : betas)
        if (!(b > 0.0)) throw DomainError("verification grid needs beta > 0");
    const double g = grid.guard;
    const CriticalConstants& cc = critical_constants();
    const auto all = {Critical::beta0, Critical::beta1, Critical::beta_star, Critical::beta2, Critical::one,
                      Critical::beta3};

    Tally decreasing("angles_decreasing", "theta1, theta2, theta3 decrease with beta (adjacent grid differences)");
    Tally ordering("angle_ordering", "per-band ordering of theta_i and 2pi - theta_i");
    Tally config("critical_configuration",
                 "theta2 + theta3 > 2pi at beta0, theta2 + theta3 = 2pi at beta1, theta3 > pi at beta2, theta3 = pi "
                 "at beta = 1, beta0 < beta1 < beta* < beta2 < beta3");
    Tally alpha_u("alpha_unique", "K'(theta) - K'(0) changes sign exactly once on (0, 2pi), from + to -, inside (pi, 2pi)");
    Tally alpha_p("alpha_properties", "K''(alpha) < 0, and theta3 < alpha when beta < beta3");
    Tally fpi("fprime_pi_sign", "F'(pi) > 0 below beta*, < 0 above");
    Tally tbar("thetabar_unique", "F has exactly one zero in (0, pi) below beta*, with F' < 0 there; none above");
    Tally slope1("slope_bound", "max over theta of |R1 slope sum| < min over eta of R2 slope sum on (theta2, 2pi - theta2), beta < beta1");
    Tally slope2("slope_positive", "R1 slope sum > 0 on (thetabar, 2pi - thetabar), beta1 < beta < beta*");
    Tally onepi("one_pi_saddle", "(1, pi) linearization for beta > beta*: det < 0, a saddle");
    onepi.note("the linearization gives a saddle here; a repeller label would contradict the eigenvalues");

    // isolated configuration checks at the critical values themselves
    {
        auto top2 = [](double beta) {
            const ThetaSolutions s = detail::theta_stars_unguarded(SpiralParams(beta));
            if (s.count() < 2) throw InternalError("fewer than two roots near beta0 or beta1");
            return std::pair{s.thetas[s.thetas.size() - 2], s.thetas.back()};
        };
        const auto [a0, b0] = top2(cc.beta0);
        const auto [a1, b1] = top2(cc.beta1);
        const double t3b2 = detail::theta_stars_unguarded(SpiralParams(cc.beta2)).thetas.back();
        const double t3one = detail::theta_stars_unguarded(SpiralParams(1.0)).thetas.back();
        const double m = std::min({a0 + b0 - two_pi, 1e-8 - std::abs(a1 + b1 - two_pi), t3b2 - pi,
                                   1e-8 - std::abs(t3one - pi), cc.beta1 - cc.beta0, cc.beta_star - cc.beta1,
                                   cc.beta2 - cc.beta_star, cc.beta3 - cc.beta2});
        config.observe(cc.beta0, m,
                       {{"theta2+theta3-2pi@beta0", a0 + b0 - two_pi},
                        {"theta2+theta3-2pi@beta1", a1 + b1 - two_pi},
                        {"theta3-pi@beta2", t3b2 - pi},
                        {"theta3-pi@1", t3one - pi}});
        config.note("beta1 and 1 are removable points: nothing degenerates there beyond the angle coincidences");
    }

    struct Angles {
        double beta;
        std::optional<double> t1, t2, t3;
    };
    std::vector<Angles> angs;

    for (double beta : betas) {
        const SpiralParams p(beta);
        const KernelLimits lim = kernel_limits(p);
        const double k10 = lim.k1_zero;

        // alpha by sign-change count over the whole circle
        {
            constexpr int n = 8000;
            int changes = 0;
            double at = 0.0, prev = lim.k1_plus0 - k10;
            bool first_positive = prev > 0.0;
            for (int i = 1; i <= n; ++i) {
                const double th = i < n ? two_pi * i / n : two_pi;
                const double v = k1_at(p, th) - k10;
                if (prev * v < 0.0) ++changes, at = th;
                prev = v;
            }
            const bool ok = changes == 1 && first_positive && at > pi;
            alpha_u.observe(beta, ok ? std::min(at - pi, two_pi - at) : -1.0,
                            {{"sign_changes", double(changes)}, {"near", at}});
            if (ok) {
                const double alpha = solve_alpha(p);
                double m = -kernel_closed(p, alpha).K2;
                std::vector<std::pair<std::string, double>> w{{"alpha", alpha}};
                if (beta < cc.beta3 && !near_any(beta, g, {Critical::beta3, Critical::beta2, Critical::beta0})) {
                    const ThetaSolutions s = solve_theta_stars(p);
                    if (s.theta3) {
                        m = std::min(m, alpha - *s.theta3);
                        w.emplace_back("theta3", *s.theta3);
                    }
                }
                alpha_p.observe(beta, m, w);
            } else {
                alpha_p.skip(beta);
            }
        }

        if (near_any(beta, g, {Critical::beta_star})) {
            fpi.skip(beta);
            tbar.skip(beta);
        } else {
            const double fp = eval_Fprime_pi(p);
            fpi.observe(beta, beta < cc.beta_star ? fp : -fp, {{"Fprime_pi", fp}});
            constexpr int n = 4000;
            int zeros = 0;
            double lo = 0.0, hi = 0.0;
            double prev_t = pi * 0.5 / n, prev = eval_F(p, prev_t);
            for (int i = 1; i < n; ++i) {
                const double th = pi * (i + 0.5) / n;
                const double v = eval_F(p, th);
                if (prev * v < 0.0) ++zeros, lo = prev_t, hi = th;
                prev = v;
                prev_t = th;
            }
            if (beta < cc.beta_star) {
                double m = -1.0;
                if (zeros == 1) {
                    double a = lo, b = hi;
                    const double sa = eval_F(p, a);
                    for (int k = 0; k < 200 && b - a > 1e-14; ++k) {
                        const double mid = 0.5 * (a + b);
                        (eval_F(p, mid) * sa > 0.0 ? a : b) = mid;
                    }
                    m = -eval_Fprime(p, 0.5 * (a + b));
                }
                tbar.observe(beta, m, {{"zeros", double(zeros)}, {"thetabar", 0.5 * (lo + hi)}});
            } else {
                tbar.observe(beta, zeros == 0 ? 1.0 : -1.0, {{"zeros", double(zeros)}});
            }
        }

        if (beta > cc.beta_star) {
            if (near_any(beta, g, {Critical::beta_star})) {
                onepi.skip(beta);
            } else {
                const EigenData e = eigen_data(jacobian_reparam(p, 1.0, pi));
                onepi.observe(beta, -e.determinant, {{"trace", e.trace}, {"det", e.determinant}});
            }
        }

        if (near_any(beta, g, all)) {
            for (Tally* t : {&ordering, &slope1, &slope2}) t->skip(beta);
            angs.push_back({beta, {}, {}, {}});
            continue;
        }
        const ThetaSolutions s = solve_theta_stars(p);
        angs.push_back({beta, s.theta1, s.theta2, s.theta3});

        const Band band = band_of(beta);
        std::vector<double> chain;
        const double t1 = s.theta1.value_or(0.0), t2 = s.theta2.value_or(0.0), t3 = s.theta3.value_or(0.0);
        switch (band) {
            case Band::below_beta0: chain = {t1, two_pi - t3, t2, two_pi - t2, t3, two_pi - t1}; break;
            case Band::beta0_beta1: chain = {two_pi - t3, t2, two_pi - t2, t3}; break;
            case Band::beta1_star:
            case Band::star_beta2: chain = {t2, two_pi - t3, t3, two_pi - t2}; break;
            case Band::beta2_one: chain = {two_pi - t3, t3}; break;
            case Band::one_beta3: chain = {t3, two_pi - t3}; break;
            case Band::above_beta3: break;
        }
        if (!chain.empty()) {
            double m = std::numeric_limits<double>::infinity();
            int worst = 0;
            for (std::size_t i = 0; i + 1 < chain.size(); ++i)
                if (chain[i + 1] - chain[i] < m) m = chain[i + 1] - chain[i], worst = int(i);
            ordering.observe(beta, m, {{"gap_index", double(worst)}});
        }

        // slope sums: S1(θ) = K''(θ)/(K'(θ)−K'(0)) + K''(−θ)/(K'(−θ)−K'(0)), S2(η) = K'(η)/(K(η)−K(0)) + K'(−η)/(K(−η)−K(0))
        auto s1 = [&](double th) {
            const auto a = eval_kernel(p, th), b = eval_kernel_reflected(p, th);
            return a.K2 / (a.K1 - k10) + b.K2 / (b.K1 - k10);
        };
        auto s2 = [&](double th) {
            const auto a = eval_kernel(p, th), b = eval_kernel_reflected(p, th);
            return a.K1 / (a.K - lim.k0) + b.K1 / (b.K - lim.k0);
        };
        constexpr int n = 200;
        if (beta < cc.beta1 && s.theta2) {
            const double lo = *s.theta2, hi = two_pi - *s.theta2;
            double lmax = -std::numeric_limits<double>::infinity(), rmin = std::numeric_limits<double>::infinity();
            double at_l = 0.0, at_r = 0.0;
            for (int i = 0; i < n; ++i) {
                const double th = lo + (hi - lo) * (i + 0.5) / n;
                const double l = std::abs(s1(th)), r = s2(th);
                if (l > lmax) lmax = l, at_l = th;
                if (r < rmin) rmin = r, at_r = th;
            }
            slope1.observe(beta, rmin - lmax, {{"theta", at_l}, {"eta", at_r}});
        }
        if (beta > cc.beta1 && beta < cc.beta_star) {
            const auto fp = solve_asymmetric_fixed_point(p);
            if (!fp) throw InternalError("no asymmetric fixed point below beta*");
            const double lo = fp->theta_bar, hi = two_pi - fp->theta_bar;
            double m = std::numeric_limits<double>::infinity(), at = 0.0;
            for (int i = 0; i < n; ++i) {
                const double th = lo + (hi - lo) * (i + 0.5) / n;
                const double v = s1(th);
                if (v < m) m = v, at = th;
            }
            slope2.observe(beta, m, {{"theta", at}});
        }
    }

    for (std::size_t k = 0; k + 1 < angs.size(); ++k) {
        const Angles &a = angs[k], &b = angs[k + 1];
        double m = std::numeric_limits<double>::infinity();
        bool any = false;
        for (auto [x, y] : {std::pair{a.t1, b.t1}, std::pair{a.t2, b.t2}, std::pair{a.t3, b.t3}}) {
            if (!x || !y) continue;
            m = std::min(m, *x - *y);
            any = true;
        }
        if (any) decreasing.observe(a.beta, m, {{"next_beta", b.beta}});
    }

    VerificationReport r;
    r.grid = grid;
    for (Tally* t : {&decreasing, &ordering, &config, &alpha_u, &alpha_p, &fpi, &tbar, &slope1, &slope2, &onepi})
        r.checks.push_back(t->finish());
    return r;
}

VerificationReport verify_all(const BetaGrid& grid) {
    VerificationReport a = check_lemmas(grid);
    VerificationReport b = check_assumptions(grid);
    a.checks.insert(a.checks.end(), std::make_move_iterator(b.checks.begin()), std::make_move_iterator(b.checks.end()));
    return a;
}

}  // namespace logspiral
