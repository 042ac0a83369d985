#include "logspiral/criticality.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/tools/roots.hpp>

#include "logspiral/errors.hpp"

namespace logspiral {

namespace {

constexpr double width_tol = 1e-13;
constexpr double residual_tol = 1e-10;

// Bisection on a bracket whose endpoint signs are known; f is never evaluated at the ends.
template <class F>
double bisect_signed(F f, double lo, double hi, double sign_lo, double sign_hi, const char* what) {
    if (!(sign_lo * sign_hi < 0.0))
        throw InternalError(std::string("no sign change in bracket for ") + what);
    auto g = [&](double x) {
        if (x <= lo) return sign_lo;
        if (x >= hi) return sign_hi;
        return f(x);
    };
    auto tol = [](double a, double b) { return std::abs(b - a) <= width_tol; };
    std::uintmax_t iters = 200;
    auto r = boost::math::tools::bisect(g, lo, hi, tol, iters);
    return 0.5 * (r.first + r.second);
}

double sgn(double x) { return (x > 0.0) - (x < 0.0); }

struct Samples {
    double K, K1, K2;
};

Samples at(const SpiralParams& p, double theta) {
    auto v = kernel_closed(p, theta);
    return {v.K, v.K1, v.K2};
}

}  // namespace

double detail::count_discriminant(double beta) {
    const double gam = 4.0 * std::numbers::pi / (1.0 + beta * beta);
    return std::cos(gam) / std::sin(gam) - std::exp(-gam * beta) / std::sin(gam) - beta;
}

ThetaSolutions detail::theta_stars_unguarded(const SpiralParams& p) {
    const KernelLimits lim = kernel_limits(p);
    auto d = [&](double th) { return kernel_closed(p, th).K - lim.k0; };

    // Branch points of f(k) = cot(kγ) − e^{−kγβ}csc(kγ) sit at kγ = nπ; each branch holds at most one root.
    std::vector<double> cuts{0.0};
    for (int n = 1;; ++n) {
        const double th = two_pi * n * std::numbers::pi / p.gamma();
        if (th >= two_pi * (1.0 - 1e-15)) break;
        cuts.push_back(th);
    }
    cuts.push_back(two_pi);

    std::vector<double> sign(cuts.size());
    sign.front() = sgn(lim.k1_plus0);  // d ≈ K'(+0)·θ near 0
    sign.back() = 1.0;                 // d ≈ −K'(−0)(2π−θ) > 0 near 2π
    ThetaSolutions out;
    for (std::size_t i = 1; i + 1 < cuts.size(); ++i) {
        const double v = d(cuts[i]);
        if (std::abs(v) <= 1e-14) {
            // Root exactly on a branch point (β = 1 puts θ3 = π there).
            sign[i] = 0.0;
            out.thetas.push_back(cuts[i]);
            out.brackets.emplace_back(cuts[i - 1], cuts[i + 1]);
        } else {
            sign[i] = sgn(v);
        }
    }
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (sign[i] * sign[i + 1] < 0.0) {
            const double r = bisect_signed(d, cuts[i], cuts[i + 1], sign[i], sign[i + 1], "K(theta)=K(0)");
            if (std::abs(d(r)) > residual_tol) throw InternalError("K(theta)=K(0) residual too large");
            out.thetas.push_back(r);
            out.brackets.emplace_back(cuts[i], cuts[i + 1]);
        }
    }
    std::vector<std::size_t> idx(out.thetas.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return out.thetas[a] < out.thetas[b]; });
    ThetaSolutions sorted;
    for (auto i : idx) {
        sorted.thetas.push_back(out.thetas[i]);
        sorted.brackets.push_back(out.brackets[i]);
    }
    const auto& t = sorted.thetas;
    if (t.size() == 3) {
        sorted.theta1 = t[0];
        sorted.theta2 = t[1];
        sorted.theta3 = t[2];
    } else if (t.size() == 2) {
        sorted.theta2 = t[0];
        sorted.theta3 = t[1];
    } else if (t.size() == 1) {
        sorted.theta3 = t[0];
    }
    return sorted;
}

ThetaSolutions solve_theta_stars(const SpiralParams& p) {
    if (p.beta() < 0.0) throw DomainError("solve_theta_stars needs beta > 0");
    require_away_from(p.beta(), 1e-6, {Critical::beta0, Critical::beta2, Critical::beta3});
    return detail::theta_stars_unguarded(p);
}

std::vector<double> zero_line_angles(const ThetaSolutions& s) {
    std::vector<double> z{0.0};
    z.insert(z.end(), s.thetas.begin(), s.thetas.end());
    z.push_back(two_pi);
    return z;
}

double eval_F(const SpiralParams& p, double theta) {
    const auto t = eval_kernel(p, theta);
    const auto m = eval_kernel_reflected(p, theta);
    const auto lim = kernel_limits(p);
    return lim.k0 * (m.K1 - t.K1) + t.K * (lim.k1_zero - m.K1) + m.K * (t.K1 - lim.k1_zero);
}

double eval_Fprime(const SpiralParams& p, double theta) {
    const auto t = eval_kernel(p, theta);
    const auto m = eval_kernel_reflected(p, theta);
    const auto lim = kernel_limits(p);
    const double k10 = lim.k1_zero;
    return (k10 - t.K1) * m.K1 + (k10 - m.K1) * t.K1 - (lim.k0 - t.K) * m.K2 - (lim.k0 - m.K) * t.K2;
}

double eval_Fprime_pi(const SpiralParams& p) {
    const auto pi = at(p, std::numbers::pi);
    const auto lim = kernel_limits(p);
    return 2.0 * pi.K1 * (lim.k1_zero - pi.K1) - 2.0 * pi.K2 * (lim.k0 - pi.K);
}

double solve_alpha(const SpiralParams& p) {
    if (p.beta() <= 0.0) throw DomainError("solve_alpha needs beta > 0");
    const double k10 = kernel_limits(p).k1_zero;
    auto h = [&](double th) { return kernel_closed(p, th).K1 - k10; };
    constexpr int n = 4000;
    double prev_t = std::numbers::pi, prev = h(prev_t);
    std::vector<std::pair<double, double>> changes;
    for (int i = 1; i < n; ++i) {
        const double t = std::numbers::pi * (1.0 + double(i) / n);
        const double v = h(t);
        if (prev * v < 0.0) changes.emplace_back(prev_t, t);
        prev = v;
        prev_t = t;
    }
    if (changes.empty())
        throw NotFoundError("no alpha in (pi, 2pi) with K'(alpha) = K'(0) at beta = " + std::to_string(p.beta()));
    if (changes.size() > 1)
        throw NotFoundError("K'(theta) - K'(0) changes sign " + std::to_string(changes.size()) +
                            " times on (pi, 2pi); alpha is not unique");
    auto [a, b] = changes.front();
    const double r = bisect_signed(h, a, b, sgn(h(a)), sgn(h(b)), "alpha");
    if (std::abs(h(r)) > residual_tol) throw NotFoundError("alpha residual too large");
    return r;
}

std::optional<AsymmetricFixedPoint> solve_asymmetric_fixed_point(const SpiralParams& p) {
    if (p.beta() <= 0.0) throw DomainError("solve_asymmetric_fixed_point needs beta > 0");
    require_away_from(p.beta(), 1e-6, {Critical::beta_star});
    if (p.beta() > critical_constants().beta_star) return std::nullopt;

    const KernelLimits lim = kernel_limits(p);
    auto F = [&](double th) {
        const auto t = at(p, th);
        const auto m = at(p, two_pi - th);
        return lim.k0 * (m.K1 - t.K1) + t.K * (lim.k1_zero - m.K1) + m.K * (t.K1 - lim.k1_zero);
    };
    constexpr int n = 10000;
    std::vector<std::pair<double, double>> changes;
    double prev_t = std::numbers::pi / (n + 1), prev = F(prev_t);
    for (int i = 2; i <= n; ++i) {
        const double t = std::numbers::pi * i / (n + 1);
        const double v = F(t);
        if (prev * v < 0.0) changes.emplace_back(prev_t, t);
        prev = v;
        prev_t = t;
    }
    if (changes.empty())
        throw NotFoundError("no root of F in (0, pi) although beta < beta*");
    if (changes.size() > 1)
        throw NotFoundError("F has " + std::to_string(changes.size()) + " sign changes in (0, pi)");
    auto [a, b] = changes.front();
    const double tb = bisect_signed(F, a, b, sgn(F(a)), sgn(F(b)), "theta_bar");
    const auto t = at(p, tb);
    const auto m = at(p, two_pi - tb);
    return AsymmetricFixedPoint{tb, (t.K1 - lim.k1_zero) / (m.K1 - lim.k1_zero)};
}

CriticalConstants solve_critical_betas() {
    using detail::count_discriminant;
    const double s3 = std::sqrt(3.0), is3 = 1.0 / s3;
    constexpr double eps = 1e-6;
    auto root_g = [&](double lo, double hi, const char* what) {
        return bisect_signed(count_discriminant, lo, hi, sgn(count_discriminant(lo)),
                             sgn(count_discriminant(hi)), what);
    };
    CriticalConstants c{};
    c.beta0 = root_g(eps, is3 - eps, "beta0");
    c.beta2 = root_g(is3 + eps, 1.0 - eps, "beta2");
    c.beta3 = root_g(1.0 + eps, s3 - eps, "beta3");

    // θ2 + θ3 = 2π
    auto phi = [](double b) {
        const auto s = detail::theta_stars_unguarded(SpiralParams(b));
        if (!s.theta2 || !s.theta3) throw InternalError("theta2/theta3 missing while solving beta1");
        return *s.theta2 + *s.theta3 - two_pi;
    };
    {
        const double lo = c.beta0 + 1e-4, hi = c.beta2 - 1e-4;
        c.beta1 = bisect_signed(phi, lo, hi, sgn(phi(lo)), sgn(phi(hi)), "beta1");
    }
    auto fp = [](double b) { return eval_Fprime_pi(SpiralParams(b)); };
    {
        const double lo = c.beta1, hi = c.beta2;
        c.beta_star = bisect_signed(fp, lo, hi, sgn(fp(lo)), sgn(fp(hi)), "beta*");
    }
    return c;
}

const CriticalConstants& critical_constants() {
    static const CriticalConstants c = solve_critical_betas();
    return c;
}

double critical_value(Critical c) {
    const auto& k = critical_constants();
    switch (c) {
        case Critical::beta0: return k.beta0;
        case Critical::beta1: return k.beta1;
        case Critical::beta_star: return k.beta_star;
        case Critical::beta2: return k.beta2;
        case Critical::one: return 1.0;
        case Critical::beta3: return k.beta3;
    }
    return 0.0;
}

std::string_view critical_name(Critical c) {
    switch (c) {
        case Critical::beta0: return "beta0";
        case Critical::beta1: return "beta1";
        case Critical::beta_star: return "beta_star";
        case Critical::beta2: return "beta2";
        case Critical::one: return "one";
        case Critical::beta3: return "beta3";
    }
    return "";
}

void require_away_from(double beta, double guard, std::initializer_list<Critical> which) {
    for (auto c : which) {
        const double v = critical_value(c);
        if (std::abs(beta - v) < guard) throw NearCriticalError(beta, std::string(critical_name(c)), v);
    }
}

Band band_of(double beta) {
    if (!(beta > 0.0)) throw DomainError("band_of needs beta > 0");
    const auto& k = critical_constants();
    if (beta < k.beta0) return Band::below_beta0;
    if (beta < k.beta1) return Band::beta0_beta1;
    if (beta < k.beta_star) return Band::beta1_star;
    if (beta < k.beta2) return Band::star_beta2;
    if (beta < 1.0) return Band::beta2_one;
    if (beta < k.beta3) return Band::one_beta3;
    return Band::above_beta3;
}

std::string_view band_label(Band b) {
    switch (b) {
        case Band::below_beta0: return "(0,beta0)";
        case Band::beta0_beta1: return "(beta0,beta1)";
        case Band::beta1_star: return "(beta1,beta_star)";
        case Band::star_beta2: return "(beta_star,beta2)";
        case Band::beta2_one: return "(beta2,1)";
        case Band::one_beta3: return "(1,beta3)";
        case Band::above_beta3: return "(beta3,inf)";
    }
    return "";
}

}  // namespace logspiral
