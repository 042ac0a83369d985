#include "logspiral/equilibria.hpp"

#include <cmath>
#include <optional>

#include "logspiral/errors.hpp"

namespace logspiral {

namespace {

constexpr double hyperbolic_guard = 1e-8;

struct Pair {
    KernelValues t;  // at θ
    KernelValues m;  // at −θ, i.e. 2π − θ
};

Pair pair_at(const SpiralParams& p, double theta) {
    return {kernel_closed(p, theta), kernel_closed(p, two_pi - theta)};
}

void require_closed(double theta) {
    if (!(theta >= 0.0 && theta <= two_pi))
        throw DomainError("theta must lie in [0, 2pi], got " + std::to_string(theta));
}

std::string fmt_num(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

}  // namespace

std::string to_string(const PhasePoint& p) {
    switch (p.tag) {
        case PhasePoint::Tag::plus_infinity: return "(+inf," + fmt_num(p.theta) + ")";
        case PhasePoint::Tag::minus_infinity: return "(-inf," + fmt_num(p.theta) + ")";
        default: return "(" + fmt_num(p.r) + "," + fmt_num(p.theta) + ")";
    }
}

std::string_view kind_name(StabilityKind k) {
    switch (k) {
        case StabilityKind::attractor: return "attractor";
        case StabilityKind::repeller: return "repeller";
        case StabilityKind::saddle: return "saddle";
    }
    return "";
}

StabilityKind time_reversed(StabilityKind k) {
    if (k == StabilityKind::attractor) return StabilityKind::repeller;
    if (k == StabilityKind::repeller) return StabilityKind::attractor;
    return StabilityKind::saddle;
}

EigenData eigen_data(const Matrix2& m) {
    EigenData e{};
    e.trace = m[0][0] + m[1][1];
    e.determinant = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    const std::complex<double> disc = std::sqrt(std::complex<double>(0.25 * e.trace * e.trace - e.determinant));
    e.eigenvalues = {0.5 * e.trace - disc, 0.5 * e.trace + disc};
    if (e.eigenvalues[0].imag() == 0.0 && e.eigenvalues[0].real() > e.eigenvalues[1].real())
        std::swap(e.eigenvalues[0], e.eigenvalues[1]);
    return e;
}

StabilityKind classify_eigen(const EigenData& e) {
    // A saddle stays hyperbolic even with zero trace, so the trace guard only matters when b > 0.
    if (std::abs(e.determinant) <= hyperbolic_guard)
        throw NonHyperbolicError("determinant " + fmt_num(e.determinant) + " inside the hyperbolicity guard");
    if (e.determinant < 0.0) return StabilityKind::saddle;
    if (std::abs(e.trace) <= hyperbolic_guard)
        throw NonHyperbolicError("trace " + fmt_num(e.trace) + " inside the hyperbolicity guard");
    return e.trace < 0.0 ? StabilityKind::attractor : StabilityKind::repeller;
}

double nullcline_R1(const SpiralParams& p, double theta) {
    const auto t = eval_kernel(p, theta);
    const auto m = eval_kernel_reflected(p, theta);
    const double k10 = kernel_limits(p).k1_zero;
    const double den = m.K1 - k10;
    // Distance to the pole 2π − α estimated from the local slope of the denominator.
    if (std::abs(den) <= 1e-9 * std::max(1.0, std::abs(m.K2)))
        throw DomainError("R1 pole at theta = 2pi - alpha (theta = " + fmt_num(theta) + ")");
    return (t.K1 - k10) / den;
}

double nullcline_R2(const SpiralParams& p, double theta) {
    const auto t = eval_kernel(p, theta);
    const auto m = eval_kernel_reflected(p, theta);
    const double k0 = kernel_limits(p).k0;
    const double num = t.K - k0, den = m.K - k0;
    if (std::abs(den) <= 1e-12) {
        if (std::abs(num) <= 1e-12)
            throw DomainError("R2 is 0/0 at theta = " + fmt_num(theta) + " (removable degeneracy)");
        throw DomainError("R2 asymptote at theta = " + fmt_num(theta));
    }
    return num / den;
}

Matrix2 jacobian_reparam(const SpiralParams& p, double r, double theta) {
    require_closed(theta);
    const auto [t, m] = pair_at(p, theta);
    const auto lim = kernel_limits(p);
    const double k10 = lim.k1_zero, k0 = lim.k0;
    Matrix2 j{};
    j[0][0] = 4.0 * (k10 - m.K1) * r + 2.0 * (t.K1 - k10);
    j[0][1] = 2.0 * m.K2 * r * r + 2.0 * t.K2 * r;
    j[1][0] = 2.0 * (k0 - m.K);
    j[1][1] = 2.0 * m.K1 * r + 2.0 * t.K1;
    return j;
}

Matrix2 jacobian_log(const SpiralParams& p, double a, double theta, int sign) {
    require_closed(theta);
    const auto [t, m] = pair_at(p, theta);
    const auto lim = kernel_limits(p);
    const double k10 = lim.k1_zero, k0 = lim.k0;
    const double e = (sign >= 0 ? 1.0 : -1.0) * std::exp(a);
    Matrix2 j{};
    j[0][0] = 2.0 * (k10 - m.K1) * e;
    j[0][1] = 2.0 * m.K2 * e + 2.0 * t.K2;
    j[1][0] = 2.0 * (k0 - m.K) * e;
    j[1][1] = 2.0 * m.K1 * e + 2.0 * t.K1;
    return j;
}

std::string angle_name(const ThetaSolutions& s, double theta) {
    if (theta == 0.0) return "0";
    if (theta == two_pi) return "2pi";
    if (s.theta1 && theta == *s.theta1) return "theta1";
    if (s.theta2 && theta == *s.theta2) return "theta2";
    if (s.theta3 && theta == *s.theta3) return "theta3";
    return fmt_num(theta);
}

std::string mirrored_angle_name(const ThetaSolutions& s, double theta) {
    if (theta == 0.0) return "2pi";
    if (theta == two_pi) return "0";
    return "2pi-" + angle_name(s, theta);
}

std::string zero_line_id(const ThetaSolutions& s, double theta) { return "(0," + angle_name(s, theta) + ")"; }

std::string infinity_id(const ThetaSolutions& s, int sign, double partner_theta) {
    return std::string(sign > 0 ? "(+inf," : "(-inf,") + mirrored_angle_name(s, partner_theta) + ")";
}

std::vector<Equilibrium> list_equilibria(const SpiralParams& p) {
    if (!(p.beta() > 0.0)) throw DomainError("list_equilibria needs beta > 0");
    require_away_from(p.beta(), 1e-4, {Critical::beta0, Critical::beta_star, Critical::beta2, Critical::beta3});

    const ThetaSolutions sol = solve_theta_stars(p);
    std::vector<Equilibrium> out;
    auto add = [&](std::string id, double r, double theta, const Matrix2& j, bool log_scaled) {
        const EigenData e = eigen_data(j);
        Equilibrium q;
        q.id = std::move(id);
        q.location = PhasePoint::finite(r, theta);
        q.kind = classify_eigen(e);
        q.trace = e.trace;
        q.determinant = e.determinant;
        q.eigenvalues = e.eigenvalues;
        q.log_scaled = log_scaled;
        out.push_back(std::move(q));
        return out.size() - 1;
    };

    const std::size_t one_pi = add("(1,pi)", 1.0, std::numbers::pi, jacobian_reparam(p, 1.0, std::numbers::pi), false);
    if (p.beta() > critical_constants().beta_star && out[one_pi].kind == StabilityKind::saddle)
        out[one_pi].note = "saddle by eigenvalues (b < 0) for beta > beta_star; a repeller label here would contradict the linearization";

    if (auto fp = solve_asymmetric_fixed_point(p)) {
        add("(Rbar,thetabar)", fp->r_bar, fp->theta_bar, jacobian_log(p, std::log(fp->r_bar), fp->theta_bar), true);
        add("(1/Rbar,2pi-thetabar)", 1.0 / fp->r_bar, two_pi - fp->theta_bar,
            jacobian_log(p, -std::log(fp->r_bar), two_pi - fp->theta_bar), true);
    }

    const std::vector<double> zl = zero_line_angles(sol);
    for (double th : zl) add(zero_line_id(sol, th), 0.0, th, jacobian_reparam(p, 0.0, th), false);
    add("(-1,0)", -1.0, 0.0, jacobian_reparam(p, -1.0, 0.0), false);
    add("(-1,2pi)", -1.0, two_pi, jacobian_reparam(p, -1.0, two_pi), false);

    // (+inf, 2π−θ) behaves as (0, θ); (−inf, 2π−θ) as its time reversal.
    const std::size_t n_finite = out.size();
    for (std::size_t i = 0; i < n_finite; ++i) {
        if (out[i].location.r != 0.0) continue;
        const Equilibrium base = out[i];
        const double th = base.location.theta;
        for (int sign : {1, -1}) {
            Equilibrium q = base;
            q.id = infinity_id(sol, sign, th);
            q.location = PhasePoint::infinity(sign, two_pi - th);
            q.compactified = true;
            q.mirror_of = base.id;
            q.log_scaled = false;
            q.note.clear();
            if (sign < 0) {
                q.kind = time_reversed(base.kind);
                q.trace = -base.trace;
                q.eigenvalues = {-base.eigenvalues[1], -base.eigenvalues[0]};
            }
            out.push_back(std::move(q));
        }
    }
    return out;
}

}  // namespace logspiral
