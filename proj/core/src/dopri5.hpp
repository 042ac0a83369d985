#pragma once

// Dormand-Prince 5(4) with PI step-size control and the standard 4th-order
// continuous extension. Works in either time direction (sign of h).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>

namespace logspiral::detail {

namespace dp {
constexpr double c2 = 0.2, c3 = 0.3, c4 = 0.8, c5 = 8.0 / 9.0;
constexpr double a21 = 0.2;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                 a65 = -5103.0 / 18656.0;
constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0, a75 = -2187.0 / 6784.0,
                 a76 = 11.0 / 84.0;
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0, e5 = -17253.0 / 339200.0,
                 e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;
}  // namespace dp

template <std::size_t N>
class Dopri5 {
public:
    using State = std::array<double, N>;
    using Rhs = std::function<void(double, const State&, State&)>;

    enum class Status { ok, underflow, nonfinite };

    Dopri5(Rhs f, double rtol, double atol) : f_(std::move(f)), rtol_(rtol), atol_(atol) { controlled_.fill(true); }

    // Components excluded from the error norm still get integrated.
    void set_controlled(std::size_t i, bool on) { controlled_[i] = on; }

    void start(double t0, const State& y0, int dir, double h0 = 0.0) {
        t_ = t_old_ = t0;
        y_ = y_old_ = y0;
        dir_ = dir >= 0 ? 1 : -1;
        f_(t_, y_, k1_);
        h_ = h0 != 0.0 ? dir_ * std::abs(h0) : initial_step();
        facold_ = 1e-4;
        reject_ = false;
    }

    // Advance one accepted step without passing t_limit.
    Status step(double t_limit) {
        using namespace dp;
        for (;;) {
            double h = h_;
            bool clipped = false;
            if (dir_ * (t_ + h - t_limit) > 0.0) {
                h = t_limit - t_;
                clipped = true;
            }
            const double hmin = 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t_));
            if (std::abs(h) < hmin && !clipped) return Status::underflow;

            State y1, k2, k3, k4, k5, k6, k7, ynew;
            for (std::size_t i = 0; i < N; ++i) y1[i] = y_[i] + h * a21 * k1_[i];
            f_(t_ + c2 * h, y1, k2);
            for (std::size_t i = 0; i < N; ++i) y1[i] = y_[i] + h * (a31 * k1_[i] + a32 * k2[i]);
            f_(t_ + c3 * h, y1, k3);
            for (std::size_t i = 0; i < N; ++i) y1[i] = y_[i] + h * (a41 * k1_[i] + a42 * k2[i] + a43 * k3[i]);
            f_(t_ + c4 * h, y1, k4);
            for (std::size_t i = 0; i < N; ++i)
                y1[i] = y_[i] + h * (a51 * k1_[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
            f_(t_ + c5 * h, y1, k5);
            for (std::size_t i = 0; i < N; ++i)
                y1[i] = y_[i] + h * (a61 * k1_[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
            const double tph = t_ + h;
            f_(tph, y1, k6);
            for (std::size_t i = 0; i < N; ++i)
                ynew[i] = y_[i] + h * (a71 * k1_[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
            f_(tph, ynew, k7);

            double err = 0.0;
            std::size_t nc = 0;
            bool finite = true;
            for (std::size_t i = 0; i < N; ++i) {
                if (!std::isfinite(ynew[i])) finite = false;
                if (!controlled_[i]) continue;
                const double e = h * (e1 * k1_[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
                const double sc = atol_ + rtol_ * std::max(std::abs(y_[i]), std::abs(ynew[i]));
                err += (e / sc) * (e / sc);
                ++nc;
            }
            err = nc ? std::sqrt(err / double(nc)) : 0.0;
            if (!finite || !std::isfinite(err)) {
                // Shrink hard and retry; give up only at underflow.
                h_ = 0.1 * h;
                ++rejected_;
                if (std::abs(h_) < hmin) return Status::nonfinite;
                reject_ = true;
                continue;
            }

            // PI controller (Hairer-Wanner constants)
            constexpr double beta = 0.04, expo1 = 0.2 - beta * 0.75, safe = 0.9;
            constexpr double facc1 = 5.0, facc2 = 0.1;  // step may shrink by 5, grow by 10
            const double fac11 = std::pow(std::max(err, 1e-300), expo1);
            if (err <= 1.0) {
                double fac = fac11 / std::pow(facold_, beta);
                fac = std::max(facc2, std::min(facc1, fac / safe));
                double hnew = h / fac;
                facold_ = std::max(err, 1e-4);
                if (reject_) hnew = dir_ * std::min(std::abs(hnew), std::abs(h));
                reject_ = false;

                // dense output coefficients
                for (std::size_t i = 0; i < N; ++i) {
                    const double ydiff = ynew[i] - y_[i];
                    const double bspl = h * k1_[i] - ydiff;
                    r1_[i] = y_[i];
                    r2_[i] = ydiff;
                    r3_[i] = bspl;
                    r4_[i] = ydiff - h * k7[i] - bspl;
                    r5_[i] = h * (d1 * k1_[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
                }
                t_old_ = t_;
                y_old_ = y_;
                h_used_ = h;
                t_ = tph;
                y_ = ynew;
                k1_ = k7;
                // A clipped step says nothing about the natural step size.
                if (!clipped || std::abs(hnew) < std::abs(h_)) h_ = hnew;
                ++accepted_;
                return Status::ok;
            }
            h_ = h / std::min(facc1, fac11 / safe);
            reject_ = true;
            ++rejected_;
        }
    }

    // Continuous extension on [t_old, t].
    State dense(double t) const {
        State y;
        if (h_used_ == 0.0) return y_;
        const double s = (t - t_old_) / h_used_, s1 = 1.0 - s;
        for (std::size_t i = 0; i < N; ++i)
            y[i] = r1_[i] + s * (r2_[i] + s1 * (r3_[i] + s * (r4_[i] + s1 * r5_[i])));
        return y;
    }

    double t() const { return t_; }
    double t_old() const { return t_old_; }
    const State& y() const { return y_; }
    const State& y_old() const { return y_old_; }
    const State& dydt() const { return k1_; }
    double step_size() const { return h_; }
    std::size_t accepted() const { return accepted_; }
    std::size_t rejected() const { return rejected_; }

private:
    double initial_step() {
        // Hairer's starting-step heuristic.
        auto norm = [&](const State& v, const State& scale_from) {
            double s = 0.0;
            for (std::size_t i = 0; i < N; ++i) {
                const double sc = atol_ + rtol_ * std::abs(scale_from[i]);
                s += (v[i] / sc) * (v[i] / sc);
            }
            return std::sqrt(s / double(N));
        };
        const double dnf = norm(k1_, y_), dny = norm(y_, y_);
        double h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : 0.01 * dny / dnf;
        State y1, f1;
        for (std::size_t i = 0; i < N; ++i) y1[i] = y_[i] + dir_ * h * k1_[i];
        f_(t_ + dir_ * h, y1, f1);
        State df;
        for (std::size_t i = 0; i < N; ++i) df[i] = f1[i] - k1_[i];
        const double der2 = norm(df, y_) / h;
        const double der12 = std::max(std::abs(der2), std::sqrt(dnf));
        const double h1 = der12 <= 1e-15 ? std::max(1e-6, h * 1e-3) : std::pow(0.01 / der12, 0.2);
        return dir_ * std::min(100.0 * h, h1);
    }

    Rhs f_;
    double rtol_, atol_;
    std::array<bool, N> controlled_{};
    int dir_ = 1;
    double t_ = 0.0, t_old_ = 0.0, h_ = 0.0, h_used_ = 0.0, facold_ = 1e-4;
    bool reject_ = false;
    State y_{}, y_old_{}, k1_{};
    State r1_{}, r2_{}, r3_{}, r4_{}, r5_{};
    std::size_t accepted_ = 0, rejected_ = 0;
};

// First crossing of g from negative to non-negative inside the last step, located by bisection
// on the dense output. Returns the crossing time or NaN.
template <std::size_t N, class G>
double locate_crossing(const Dopri5<N>& solver, G g, double tol) {
    const double ta = solver.t_old(), tb = solver.t();
    double ga = g(solver.y_old()), gb = g(solver.y());
    if (!(ga < 0.0 && gb >= 0.0)) return std::numeric_limits<double>::quiet_NaN();
    double lo = ta, hi = tb;
    while (std::abs(hi - lo) > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (g(solver.dense(mid)) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return hi;
}

}  // namespace logspiral::detail
