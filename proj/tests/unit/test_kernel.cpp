#include <catch_amalgamated.hpp>

#include <cmath>

#include "logspiral/errors.hpp"
#include "logspiral/kernel.hpp"
#include "oracles.hpp"

using namespace logspiral;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("kernel matches the extended-precision reference form", "[kernel]") {
    for (double beta : {0.05, 0.3, 0.6, 1.0, 1.8, 5.0})
        for (double th : {1e-3, 0.5, 1.0, std::numbers::pi, 4.0, 6.0, two_pi - 1e-3}) {
            const auto k = eval_kernel(SpiralParams(beta), th);
            const auto ref = oracle::kernel(beta, th);
            const double scale = std::max({1.0, std::fabs(ref.K), std::fabs(ref.K1), std::fabs(ref.K2)});
            CHECK_THAT(k.K, WithinAbs(ref.K, 1e-13 * scale));
            CHECK_THAT(k.K1, WithinAbs(ref.K1, 1e-13 * scale));
            CHECK_THAT(k.K2, WithinAbs(ref.K2, 1e-13 * scale));
        }
}

TEST_CASE("kernel at beta = 1, theta = pi against the reference", "[kernel]") {
    const auto k = eval_kernel(SpiralParams(1.0), std::numbers::pi);
    CHECK_THAT(k.K, WithinAbs(oracle::kernel(1.0, std::numbers::pi).K, 1e-14));
}

TEST_CASE("derivatives agree with central differences", "[kernel]") {
    const SpiralParams p(0.5);
    auto K = [&](double t) { return eval_kernel(p, t).K; };
    CHECK_THAT(eval_kernel(p, 1.0).K1, WithinAbs(oracle::central_diff(K, 1.0, 1e-6), 1e-7));

    for (double beta : {0.3, 0.9, 2.5}) {
        const SpiralParams q(beta);
        auto Kq = [&](double t) { return eval_kernel(q, t).K; };
        auto K1q = [&](double t) { return eval_kernel(q, t).K1; };
        for (int i = 1; i <= 100; ++i) {
            const double th = two_pi * i / 101.0;
            CHECK_THAT(eval_kernel(q, th).K1, WithinAbs(oracle::central_diff(Kq, th, 1e-5), 1e-6));
            CHECK_THAT(eval_kernel(q, th).K2, WithinAbs(oracle::central_diff(K1q, th, 1e-5), 1e-6));
        }
    }
}

TEST_CASE("one-sided limits at zero", "[kernel]") {
    SECTION("jump equals 1/(1+beta^2)") {
        const auto l = kernel_limits(SpiralParams(0.5));
        CHECK_THAT(l.k1_plus0 - l.k1_minus0, WithinAbs(0.8, 1e-12));
        for (int i = 0; i < 100; ++i) {
            const double beta = 0.05 + (5.0 - 0.05) * (i + 0.5) / 100.0;
            const auto m = kernel_limits(SpiralParams(beta));
            CHECK_THAT(m.k1_plus0 - m.k1_minus0, WithinAbs(1.0 / (1.0 + beta * beta), 1e-10));
            CHECK_THAT(m.k1_zero, WithinAbs(0.5 * (m.k1_plus0 + m.k1_minus0), 1e-15));
        }
    }
    SECTION("limits agree with the interior values near the ends") {
        const SpiralParams p(0.7);
        const auto l = kernel_limits(p);
        const auto ref_plus = oracle::kernel(0.7, 1e-9);
        const auto ref_minus = oracle::kernel(0.7, two_pi - 1e-9);
        CHECK_THAT(l.k1_plus0, WithinAbs(ref_plus.K1, 1e-8));
        CHECK_THAT(l.k1_minus0, WithinAbs(ref_minus.K1, 1e-8));
        CHECK_THAT(l.k0, WithinAbs(ref_plus.K, 1e-8));
        CHECK_THAT(ref_plus.K, WithinAbs(ref_minus.K, 1e-8));
    }
    SECTION("K(0) from both ends to 12 digits") {
        for (double beta : {0.2, 1.0, 3.0}) {
            const SpiralParams p(beta);
            CHECK_THAT(kernel_closed(p, 0.0).K, WithinAbs(kernel_closed(p, two_pi).K, 1e-12));
        }
    }
    SECTION("K'(0) < 0 at beta = 0.3 and the ordering at beta = 2") {
        CHECK(kernel_limits(SpiralParams(0.3)).k1_zero < 0.0);
        const auto l = kernel_limits(SpiralParams(2.0));
        CHECK(l.k1_minus0 < l.k1_zero);
        CHECK(l.k1_zero < 0.0);
        CHECK(l.k1_plus0 < -l.k1_minus0);
    }
}

TEST_CASE("reflected evaluation", "[kernel]") {
    const SpiralParams p(0.3);
    const auto a = eval_kernel_reflected(p, 0.5);
    const auto b = eval_kernel(p, two_pi - 0.5);
    CHECK(a.K == b.K);
    CHECK(a.K1 == b.K1);
    const auto c = eval_kernel_reflected(p, std::numbers::pi);
    const auto d = eval_kernel(p, std::numbers::pi);
    CHECK_THAT(c.K, WithinAbs(d.K, 1e-15));

    SECTION("negative beta mirrors the angle") {
        for (double th : {0.3, 1.7, 3.0, 5.5}) {
            const auto neg = eval_kernel(SpiralParams(-0.6), th);
            const auto pos = eval_kernel(SpiralParams(0.6), two_pi - th);
            CHECK_THAT(neg.K, WithinAbs(pos.K, 1e-12));
        }
    }
}

TEST_CASE("domain errors", "[kernel]") {
    CHECK_THROWS_AS(SpiralParams(0.0), DomainError);
    CHECK_THROWS_AS(SpiralParams(std::nan("")), DomainError);
    const SpiralParams p(0.5);
    CHECK_THROWS_AS(eval_kernel(p, 0.0), DomainError);
    CHECK_THROWS_AS(eval_kernel(p, two_pi), DomainError);
    CHECK_THROWS_AS(eval_kernel(p, -1.0), DomainError);
}

TEST_CASE("parameter invariants", "[kernel]") {
    for (double beta : {0.01, 0.5, 4.0}) {
        const SpiralParams p(beta);
        CHECK(p.gamma() > 0.0);
        CHECK(p.gamma() < 4.0 * std::numbers::pi);
        CHECK_THAT(p.z().real(), WithinRel(two_pi * beta / (1 + beta * beta), 1e-15));
        CHECK_THAT(p.z().imag(), WithinRel(-two_pi / (1 + beta * beta), 1e-15));
    }
}
