#include "blasius/nitm/nitm.hpp"
#include "blasius/shooting/shooting.hpp"
#include "support/rk4_oracle.hpp"

#include <cmath>

#include <doctest.h>

using namespace blasius;
using namespace blasius::shooting;

namespace {

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected blasius::Error");
    return ErrorKind::io;
}

} // namespace

TEST_CASE("shoot_residual examples") {
    const ShootingConfig cfg;
    CHECK(std::abs(shoot_residual(1.0, 0.332057268052, cfg)) < 1e-6);
    CHECK(shoot_residual(1.0, 0.05, cfg) < 0.0);
    const double at_one = shoot_residual(1.0, 1.0, cfg);
    CHECK(at_one == doctest::Approx(1.08541).epsilon(2e-6));
    CHECK(at_one > 0.0);
    CHECK(std::abs(at_one - (oracle::frozen_fp_star_n1 - 1.0)) < 1e-10);
    CHECK(kind_of([&] { shoot_residual(1.0, 0.0, cfg); }) == ErrorKind::domain);
}

TEST_CASE("shoot_residual is increasing in the guess") {
    const ShootingConfig cfg;
    for (double n : {0.2, 0.5, 1.0, 1.5, 2.0}) {
        CAPTURE(n);
        double prev = shoot_residual(n, 0.05, cfg);
        for (double g = 0.1; g <= 1.5; g += 0.1) {
            const double r = shoot_residual(n, g, cfg);
            CHECK(r > prev);
            prev = r;
        }
    }
}

TEST_CASE("solve_shooting examples") {
    const ShootingConfig cfg;
    const auto one = solve_shooting(1.0, cfg);
    CHECK(std::abs(one.fpp0 - 0.332057) < 1e-6);
    CHECK(std::abs(one.residual) <= cfg.root_tol);
    CHECK(one.fpp0 >= one.bracket_lo);
    CHECK(one.fpp0 <= one.bracket_hi);
    CHECK(one.iterations >= 1);
    CHECK(one.iterations <= cfg.max_iters);
    CHECK(one.profile.back().eta == cfg.eta_inf);
    CHECK(std::abs(one.profile.back().fp - 1.0) <= cfg.root_tol);

    const auto two = solve_shooting(2.0, cfg);
    CHECK(std::abs(two.fpp0 - 0.399852) <= 2e-4);
    CHECK(std::abs(two.fpp0 - oracle::bisection_shoot(2.0, 10.0, 0.05, 1.5, 2.5e-4)) < 1e-8);
}

TEST_CASE("oracle equivalence at matched truncation") {
    const nitm::NitmConfig nc;
    for (int k = 1; k <= 19; ++k) {
        if (k == 5) continue;
        const double n = 0.1 * k;
        CAPTURE(n);
        const auto r = nitm::solve_nitm(n, nc);
        ShootingConfig sc;
        sc.eta_inf = r.profile.eta_end();
        CHECK(std::abs(solve_shooting(n, sc).fpp0 - r.fpp0) <= 1e-6);
    }
}

TEST_CASE("residual sign structure around the root") {
    const ShootingConfig cfg;
    for (double n : {0.3, 0.5, 1.0, 1.7, 2.0}) {
        CAPTURE(n);
        const double root = solve_shooting(n, cfg).fpp0;
        CHECK(shoot_residual(n, 0.5 * root, cfg) < 0.0);
        CHECK(shoot_residual(n, 0.9 * root, cfg) < 0.0);
        CHECK(shoot_residual(n, 1.1 * root, cfg) > 0.0);
        CHECK(shoot_residual(n, 2.0 * root, cfg) > 0.0);
    }
}

TEST_CASE("bracket expansion and failures") {
    ShootingConfig cfg;
    cfg.bracket_lo = 0.5;  // residual already positive: expands downward
    cfg.bracket_hi = 0.9;
    const auto r = solve_shooting(1.0, cfg);
    CHECK(r.bracket_lo < 0.5);
    CHECK(std::abs(r.fpp0 - 0.332057336) < 1e-8);

    cfg.bracket_lo = 10.0;
    cfg.bracket_hi = 20.0;
    CHECK(kind_of([&] { solve_shooting(1.0, cfg); }) == ErrorKind::bracket);

    cfg = {};
    cfg.max_iters = 1;
    CHECK(kind_of([&] { solve_shooting(1.0, cfg); }) == ErrorKind::convergence);

    cfg = {};
    cfg.bracket_lo = 0.0;
    CHECK(kind_of([&] { solve_shooting(1.0, cfg); }) == ErrorKind::specification);
    cfg = {};
    cfg.root_tol = 0.0;
    CHECK(kind_of([&] { solve_shooting(1.0, cfg); }) == ErrorKind::specification);
}

TEST_CASE("shooting is deterministic") {
    const ShootingConfig cfg;
    for (double n : {0.4, 1.3}) {
        const auto a = solve_shooting(n, cfg);
        const auto b = solve_shooting(n, cfg);
        CHECK(a.fpp0 == b.fpp0);
        CHECK(a.residual == b.residual);
        CHECK(a.iterations == b.iterations);
        CHECK(a.profile.size() == b.profile.size());
    }
}
