#include "swlab/montecarlo.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace swlab;

TEST_CASE("region membership") {
    const McRegion box = McRegion::box(1, 2.0, 3.0);
    CHECK(box.contains({{1.5, 0.0}, 2.9}));
    CHECK_FALSE(box.contains({{2.5, 0.0}, 1.0}));
    CHECK_FALSE(box.contains({{0.0, 0.0}, -0.1}));

    const McRegion ball = McRegion::ball_plus(1, 1.0);
    CHECK(ball.contains({{0.5, 0.0}, 0.5}));
    CHECK_FALSE(ball.contains({{1.0, 0.0}, 0.5}));

    const McRegion ann = McRegion::annulus_plus(1, 1.0, 2.0);
    CHECK(ann.contains({{1.2, 0.0}, 0.5}));
    CHECK_FALSE(ann.contains({{0.5, 0.0}, 0.5}));
    CHECK_FALSE(ann.contains({{2.5, 0.0}, 0.5}));
    CHECK_THROWS_AS(McRegion::annulus_plus(1, 2.0, 1.0), std::domain_error);

    const McRegion comp = McRegion::complement_ball_plus(1, 1.0, 3.0, 3.0);
    CHECK(comp.contains({{2.0, 0.0}, 1.0}));
    CHECK_FALSE(comp.contains({{0.3, 0.0}, 0.3}));
}

TEST_CASE("constant over a box integrates exactly") {
    const McRegion box = McRegion::box(1, 2.0, 3.0);
    const McResult res = mc_integral([](const HalfPoint&) { return 1.0; }, box,
                                     100'000, 7);
    CHECK(res.estimate == doctest::Approx(12.0).epsilon(1e-12));
    CHECK(res.stderr_est < 1e-12);
    CHECK_FALSE(res.divergence_warning);
}

TEST_CASE("results are deterministic for a fixed seed") {
    const McRegion box = McRegion::box(1, 1.0, 1.0);
    auto f = [](const HalfPoint& p) { return p.x[0] * p.x[0] + p.t; };
    const McResult a = mc_integral(f, box, 300'000, 42);
    const McResult b = mc_integral(f, box, 300'000, 42);
    CHECK(a.estimate == b.estimate);
    CHECK(a.stderr_est == b.stderr_est);
    const McResult c = mc_integral(f, box, 300'000, 43);
    CHECK(a.estimate != c.estimate);
}

TEST_CASE("half-disk volume within statistical error") {
    // upper half disk of radius 1: area pi/2
    const McRegion ball = McRegion::ball_plus(1, 1.0);
    const McResult res = mc_integral([](const HalfPoint&) { return 1.0; }, ball,
                                     1'000'000, 2024);
    CHECK(std::abs(res.estimate - M_PI / 2.0) < 4.0 * res.stderr_est);
    CHECK(res.stderr_est < 3e-3);
}

TEST_CASE("importance grading handles an integrable t-singularity") {
    // int_0^1 int_{-1}^{1} t^{-1/2} dx dt = 4
    const McRegion box = McRegion::box(1, 1.0, 1.0);
    auto f = [](const HalfPoint& p) { return std::pow(p.t, -0.5); };
    const McResult res = mc_integral(f, box, 1'000'000, 5, 0.5);
    CHECK(std::abs(res.estimate - 4.0) < 4.0 * res.stderr_est + 1e-9);
    // with matched grading the weighted integrand is bounded: tight stderr
    CHECK(res.stderr_est < 2e-3);
    CHECK_FALSE(res.divergence_warning);
}

TEST_CASE("polynomial moment against the closed form") {
    // int over [-1,1] x (0,2] of x^2 t dt dx = (2/3) * 2 = 4/3
    const McRegion box = McRegion::box(1, 1.0, 2.0);
    auto f = [](const HalfPoint& p) { return p.x[0] * p.x[0] * p.t; };
    const McResult res = mc_integral(f, box, 1'000'000, 99);
    CHECK(std::abs(res.estimate - 4.0 / 3.0) < 4.0 * res.stderr_est);
}

TEST_CASE("argument guards") {
    const McRegion box = McRegion::box(1, 1.0, 1.0);
    auto f = [](const HalfPoint&) { return 1.0; };
    CHECK_THROWS_AS(mc_integral(f, box, 0, 1), std::domain_error);
    CHECK_THROWS_AS(mc_integral(f, box, 100, 1, 1.0), std::domain_error);
    CHECK_THROWS_AS(mc_integral(f, box, 100, 1, -0.1), std::domain_error);
}
