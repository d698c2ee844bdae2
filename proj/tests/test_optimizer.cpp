#include <doctest.h>

#include "cvbell/bell.hpp"
#include "cvbell/fock.hpp"
#include "cvbell/optimizer.hpp"

#include <cmath>
#include <random>

using namespace cvbell;

TEST_CASE("quadratic bowl") {
    OptimizeSpec spec;
    spec.functional = [](std::span<const double> x) {
        return -(x[0] - 0.3) * (x[0] - 0.3) - (x[1] + 0.1) * (x[1] + 0.1);
    };
    spec.direction = Direction::maximize;
    spec.dim = 2;
    spec.lower = {-1.0, -1.0};
    spec.upper = {1.0, 1.0};
    spec.restarts = 4;
    const auto r = optimize(spec);
    CHECK(r.value == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(r.point[0] == doctest::Approx(0.3).epsilon(1e-5));
    CHECK(r.point[1] == doctest::Approx(-0.1).epsilon(1e-5));
    CHECK(r.converged);
}

TEST_CASE("deterministic for a fixed seed") {
    OptimizeSpec spec;
    spec.functional = [](std::span<const double> x) {
        return std::sin(3.0 * x[0]) * std::cos(2.0 * x[1]) + 0.3 * std::sin(7.0 * x[0] * x[1]);
    };
    spec.direction = Direction::maximize;
    spec.dim = 2;
    spec.lower = {-3.0, -3.0};
    spec.upper = {3.0, 3.0};
    spec.restarts = 16;
    spec.seed = 42;
    const auto a = optimize(spec);
    const auto b = optimize(spec);
    CHECK(a.value == b.value);
    CHECK(a.point == b.point);
    spec.seed = 43;
    const auto c = optimize(spec);
    CHECK(std::abs(c.value - a.value) < 1e-6);  // same optimum, different path
}

TEST_CASE("never worse than seed points") {
    OptimizeSpec spec;
    // narrow spike the box search would miss
    spec.functional = [](std::span<const double> x) {
        return std::exp(-1e8 * (x[0] - 0.123456) * (x[0] - 0.123456));
    };
    spec.direction = Direction::maximize;
    spec.dim = 1;
    spec.lower = {-500.0};
    spec.upper = {500.0};
    spec.restarts = 2;
    spec.seed_points = {{0.123456}};
    const auto r = optimize(spec);
    CHECK(r.value >= 1.0 - 1e-12);
}

TEST_CASE("non-finite value is reported with the point") {
    OptimizeSpec spec;
    spec.functional = [](std::span<const double> x) {
        return x[0] > 0.5 ? std::numeric_limits<double>::quiet_NaN() : x[0];
    };
    spec.direction = Direction::maximize;
    spec.dim = 1;
    spec.lower = {0.0};
    spec.upper = {1.0};
    spec.restarts = 4;
    CHECK_THROWS_WITH_AS(optimize(spec), doctest::Contains("non-finite"), std::runtime_error);
}

TEST_CASE("two-qubit singlet saturates cirelson in the gisin-peres formalism") {
    CMat c(2, 2);
    c << 0.0, 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 0.0;
    const TwoModeState singlet{c, FockCutoff(1), 0.0};
    const GisinPeresCorrelations table(singlet);

    OptimizeSpec spec;
    spec.functional = [&](std::span<const double> x) {
        return table.chsh({{x[0]}, {x[1]}, {x[2]}, {x[3]}});
    };
    spec.direction = Direction::maximize_abs;
    spec.dim = 4;
    spec.lower = std::vector<double>(4, -M_PI);
    spec.upper = std::vector<double>(4, M_PI);
    spec.restarts = 20;
    spec.seed = 7;
    const auto r = optimize(spec);
    CHECK(r.score == doctest::Approx(kCirelson).epsilon(1e-6));
    CHECK(r.score <= kCirelson + 1e-6);
}

TEST_CASE("gbw tmss optimum from the unit box") {
    // spec example: r=5, 50 restarts, |settings| <= 1
    const double r = 5.0;
    OptimizeSpec spec;
    spec.functional = [r](std::span<const double> x) {
        return chsh_gbw(StateKind::tmss, r,
                        {{Complex(x[0], 0.0)}, {Complex(x[1], 0.0)}, {Complex(x[2], 0.0)},
                         {Complex(x[3], 0.0)}});
    };
    spec.direction = Direction::maximize_abs;
    spec.dim = 4;
    spec.lower = std::vector<double>(4, -1.0);
    spec.upper = std::vector<double>(4, 1.0);
    spec.restarts = 50;
    spec.seed = 7;
    const auto res = optimize(spec);
    const double limit = 8.0 / std::pow(3.0, 9.0 / 8.0);
    CHECK(res.score == doctest::Approx(limit).epsilon(1e-3));
}

TEST_CASE("ecs pseudospin optimum matches the series K") {
    const double g = 1.0;
    const double k = k_of_gamma(g);
    OptimizeSpec spec;
    spec.functional = [g](std::span<const double> x) {
        return chsh_pseudospin_analytic(
            StateKind::ecs, g,
            {{x[0], x[4]}, {x[1], x[5]}, {x[2], 0.0}, {x[3], 0.0}});
    };
    spec.direction = Direction::maximize_abs;
    spec.dim = 6;
    spec.lower = std::vector<double>(6, -M_PI);
    spec.upper = std::vector<double>(6, M_PI);
    spec.restarts = 32;
    spec.seed = 11;
    const auto r = optimize(spec);
    CHECK(r.score == doctest::Approx(2.0 * std::sqrt(1.0 + k * k)).epsilon(1e-6));
}

TEST_CASE("any entangled schmidt-rank-3 state violates the inequality") {
    std::mt19937 rng(71);
    std::uniform_real_distribution<double> uni(0.2, 1.0);
    for (int trial = 0; trial < 3; ++trial) {
        const FockCutoff cut(5);
        CMat c = CMat::Zero(6, 6);
        c(0, 0) = uni(rng);
        c(1, 1) = uni(rng);
        c(2, 2) = uni(rng);
        c /= c.norm();
        const TwoModeState psi{c, cut, 0.0};
        const GisinPeresCorrelations table(psi);

        OptimizeSpec spec;
        spec.functional = [&](std::span<const double> x) {
            return table.chsh({{x[0]}, {x[1]}, {x[2]}, {x[3]}});
        };
        spec.direction = Direction::maximize_abs;
        spec.dim = 4;
        spec.lower = std::vector<double>(4, -M_PI);
        spec.upper = std::vector<double>(4, M_PI);
        spec.restarts = 32;
        spec.seed = 100 + trial;
        const auto r = optimize(spec);
        CHECK(r.score > 2.0);
        CHECK(r.score <= kCirelson + 1e-6);
    }
}

TEST_CASE("sweep warm starts and the tmss monotone envelope") {
    SweepSpec spec;
    spec.functional = [](double r, std::span<const double> x) {
        return chsh_pseudospin_analytic(
            StateKind::tmss, r, {{x[0], 0.0}, {x[1], 0.0}, {x[2], 0.0}, {x[3], 0.0}});
    };
    spec.direction = Direction::maximize_abs;
    spec.dim = 4;
    spec.box_for = [](double, std::vector<double>& lo, std::vector<double>& hi) {
        lo.assign(4, -M_PI);
        hi.assign(4, M_PI);
    };
    spec.restarts = 16;
    spec.seed = 3;

    std::vector<double> grid;
    for (int i = 0; i <= 30; ++i) grid.push_back(0.1 * i);
    const auto results = sweep(spec, grid);
    REQUIRE(results.size() == grid.size());
    for (size_t i = 1; i < results.size(); ++i)
        CHECK(results[i].score >= results[i - 1].score - 1e-9);
    CHECK(results.front().score == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(results.back().score ==
          doctest::Approx(2.0 * std::sqrt(1.0 + std::tanh(6.0) * std::tanh(6.0))).epsilon(1e-8));
    for (const auto& r : results) CHECK(r.score <= kCirelson + 1e-6);
}

TEST_CASE("ecs sweep dips and recovers") {
    SweepSpec spec;
    spec.functional = [](double g, std::span<const double> x) {
        return chsh_pseudospin_analytic(
            StateKind::ecs, g, {{x[0], 0.0}, {x[1], 0.0}, {x[2], 0.0}, {x[3], 0.0}});
    };
    spec.direction = Direction::maximize_abs;
    spec.dim = 4;
    spec.box_for = [](double, std::vector<double>& lo, std::vector<double>& hi) {
        lo.assign(4, -M_PI);
        hi.assign(4, M_PI);
    };
    spec.restarts = 16;
    spec.seed = 5;
    const std::vector<double> grid{0.05, 1.0, 3.0};
    const auto res = sweep(spec, grid);
    CHECK(res[0].score > res[1].score);  // gamma -> 0 endpoint high
    CHECK(res[2].score > res[1].score);  // recovery at larger gamma
    CHECK(res[0].score > 2.82);
}
