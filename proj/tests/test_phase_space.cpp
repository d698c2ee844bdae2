#include <doctest.h>

#include "cvbell/fock.hpp"
#include "cvbell/observables.hpp"
#include "cvbell/phase_space.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace cvbell;

namespace {
constexpr double kPi = std::numbers::pi;
const FockCutoff kCut48(48);
const FockCutoff kCut64(64);

Complex random_point(std::mt19937& rng, double box) {
    std::uniform_real_distribution<double> uni(-box, box);
    return Complex(uni(rng), uni(rng));
}
} // namespace

TEST_CASE("wigner tmss closed form") {
    CHECK(wigner_tmss({0.0, 0.0}, 0.7) == doctest::Approx(4.0 / (kPi * kPi)).epsilon(1e-14));
    CHECK(wigner_tmss({1.0, 0.0}, 0.0) ==
          doctest::Approx(4.0 / (kPi * kPi) * std::exp(-2.0)).epsilon(1e-12));
    CHECK_THROWS_AS(wigner_tmss({0.0, 0.0}, -1.0), std::invalid_argument);

    const double r = 0.5;
    const auto tm = make_tmss(r, kCut48);
    CHECK(wigner_tmss({Complex(0.3, 0.0), Complex(0.3, 0.0)}, r) ==
          doctest::Approx(wigner_from_state({Complex(0.3, 0.0), Complex(0.3, 0.0)}, tm))
              .epsilon(1e-6));

    std::mt19937 rng(17);
    for (int k = 0; k < 25; ++k) {
        const PhasePoint p{random_point(rng, 0.8), random_point(rng, 0.8)};
        CHECK(wigner_tmss(p, r) == doctest::Approx(wigner_from_state(p, tm)).epsilon(1e-6));
        CHECK(std::abs(wigner_tmss(p, r)) <= 4.0 / (kPi * kPi) + 1e-12);
    }
}

TEST_CASE("wigner ecs closed form") {
    CHECK_THROWS_AS(wigner_ecs({0.0, 0.0}, 0.0), std::invalid_argument);
    const double g = 1.0;
    const auto ecs = make_ecs(g, kCut48);
    std::mt19937 rng(23);
    for (int k = 0; k < 25; ++k) {
        const PhasePoint p{random_point(rng, 0.8), random_point(rng, 0.8)};
        const double w = wigner_ecs(p, g);
        CHECK(w == doctest::Approx(wigner_from_state(p, ecs)).epsilon(1e-6));
        // joint-parity symmetry W(alpha, beta) = W(-alpha, -beta)
        CHECK(w == doctest::Approx(wigner_ecs({-p.alpha, -p.beta}, g)).epsilon(1e-12));
        CHECK(std::abs(w) <= 4.0 / (kPi * kPi) + 1e-12);
    }
    // mode swap with gamma -> -gamma antisymmetry: |W| values match
    for (int k = 0; k < 25; ++k) {
        const PhasePoint p{random_point(rng, 1.0), random_point(rng, 1.0)};
        CHECK(wigner_ecs(p, g) == doctest::Approx(wigner_ecs({p.beta, p.alpha}, -g)).epsilon(1e-10));
    }
}

TEST_CASE("q function from state") {
    const auto vac = product_state(make_coherent(0.0, kCut48), make_coherent(0.0, kCut48));
    CHECK(q_two_mode({0.0, 0.0}, vac) == doctest::Approx(1.0 / (kPi * kPi)).epsilon(1e-12));

    const double r = 1.0;
    const auto tm = make_tmss(r, kCut64);
    const double g = 1.0;
    const auto ecs = make_ecs(g, kCut64);
    std::mt19937 rng(31);
    for (int k = 0; k < 25; ++k) {
        const PhasePoint p{random_point(rng, 1.2), random_point(rng, 1.2)};
        CHECK(q_tmss(p, r) == doctest::Approx(q_two_mode(p, tm)).epsilon(1e-8));
        CHECK(q_ecs(p, g) == doctest::Approx(q_two_mode(p, ecs)).epsilon(1e-8));
        CHECK(q_tmss(p, r) >= 0.0);
        CHECK(q_ecs(p, g) >= -1e-15);
        CHECK(q_tmss(p, r) <= 1.0 / (kPi * kPi) + 1e-12);
        CHECK(q_ecs(p, g) <= 1.0 / (kPi * kPi) + 1e-12);
    }
}

TEST_CASE("q tmss special points") {
    const double r = 0.9;
    const double ch2 = std::cosh(r) * std::cosh(r);
    CHECK(q_tmss({0.0, 0.0}, r) == doctest::Approx(1.0 / (kPi * kPi * ch2)).epsilon(1e-14));
    const PhasePoint p{Complex(0.4, -0.2), Complex(-0.1, 0.6)};
    CHECK(q_tmss(p, 0.0) ==
          doctest::Approx(std::exp(-std::norm(p.alpha) - std::norm(p.beta)) / (kPi * kPi))
              .epsilon(1e-13));
}

TEST_CASE("q ecs dominant peak and positivity") {
    const double g = 1.0;
    const double n2 = 1.0 / (2.0 - 2.0 * std::exp(-4.0 * g * g));
    const double peak = q_ecs({Complex(g, 0.0), Complex(-g, 0.0)}, g);
    CHECK(std::abs(peak * kPi * kPi / n2 - 1.0) < 0.04);

    std::mt19937 rng(41);
    for (int k = 0; k < 10000; ++k) {
        const PhasePoint p{random_point(rng, 3.0), random_point(rng, 3.0)};
        CHECK(q_ecs(p, g) >= -1e-15);
    }
}

TEST_CASE("marginal q functions") {
    const auto vac = product_state(make_coherent(0.0, kCut48), make_coherent(0.0, kCut48));
    CHECK(q_marginal_mode1(vac, 0.0) == doctest::Approx(1.0 / kPi).epsilon(1e-12));

    // TMSS marginal is a thermal Q
    const double r = 0.8;
    const auto tm = make_tmss(r, kCut64);
    std::mt19937 rng(43);
    for (int k = 0; k < 10; ++k) {
        const Complex a = random_point(rng, 1.0);
        CHECK(q_marginal_mode1(tm, a) == doctest::Approx(q1_tmss(a, r)).epsilon(1e-8));
        CHECK(q_marginal_mode2(tm, a) == doctest::Approx(q1_tmss(a, r)).epsilon(1e-8));
    }

    // ECS closed-form marginal against the state
    const double g = 1.0;
    const auto ecs = make_ecs(g, kCut64);
    for (int k = 0; k < 10; ++k) {
        const Complex a = random_point(rng, 1.0);
        CHECK(q_marginal_mode1(ecs, a) == doctest::Approx(q1_ecs(a, g)).epsilon(1e-8));
        CHECK(q_marginal_mode2(ecs, a) == doctest::Approx(q1_ecs(a, g)).epsilon(1e-8));
    }
}

TEST_CASE("ecs marginal by grid quadrature") {
    // integrate q_ecs over beta on the spec grid; matches the closed marginal
    const double g = 1.0;
    const Complex alpha(0.35, -0.2);
    const double lim = g + 5.0, step = 0.05;
    double integral = 0.0;
    for (double x = -lim; x <= lim + 1e-12; x += step)
        for (double y = -lim; y <= lim + 1e-12; y += step)
            integral += q_ecs({alpha, Complex(x, y)}, g);
    integral *= step * step;  // int d^2beta Q12(alpha, beta) = Q1(alpha)
    CHECK(std::abs(integral - q1_ecs(alpha, g)) < 1e-3);
}

TEST_CASE("single photon q closed forms") {
    // state (|0>|1> - |1>|0>)/sqrt(2) as a truncated matrix
    CMat c = CMat::Zero(33, 33);
    c(0, 1) = 1.0 / std::sqrt(2.0);
    c(1, 0) = -1.0 / std::sqrt(2.0);
    const TwoModeState sp{c, FockCutoff(32), 0.0};
    std::mt19937 rng(51);
    for (int k = 0; k < 15; ++k) {
        const PhasePoint p{random_point(rng, 1.2), random_point(rng, 1.2)};
        CHECK(q12_single_photon(p) == doctest::Approx(q_two_mode(p, sp)).epsilon(1e-10));
        CHECK(q1_single_photon(p.alpha) ==
              doctest::Approx(q_marginal_mode1(sp, p.alpha)).epsilon(1e-10));
    }
}
