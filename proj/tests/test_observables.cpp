#include <doctest.h>

#include "cvbell/bell.hpp"
#include "cvbell/fock.hpp"
#include "cvbell/observables.hpp"

#include <cmath>
#include <random>

using namespace cvbell;

namespace {
const FockCutoff kCut63(63);  // even dimension, exact involutions
const FockCutoff kCut64(64);

// Laguerre L_n(x) for n <= 3, an independent oracle for <n|Pi(alpha)|n> via
// the standard displaced-parity closed form (-1)^n e^{-2x} L_n(4x).
double laguerre_small(int n, double x) {
    switch (n) {
        case 0: return 1.0;
        case 1: return 1.0 - x;
        case 2: return 1.0 - 2.0 * x + x * x / 2.0;
        case 3: return 1.0 - 3.0 * x + 1.5 * x * x - x * x * x / 6.0;
    }
    return 0.0;
}
} // namespace

TEST_CASE("pseudospin components") {
    const auto sz = pseudospin(PseudospinSetting{0.0, 0.0}, kCut63);
    CHECK(sz.matrix(0, 0).real() == doctest::Approx(-1.0));  // s_z|0> = -|0>
    CHECK(sz.matrix(1, 1).real() == doctest::Approx(1.0));

    const auto sx = pseudospin(PseudospinSetting{M_PI / 2.0, 0.0}, kCut63);
    CHECK(sx.matrix(1, 0).real() == doctest::Approx(1.0));  // <1|s_x|0> = 1
    CHECK((sx.matrix - pseudospin_sx(kCut63).matrix).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("pseudospin squares to identity at even dimension") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> ang(-M_PI, M_PI);
    for (int k = 0; k < 5; ++k) {
        const PseudospinSetting s{ang(rng), ang(rng)};
        const auto op = pseudospin(s, kCut63);
        CHECK((op.matrix - op.matrix.adjoint()).cwiseAbs().maxCoeff() < 1e-15);
        const CMat sq = op.matrix * op.matrix;
        CHECK((sq - CMat::Identity(64, 64)).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("pseudospin is 2pi periodic") {
    const PseudospinSetting s{0.7, -1.3};
    const PseudospinSetting sp{0.7 + 2.0 * M_PI, -1.3 + 2.0 * M_PI};
    CHECK((pseudospin(s, kCut63).matrix - pseudospin(sp, kCut63).matrix).cwiseAbs().maxCoeff() <
          1e-12);
}

TEST_CASE("gisin-peres observable") {
    CHECK_THROWS_AS(gisin_peres(1, 0.0), std::invalid_argument);

    // N=2 block equals the pseudospin block (documented diag(-1,+1) Gamma_z
    // orientation)
    for (double th : {0.0, 0.4, 1.9, -2.2}) {
        const auto a2 = gisin_peres(2, th);
        const auto ps = pseudospin(PseudospinSetting{th, 0.0}, FockCutoff(1));
        CHECK((a2.matrix - ps.matrix).cwiseAbs().maxCoeff() < 1e-15);
    }

    // odd N: lone corner element E = +1; block convention diag(-1,+1)
    const auto a3 = gisin_peres(3, 0.0);
    CHECK(a3.matrix(0, 0).real() == doctest::Approx(-1.0));
    CHECK(a3.matrix(1, 1).real() == doctest::Approx(1.0));
    CHECK(a3.matrix(2, 2).real() == doctest::Approx(1.0));

    // finite-N limit link: entrywise equal to the pseudospin matrix at even N
    for (double th : {0.3, 1.1, 2.7}) {
        const auto a64 = gisin_peres(64, th);
        const auto ps = pseudospin(PseudospinSetting{th, 0.0}, kCut63);
        CHECK((a64.matrix - ps.matrix).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("bw displaced parity") {
    const auto p0 = bw_parity(DisplacementSetting{0.0}, kCut63);
    CHECK(p0.matrix(0, 0).real() == doctest::Approx(1.0));
    CHECK(p0.matrix(1, 1).real() == doctest::Approx(-1.0));

    // coherent-state parity <0|Pi(alpha)|0> = e^{-2|alpha|^2}
    for (Complex a : {Complex(0.6, 0.0), Complex(0.3, -0.8)}) {
        const auto p = bw_parity(DisplacementSetting{a}, kCut64);
        CHECK(p.matrix(0, 0).real() == doctest::Approx(std::exp(-2.0 * std::norm(a))).epsilon(1e-8));
        CHECK((p.matrix - p.matrix.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    }

    // involution on the lower 75% of the space
    const auto p = bw_parity(DisplacementSetting{Complex(0.5, 0.2)}, kCut64);
    const CMat sq = p.matrix * p.matrix;
    const int lo = (65 * 3) / 4;
    CHECK((sq.topLeftCorner(lo, lo) - CMat::Identity(lo, lo)).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("parity expectation of number states") {
    CHECK(parity_expectation_number_state(0, 0.0) == doctest::Approx(1.0));
    CHECK(parity_expectation_number_state(1, 0.0) == doctest::Approx(-1.0));
    CHECK_THROWS_AS(parity_expectation_number_state(-1, 1.0), std::invalid_argument);

    // matrix oracle against the closed form (-1)^n e^{-2a^2} L_n(4a^2)
    for (int n = 0; n <= 3; ++n) {
        for (double a : {0.3, 1.0, 2.0}) {
            const double sign = (n % 2 == 0) ? 1.0 : -1.0;
            const double closed = sign * std::exp(-2.0 * a * a) * laguerre_small(n, 4.0 * a * a);
            CHECK(parity_expectation_number_state(n, a) == doctest::Approx(closed).epsilon(1e-8));
        }
    }
}

TEST_CASE("parity expectation series forms") {
    // the corrected series reproduces the matrix oracle
    for (int n = 0; n <= 3; ++n) {
        for (double a : {0.3, 1.0, 2.0}) {
            const double oracle = parity_expectation_number_state(n, a);
            CHECK(parity_expectation_series(n, a, SeriesForm::corrected) ==
                  doctest::Approx(oracle).epsilon(1e-9));
        }
    }
    // the printed degree pairing does not (documented deviation)
    double max_dev = 0.0;
    for (double a : {0.5, 1.0, 1.5}) {
        max_dev = std::max(max_dev, std::abs(parity_expectation_series(1, a, SeriesForm::as_printed) -
                                             parity_expectation_number_state(1, a)));
    }
    CHECK(max_dev > 1e-3);
}

TEST_CASE("ch projector") {
    const auto x0 = ch_projector(ProjectorSetting{0.0}, kCut63);
    CHECK(x0.matrix(0, 0).real() == doctest::Approx(1.0));
    CHECK(x0.matrix(1, 1).real() == doctest::Approx(0.0));
    const auto x1 = ch_projector(ProjectorSetting{M_PI / 2.0}, kCut63);
    CHECK(x1.matrix(1, 1).real() == doctest::Approx(1.0));

    for (double th : {0.0, 0.8, 2.4}) {
        const auto xi = ch_projector(ProjectorSetting{th}, kCut63);
        CHECK(xi.matrix.trace().real() == doctest::Approx(1.0).epsilon(1e-14));
        CHECK((xi.matrix * xi.matrix - xi.matrix).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("bw ch projector (displaced vacuum)") {
    const auto z0 = bw_ch_projector(DisplacementSetting{0.0}, kCut63);
    CHECK(z0.matrix(0, 0).real() == doctest::Approx(1.0));
    CHECK(z0.matrix.trace().real() == doctest::Approx(1.0));

    const Complex alpha(0.4, 0.7), gamma(-0.3, 0.5);
    const auto z = bw_ch_projector(DisplacementSetting{alpha}, kCut64);
    const auto g = make_coherent(gamma, kCut64);
    const double got = expectation(g, z);
    CHECK(got == doctest::Approx(std::exp(-std::norm(gamma - alpha))).epsilon(1e-8));
    CHECK(z.matrix.trace().real() == doctest::Approx(1.0).epsilon(1e-8));
    CHECK((z.matrix * z.matrix - z.matrix).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("parity rotation") {
    const auto u0 = parity_rotation(0.0, kCut63);
    CHECK((u0.matrix - CMat::Identity(64, 64)).cwiseAbs().maxCoeff() == 0.0);

    const auto up = parity_rotation(0.9, kCut63);
    const auto um = parity_rotation(-0.9, kCut63);
    CHECK((up.matrix * um.matrix - CMat::Identity(64, 64)).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(up.unitarity_defect < 1e-15);

    // |<d|U(pi/2)|e>|^2 = K(gamma)
    for (double g : {0.3, 1.0, 2.0}) {
        const FockCutoff cut = default_cutoff(g * g);
        const FockCutoff even_cut(cut.n_max % 2 == 1 ? cut.n_max : cut.n_max + 1);
        const auto e = make_cat(g, CatParity::even, even_cut);
        const auto d = make_cat(g, CatParity::odd, even_cut);
        const auto u = parity_rotation(M_PI / 2.0, even_cut);
        const double fid = std::norm(matrix_element(d, u, e));
        CHECK(fid == doctest::Approx(k_of_gamma(g)).epsilon(1e-8));
    }
}

TEST_CASE("chi projector") {
    const auto c0 = chi_projector(0.0, kCut63);
    for (int n = 0; n < 64; ++n)
        CHECK(c0.matrix(n, n).real() == doctest::Approx(n % 2 == 0 ? 1.0 : 0.0));

    for (double th : {0.5, 1.7}) {
        const auto chi = chi_projector(th, kCut63);
        CHECK((chi.matrix * chi.matrix - chi.matrix).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((chi.matrix - chi.matrix.adjoint()).cwiseAbs().maxCoeff() < 1e-15);
        CHECK(chi.matrix.trace().real() == doctest::Approx(32.0).epsilon(1e-12));  // rank dim/2
    }

    // TMSS marginal: <chi(t) x I> = (cos^2 cosh^2 r + sin^2 sinh^2 r)/cosh 2r
    const double r = 0.8;
    const auto tm = make_tmss(r, kCut63);
    const auto id = make_identity(kCut63);
    for (double th : {0.0, 0.6, 1.9}) {
        const double got = expectation(tm, chi_projector(th, kCut63), id);
        const double c = std::cos(th), s = std::sin(th);
        const double want = (c * c * std::cosh(r) * std::cosh(r) + s * s * std::sinh(r) * std::sinh(r)) /
                            std::cosh(2.0 * r);
        CHECK(got == doctest::Approx(want).epsilon(1e-6));
    }
}

TEST_CASE("cat rotation fidelity") {
    CHECK(cat_rotation_fidelity(1.0, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(cat_rotation_fidelity(-1.0, 0.1), std::invalid_argument);

    // quarter rotation tracked well at large gamma
    const double a5 = M_PI / (4.0 * 2.0 * 5.0);
    CHECK(cat_rotation_fidelity(5.0, a5) >= 0.99);

    // larger gamma tracks the ideal rotation more closely (Fig. 2(b) shape)
    const double a2 = M_PI / (4.0 * 2.0 * 2.0);
    CHECK(cat_rotation_fidelity(5.0, a5) > cat_rotation_fidelity(2.0, a2));
}

TEST_CASE("parity cannot be flipped for n >= 1 (scan sample)") {
    // coarse version of the Fig. 1(b) scan; acceptance runs the full one
    for (int n : {1, 3}) {
        for (double a = 0.05; a <= 3.0; a += 0.05)
            CHECK(parity_expectation_number_state(n, a) < 1.0 - 1e-3);
    }
    for (double a = 0.05; a <= 3.0; a += 0.05)
        CHECK(parity_expectation_number_state(2, a) > -1.0 + 1e-3);
}
