#include "cvbell/phase_space.hpp"

#include "cvbell/observables.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cvbell {

namespace {
constexpr double kPi = std::numbers::pi;

double ecs_norm_sq(double gamma) {
    // N^2 = 1/(2 - 2 e^{-4 gamma^2})
    return 1.0 / (2.0 - 2.0 * std::exp(-4.0 * gamma * gamma));
}
} // namespace

double wigner_tmss(PhasePoint p, double r) {
    if (!(r >= 0.0)) throw std::invalid_argument("wigner_tmss: r must be >= 0");
    const double quad = std::norm(p.alpha) + std::norm(p.beta);
    const double cross = 2.0 * (p.alpha * p.beta).real();  // alpha beta + conj
    return 4.0 / (kPi * kPi) *
           std::exp(-2.0 * std::cosh(2.0 * r) * quad + 2.0 * std::sinh(2.0 * r) * cross);
}

double wigner_ecs(PhasePoint p, double gamma) {
    if (gamma == 0.0) throw std::invalid_argument("wigner_ecs: gamma must be nonzero");
    const Complex a = p.alpha, b = p.beta;
    const double g = gamma;
    const double t1 = std::exp(-2.0 * std::norm(a - g) - 2.0 * std::norm(b + g));
    const double t2 = std::exp(-2.0 * std::norm(a + g) - 2.0 * std::norm(b - g));
    const Complex cross = -2.0 * (a - g) * (std::conj(a) + g) - 2.0 * (b + g) * (std::conj(b) - g) -
                          Complex(4.0 * g * g, 0.0);
    const double t34 = 2.0 * std::exp(cross.real()) * std::cos(cross.imag());
    return 4.0 / (kPi * kPi) * ecs_norm_sq(g) * (t1 + t2 - t34);
}

double wigner_from_state(PhasePoint p, const TwoModeState& state) {
    const FockOperator pi1 = bw_parity({p.alpha}, state.cutoff);
    const FockOperator pi2 = bw_parity({p.beta}, state.cutoff);
    return 4.0 / (kPi * kPi) * expectation(state, pi1, pi2);
}

double q_two_mode(PhasePoint p, const TwoModeState& state) {
    const SingleModeState ca = make_coherent(p.alpha, state.cutoff);
    const SingleModeState cb = make_coherent(p.beta, state.cutoff);
    // <alpha|<beta|psi> = conj(a)^T C conj(b)
    const Complex amp = (ca.coeffs.conjugate().transpose() * state.coeffs * cb.coeffs.conjugate())(0);
    return std::norm(amp) / (kPi * kPi);
}

double q_tmss(PhasePoint p, double r) {
    if (!(r >= 0.0)) throw std::invalid_argument("q_tmss: r must be >= 0");
    const double quad = std::norm(p.alpha) + std::norm(p.beta);
    const double cross = 2.0 * (p.alpha * p.beta).real();
    const double ch = std::cosh(r);
    return std::exp(-quad + std::tanh(r) * cross) / (kPi * kPi * ch * ch);
}

double q_ecs(PhasePoint p, double gamma) {
    if (gamma == 0.0) throw std::invalid_argument("q_ecs: gamma must be nonzero");
    const Complex a = p.alpha, b = p.beta;
    const double g = gamma;
    const double t1 = std::exp(-std::norm(a - g) - std::norm(b + g));
    const double t2 = std::exp(-std::norm(a + g) - std::norm(b - g));
    const Complex cross =
        -(a - g) * (std::conj(a) + g) - (b + g) * (std::conj(b) - g) - Complex(4.0 * g * g, 0.0);
    const double t34 = 2.0 * std::exp(cross.real()) * std::cos(cross.imag());
    return ecs_norm_sq(g) * (t1 + t2 - t34) / (kPi * kPi);
}

double q12_single_photon(PhasePoint p) {
    return std::exp(-std::norm(p.alpha) - std::norm(p.beta)) * std::norm(p.alpha - p.beta) /
           (2.0 * kPi * kPi);
}

double q_marginal_mode1(const TwoModeState& state, Complex alpha) {
    const SingleModeState ca = make_coherent(alpha, state.cutoff);
    // <psi| (|alpha><alpha| (x) I) |psi> = || C^T conj(a) ||^2
    const CVec proj = state.coeffs.transpose() * ca.coeffs.conjugate();
    return proj.squaredNorm() / kPi;
}

double q_marginal_mode2(const TwoModeState& state, Complex beta) {
    const SingleModeState cb = make_coherent(beta, state.cutoff);
    const CVec proj = state.coeffs * cb.coeffs.conjugate();
    return proj.squaredNorm() / kPi;
}

double q1_tmss(Complex alpha, double r) {
    const double ch2 = std::cosh(r) * std::cosh(r);
    return std::exp(-std::norm(alpha) / ch2) / (kPi * ch2);
}

double q1_ecs(Complex alpha, double gamma) {
    const double g = gamma;
    return ecs_norm_sq(g) *
           (std::exp(-std::norm(alpha - g)) + std::exp(-std::norm(alpha + g)) -
            2.0 * std::exp(-std::norm(alpha) - 3.0 * g * g) * std::cos(2.0 * g * alpha.imag())) /
           kPi;
}

double q1_single_photon(Complex alpha) {
    return std::exp(-std::norm(alpha)) * (1.0 + std::norm(alpha)) / (2.0 * kPi);
}

} // namespace cvbell
