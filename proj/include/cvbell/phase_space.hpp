#ifndef CVBELL_PHASE_SPACE_HPP
#define CVBELL_PHASE_SPACE_HPP

#include "cvbell/fock.hpp"

namespace cvbell {

// Two-mode phase-space point.
struct PhasePoint {
    Complex alpha{0.0, 0.0};
    Complex beta{0.0, 0.0};
};

// Closed-form two-mode Wigner functions. Normalization fixed by the
// Wigner-parity identity (pi^2/4) W(alpha,beta) = <Pi_1(alpha) Pi_2(beta)>.
double wigner_tmss(PhasePoint p, double r);
double wigner_ecs(PhasePoint p, double gamma);

// Numeric Wigner evaluator from a truncated state via displaced parity.
double wigner_from_state(PhasePoint p, const TwoModeState& state);

// Q functions |<alpha|<beta|psi>|^2 / pi^2.
double q_two_mode(PhasePoint p, const TwoModeState& state);
double q_tmss(PhasePoint p, double r);
double q_ecs(PhasePoint p, double gamma);
double q12_single_photon(PhasePoint p);

// Marginal Q of mode 1/2 from a truncated state: <zeta(alpha) (x) I>/pi.
double q_marginal_mode1(const TwoModeState& state, Complex alpha);
double q_marginal_mode2(const TwoModeState& state, Complex beta);

// Closed-form marginals (mode 1 and mode 2 coincide for these states).
double q1_tmss(Complex alpha, double r);
double q1_ecs(Complex alpha, double gamma);
double q1_single_photon(Complex alpha);

} // namespace cvbell

#endif
