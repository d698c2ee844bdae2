#ifndef CVBELL_FOCK_HPP
#define CVBELL_FOCK_HPP

#include <complex>
#include <limits>
#include <Eigen/Dense>

namespace cvbell {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

// Truncation dimension of the photon-number basis; dim() = n_max + 1 per mode.
struct FockCutoff {
    int n_max;
    explicit FockCutoff(int n);
    int dim() const { return n_max + 1; }
    bool operator==(const FockCutoff&) const = default;
};

// max(32, ceil(4*mu + 10*sqrt(mu))) for mean photon number mu; keeps tail
// mass below ~1e-10 for Poisson-tailed states (coherent, cat, ECS).
FockCutoff default_cutoff(double mean_photon);

// TMSS photon numbers are geometric, not Poisson; this additionally forces
// tanh(r)^(2 dim) < 1e-10 so the tail-mass target actually holds.
FockCutoff tmss_default_cutoff(double r);

// Single-mode pure state, unit norm. tail_mass = 1 - sum|c|^2 before
// renormalization (how much of the state the cutoff dropped).
struct SingleModeState {
    CVec coeffs;
    FockCutoff cutoff;
    double tail_mass = 0.0;
};

// Two-mode pure state as a coefficient matrix, coeffs(m, n) = <m,n|psi>,
// row index = mode 1. Frobenius norm 1.
struct TwoModeState {
    CMat coeffs;
    FockCutoff cutoff;
    double tail_mass = 0.0;
};

// Dense single-mode operator. When hermitian is set the constructor-side
// check max|M - M^dag| < 1e-10 has been verified. unitarity_defect is the
// max column-norm deviation from 1 (NaN when not applicable).
struct FockOperator {
    CMat matrix;
    FockCutoff cutoff;
    bool hermitian = false;
    double unitarity_defect = std::numeric_limits<double>::quiet_NaN();
};

enum class CatParity { even, odd };

// |gamma> with coeffs e^{-|gamma|^2/2} gamma^n / sqrt(n!).
SingleModeState make_coherent(Complex gamma, FockCutoff cutoff);

// sum_n (tanh r)^n / cosh r |n>|n>, r >= 0.
TwoModeState make_tmss(double r, FockCutoff cutoff);

// N(|gamma>|-gamma> - |-gamma>|gamma>), gamma real and nonzero.
TwoModeState make_ecs(double gamma, FockCutoff cutoff);

// Even/odd cat |gamma> +- |-gamma>, normalized. Odd cat requires gamma != 0.
SingleModeState make_cat(double gamma, CatParity parity, FockCutoff cutoff);

// D(alpha) = exp(alpha a^dag - alpha^* a), built from the eigendecomposition
// of the hermitian generator -i(alpha a^dag - alpha^* a); exactly unitary at
// the working cutoff.
FockOperator make_displacement(Complex alpha, FockCutoff cutoff);

FockOperator make_identity(FockCutoff cutoff);
SingleModeState number_state(int n, FockCutoff cutoff);
TwoModeState product_state(const SingleModeState& mode1, const SingleModeState& mode2);

// D(alpha) v in O(dim^2) through the cached generator eigenbasis.
CVec apply_displacement(Complex alpha, const CVec& v, FockCutoff cutoff);

// <psi| op1 (x) op2 |psi>. Requires matching cutoffs and hermitian-flagged
// operators; asserts the imaginary residue < 1e-9 and discards it.
double expectation(const TwoModeState& state, const FockOperator& op1, const FockOperator& op2);

// Same contraction without the hermiticity gate: tr(C^dag O1 C O2^T).
Complex expectation_unchecked(const TwoModeState& state, const CMat& op1, const CMat& op2);

double expectation(const SingleModeState& state, const FockOperator& op);
Complex matrix_element(const SingleModeState& bra, const FockOperator& op,
                       const SingleModeState& ket);

Complex overlap(const SingleModeState& a, const SingleModeState& b);
Complex overlap(const TwoModeState& a, const TwoModeState& b);

// Schmidt coefficients (singular values of the coefficient matrix),
// descending, non-negative, sum of squares 1.
Eigen::VectorXd schmidt_values(const TwoModeState& state);

// Von Neumann entropy -sum s^2 log s^2 of the Schmidt spectrum (nats).
double schmidt_entropy(const TwoModeState& state);

} // namespace cvbell

#endif
