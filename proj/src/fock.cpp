#include "cvbell/fock.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace cvbell {

FockCutoff::FockCutoff(int n) : n_max(n) {
    if (n < 1) throw std::invalid_argument("FockCutoff: n_max must be >= 1, got " + std::to_string(n));
}

FockCutoff default_cutoff(double mean_photon) {
    if (!(mean_photon >= 0.0)) throw std::invalid_argument("default_cutoff: mean photon number must be >= 0");
    const int n = static_cast<int>(std::ceil(4.0 * mean_photon + 10.0 * std::sqrt(mean_photon)));
    return FockCutoff(std::max(32, n));
}

FockCutoff tmss_default_cutoff(double r) {
    if (!(r >= 0.0)) throw std::invalid_argument("tmss_default_cutoff: r must be >= 0");
    const double sh = std::sinh(r);
    int n = default_cutoff(sh * sh).n_max;
    const double t = std::tanh(r);
    if (t > 0.0) {
        // tail mass of the geometric Schmidt spectrum is tanh^(2 dim)
        const int geom = static_cast<int>(std::ceil(-10.0 * std::numbers::ln10 / (2.0 * std::log(t))));
        n = std::max(n, geom);
    }
    return FockCutoff(n);
}

namespace {

// Unnormalized coherent amplitudes by the stable recurrence
// c_{n+1} = c_n * gamma / sqrt(n+1), c_0 = e^{-|gamma|^2/2}.
CVec coherent_coeffs(Complex gamma, int dim) {
    CVec c(dim);
    c(0) = std::exp(-0.5 * std::norm(gamma));
    for (int n = 0; n + 1 < dim; ++n) c(n + 1) = c(n) * gamma / std::sqrt(double(n + 1));
    return c;
}

SingleModeState normalized_single(CVec c, FockCutoff cutoff) {
    const double sq = c.squaredNorm();
    if (sq <= 0.0) throw std::invalid_argument("degenerate state: zero vector before normalization");
    SingleModeState s{std::move(c), cutoff, 1.0 - sq};
    s.coeffs /= std::sqrt(sq);
    return s;
}

TwoModeState normalized_two(CMat c, FockCutoff cutoff) {
    const double sq = c.squaredNorm();
    if (sq <= 0.0) throw std::invalid_argument("degenerate state: zero matrix before normalization");
    TwoModeState s{std::move(c), cutoff, 1.0 - sq};
    s.coeffs /= std::sqrt(sq);
    return s;
}

} // namespace

SingleModeState make_coherent(Complex gamma, FockCutoff cutoff) {
    return normalized_single(coherent_coeffs(gamma, cutoff.dim()), cutoff);
}

TwoModeState make_tmss(double r, FockCutoff cutoff) {
    if (!(r >= 0.0)) throw std::invalid_argument("make_tmss: squeezing parameter must be >= 0");
    const int dim = cutoff.dim();
    CMat c = CMat::Zero(dim, dim);
    double lambda = 1.0 / std::cosh(r);
    const double t = std::tanh(r);
    for (int n = 0; n < dim; ++n) {
        c(n, n) = lambda;
        lambda *= t;
    }
    return normalized_two(std::move(c), cutoff);
}

TwoModeState make_ecs(double gamma, FockCutoff cutoff) {
    if (gamma == 0.0) throw std::invalid_argument("make_ecs: gamma must be nonzero (state degenerates)");
    const int dim = cutoff.dim();
    const CVec cp = coherent_coeffs(gamma, dim);
    const CVec cm = coherent_coeffs(-gamma, dim);
    CMat c = cp * cm.transpose() - cm * cp.transpose();
    // exact normalization before truncation, so tail mass means dropped mass
    c /= std::sqrt(2.0 - 2.0 * std::exp(-4.0 * gamma * gamma));
    return normalized_two(std::move(c), cutoff);
}

SingleModeState make_cat(double gamma, CatParity parity, FockCutoff cutoff) {
    if (gamma == 0.0 && parity == CatParity::odd)
        throw std::invalid_argument("make_cat: odd cat degenerates at gamma = 0");
    const int dim = cutoff.dim();
    const CVec cp = coherent_coeffs(gamma, dim);
    const CVec cm = coherent_coeffs(-gamma, dim);
    const double sign = (parity == CatParity::even) ? 1.0 : -1.0;
    CVec v = cp + sign * cm;
    v /= std::sqrt(2.0 + sign * 2.0 * std::exp(-2.0 * gamma * gamma));
    // the opposite-parity amplitudes cancel exactly in exact arithmetic;
    // zero them so the parity-support invariant holds bitwise
    const int start = (parity == CatParity::even) ? 1 : 0;
    for (int n = start; n < dim; n += 2) v(n) = Complex(0.0, 0.0);
    return normalized_single(std::move(v), cutoff);
}

namespace {

// Eigendecomposition of h = -i(a^dag - a), shared by every displacement at a
// given cutoff: D(alpha) = N_psi V e^{i|alpha| Lambda} V^dag N_psi^dag with
// N_psi = diag(e^{i psi n}), psi = arg(alpha).
struct DispBasis {
    CMat vectors;
    Eigen::VectorXd values;
};

const DispBasis& displacement_basis(int dim) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<DispBasis>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(dim);
    if (it == cache.end()) {
        CMat h = CMat::Zero(dim, dim);
        const Complex mi(0.0, -1.0);
        for (int n = 1; n < dim; ++n) {
            h(n, n - 1) = mi * std::sqrt(double(n));   // -i a^dag part
            h(n - 1, n) = -mi * std::sqrt(double(n));  // +i a part
        }
        Eigen::SelfAdjointEigenSolver<CMat> es(h);
        auto basis = std::make_unique<DispBasis>(DispBasis{es.eigenvectors(), es.eigenvalues()});
        it = cache.emplace(dim, std::move(basis)).first;
    }
    return *it->second;
}

} // namespace

FockOperator make_displacement(Complex alpha, FockCutoff cutoff) {
    const int dim = cutoff.dim();
    if (alpha == Complex(0.0, 0.0)) {
        FockOperator id = make_identity(cutoff);
        id.hermitian = false;
        id.unitarity_defect = 0.0;
        return id;
    }
    const DispBasis& basis = displacement_basis(dim);
    const double amp = std::abs(alpha);
    const double psi = std::arg(alpha);
    CVec phase(dim);
    for (int k = 0; k < dim; ++k) phase(k) = std::exp(Complex(0.0, amp * basis.values(k)));
    CMat d = basis.vectors * phase.asDiagonal() * basis.vectors.adjoint();
    if (psi != 0.0) {
        CVec rot(dim);
        for (int n = 0; n < dim; ++n) rot(n) = std::exp(Complex(0.0, psi * n));
        d = rot.asDiagonal() * d * rot.conjugate().asDiagonal();
    }
    double defect = 0.0;
    for (int c = 0; c < dim; ++c) defect = std::max(defect, std::abs(d.col(c).norm() - 1.0));
    return FockOperator{std::move(d), cutoff, false, defect};
}

CVec apply_displacement(Complex alpha, const CVec& v, FockCutoff cutoff) {
    const int dim = cutoff.dim();
    if (v.size() != dim) throw std::invalid_argument("apply_displacement: vector size mismatch");
    if (alpha == Complex(0.0, 0.0)) return v;
    const DispBasis& basis = displacement_basis(dim);
    const double amp = std::abs(alpha);
    const double psi = std::arg(alpha);
    CVec w = v;
    if (psi != 0.0)
        for (int n = 0; n < dim; ++n) w(n) *= std::exp(Complex(0.0, -psi * n));
    CVec y = basis.vectors.adjoint() * w;
    for (int k = 0; k < dim; ++k) y(k) *= std::exp(Complex(0.0, amp * basis.values(k)));
    w = basis.vectors * y;
    if (psi != 0.0)
        for (int n = 0; n < dim; ++n) w(n) *= std::exp(Complex(0.0, psi * n));
    return w;
}

FockOperator make_identity(FockCutoff cutoff) {
    return FockOperator{CMat::Identity(cutoff.dim(), cutoff.dim()), cutoff, true, 0.0};
}

SingleModeState number_state(int n, FockCutoff cutoff) {
    if (n < 0 || n > cutoff.n_max)
        throw std::invalid_argument("number_state: n out of range for cutoff");
    CVec c = CVec::Zero(cutoff.dim());
    c(n) = 1.0;
    return SingleModeState{std::move(c), cutoff, 0.0};
}

TwoModeState product_state(const SingleModeState& mode1, const SingleModeState& mode2) {
    if (!(mode1.cutoff == mode2.cutoff))
        throw std::invalid_argument("product_state: cutoff mismatch");
    return TwoModeState{mode1.coeffs * mode2.coeffs.transpose(), mode1.cutoff,
                        mode1.tail_mass + mode2.tail_mass};
}

Complex expectation_unchecked(const TwoModeState& state, const CMat& op1, const CMat& op2) {
    // (O1 (x) O2 psi)_{mn} = (O1 C O2^T)_{mn}
    const CMat applied = op1 * state.coeffs * op2.transpose();
    return (state.coeffs.conjugate().cwiseProduct(applied)).sum();
}

double expectation(const TwoModeState& state, const FockOperator& op1, const FockOperator& op2) {
    if (!(state.cutoff == op1.cutoff) || !(state.cutoff == op2.cutoff))
        throw std::invalid_argument("expectation: cutoff mismatch between state and operators");
    if (!op1.hermitian || !op2.hermitian)
        throw std::invalid_argument("expectation: hermitian result requested for non-hermitian operator");
    const Complex v = expectation_unchecked(state, op1.matrix, op2.matrix);
    if (std::abs(v.imag()) >= 1e-9)
        throw std::runtime_error("expectation: imaginary residue " + std::to_string(v.imag()) +
                                 " exceeds 1e-9");
    return v.real();
}

double expectation(const SingleModeState& state, const FockOperator& op) {
    if (!(state.cutoff == op.cutoff))
        throw std::invalid_argument("expectation: cutoff mismatch between state and operator");
    if (!op.hermitian)
        throw std::invalid_argument("expectation: hermitian result requested for non-hermitian operator");
    const Complex v = state.coeffs.dot(op.matrix * state.coeffs);
    if (std::abs(v.imag()) >= 1e-9)
        throw std::runtime_error("expectation: imaginary residue exceeds 1e-9");
    return v.real();
}

Complex matrix_element(const SingleModeState& bra, const FockOperator& op,
                       const SingleModeState& ket) {
    if (!(bra.cutoff == op.cutoff) || !(ket.cutoff == op.cutoff))
        throw std::invalid_argument("matrix_element: cutoff mismatch");
    return bra.coeffs.dot(op.matrix * ket.coeffs);
}

Complex overlap(const SingleModeState& a, const SingleModeState& b) {
    if (!(a.cutoff == b.cutoff)) throw std::invalid_argument("overlap: cutoff mismatch");
    return a.coeffs.dot(b.coeffs);
}

Complex overlap(const TwoModeState& a, const TwoModeState& b) {
    if (!(a.cutoff == b.cutoff)) throw std::invalid_argument("overlap: cutoff mismatch");
    return (a.coeffs.conjugate().cwiseProduct(b.coeffs)).sum();
}

Eigen::VectorXd schmidt_values(const TwoModeState& state) {
    Eigen::JacobiSVD<CMat> svd(state.coeffs);
    return svd.singularValues();
}

double schmidt_entropy(const TwoModeState& state) {
    const Eigen::VectorXd s = schmidt_values(state);
    double h = 0.0;
    for (int i = 0; i < s.size(); ++i) {
        const double p = s(i) * s(i);
        if (p > 0.0) h -= p * std::log(p);
    }
    return h;
}

} // namespace cvbell
