#include "cvbell/observables.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cvbell {

FockOperator pseudospin_sz(FockCutoff cutoff) {
    const int dim = cutoff.dim();
    CMat m = CMat::Zero(dim, dim);
    for (int n = 0; n < dim; ++n) m(n, n) = (n % 2 == 0) ? -1.0 : 1.0;
    return FockOperator{std::move(m), cutoff, true, std::numeric_limits<double>::quiet_NaN()};
}

FockOperator pseudospin_lower(FockCutoff cutoff) {
    const int dim = cutoff.dim();
    CMat m = CMat::Zero(dim, dim);
    for (int n = 0; n + 1 < dim; n += 2) m(n, n + 1) = 1.0;
    return FockOperator{std::move(m), cutoff, false, std::numeric_limits<double>::quiet_NaN()};
}

FockOperator pseudospin_sx(FockCutoff cutoff) {
    const int dim = cutoff.dim();
    CMat m = CMat::Zero(dim, dim);
    for (int n = 0; n + 1 < dim; n += 2) {
        m(n, n + 1) = 1.0;
        m(n + 1, n) = 1.0;
    }
    return FockOperator{std::move(m), cutoff, true, std::numeric_limits<double>::quiet_NaN()};
}

FockOperator pseudospin(PseudospinSetting setting, FockCutoff cutoff) {
    const int dim = cutoff.dim();
    const double c = std::cos(setting.theta), s = std::sin(setting.theta);
    const Complex ep = std::exp(Complex(0.0, setting.phi));
    CMat m = CMat::Zero(dim, dim);
    for (int n = 0; n < dim; ++n) m(n, n) = (n % 2 == 0) ? -c : c;
    for (int n = 0; n + 1 < dim; n += 2) {
        m(n, n + 1) = s * ep;             // e^{i phi} s_-
        m(n + 1, n) = s * std::conj(ep);  // e^{-i phi} s_+
    }
    return FockOperator{std::move(m), cutoff, true, std::numeric_limits<double>::quiet_NaN()};
}

FockOperator gisin_peres(int dimension, double theta) {
    if (dimension < 2) throw std::invalid_argument("gisin_peres: dimension must be >= 2");
    const FockCutoff cutoff(dimension - 1);
    const double c = std::cos(theta), s = std::sin(theta);
    CMat m = CMat::Zero(dimension, dimension);
    for (int n = 0; n + 1 < dimension; n += 2) {
        m(n, n) = -c;
        m(n + 1, n + 1) = c;
        m(n, n + 1) = s;
        m(n + 1, n) = s;
    }
    if (dimension % 2 == 1) m(dimension - 1, dimension - 1) = 1.0;  // the E element
    return FockOperator{std::move(m), cutoff, true, std::numeric_limits<double>::quiet_NaN()};
}

FockOperator bw_parity(DisplacementSetting setting, FockCutoff cutoff) {
    const int dim = cutoff.dim();
    const FockOperator d = make_displacement(setting.alpha, cutoff);
    CVec parity(dim);
    for (int n = 0; n < dim; ++n) parity(n) = (n % 2 == 0) ? 1.0 : -1.0;
    CMat m = d.matrix * parity.asDiagonal() * d.matrix.adjoint();
    m = (m + m.adjoint().eval()) / 2.0;  // symmetrize roundoff
    return FockOperator{std::move(m), cutoff, true, std::numeric_limits<double>::quiet_NaN()};
}

double parity_expectation_number_state(int n, double abs_alpha) {
    if (n < 0) throw std::invalid_argument("parity_expectation_number_state: n must be >= 0");
    if (abs_alpha < 0.0) throw std::invalid_argument("parity_expectation_number_state: |alpha| must be >= 0");
    const double mu = n + abs_alpha * abs_alpha;
    const FockCutoff cutoff = default_cutoff(mu);
    if (n > cutoff.n_max) throw std::invalid_argument("parity_expectation_number_state: n too large");
    // <n|D Pi D^dag|n> = parity of D(-alpha)|n>
    const CVec w = apply_displacement(Complex(-abs_alpha, 0.0),
                                      number_state(n, cutoff).coeffs, cutoff);
    double p = 0.0;
    for (int m = 0; m < cutoff.dim(); ++m) p += ((m % 2 == 0) ? 1.0 : -1.0) * std::norm(w(m));
    return p;
}

namespace {

// L_q^{(p)}(x) by the three-term recurrence; valid for any real order p.
double laguerre(int q, double p, double x) {
    if (q == 0) return 1.0;
    double lm = 1.0, l = 1.0 + p - x;
    for (int k = 1; k < q; ++k) {
        const double ln = ((2.0 * k + 1.0 + p - x) * l - (k + p) * lm) / (k + 1.0);
        lm = l;
        l = ln;
    }
    return l;
}

// m!/x^m (L_q^{(n-m)}(x))^2 * e^{-x} x^n / n!, evaluated in a form that does
// not overflow when m greatly exceeds n. For m > n the negative-order
// identity L_q^{(p)}(x) = (-x)^{-p} ((q+p)!/q!) L_{q+p}^{(-p)}(x) reduces the
// Laguerre degree to q+p (= n or n+1 here).
double series_term(int n, int m, int q, double x) {
    const double lnx = std::log(x);
    if (m <= n) {
        const double l = laguerre(q, double(n - m), x);
        const double ln_t = -x + double(n - m) * lnx + std::lgamma(m + 1.0) - std::lgamma(n + 1.0);
        return std::exp(ln_t) * l * l;
    }
    const int p = n - m;          // negative
    const int small_deg = q + p;  // n (matched indices) or n+1 (printed odd term)
    if (small_deg < 0) return 0.0;
    const double l = laguerre(small_deg, double(-p), x);
    // generic: m!/x^m * x^{-2p} ((q+p)!/q!)^2 L^2 * e^{-x} x^n / n!
    const double ln_t = -x + std::lgamma(m + 1.0) - m * lnx - 2.0 * p * lnx +
                        2.0 * (std::lgamma(small_deg + 1.0) - std::lgamma(q + 1.0)) + n * lnx -
                        std::lgamma(n + 1.0);
    return std::exp(ln_t) * l * l;
}

} // namespace

double parity_expectation_series(int n, double abs_alpha, SeriesForm form) {
    if (n < 0) throw std::invalid_argument("parity_expectation_series: n must be >= 0");
    if (abs_alpha == 0.0) return (n % 2 == 0) ? 1.0 : -1.0;
    const double x = abs_alpha * abs_alpha;
    double sum = 0.0;
    int quiet = 0;
    for (int k = 0; k < 100000; ++k) {
        const double even = series_term(n, 2 * k, 2 * k, x);
        const int odd_deg = (form == SeriesForm::as_printed) ? 2 * k + 2 : 2 * k + 1;
        const double odd = series_term(n, 2 * k + 1, odd_deg, x);
        sum += even - odd;
        if (2 * k > n && std::abs(even) + std::abs(odd) < 1e-17 * std::max(1.0, std::abs(sum))) {
            if (++quiet >= 3) break;
        } else {
            quiet = 0;
        }
    }
    return sum;
}

FockOperator ch_projector(ProjectorSetting setting, FockCutoff cutoff) {
    const int dim = cutoff.dim();
    const double c = std::cos(setting.theta), s = std::sin(setting.theta);
    CMat m = CMat::Zero(dim, dim);
    m(0, 0) = c * c;
    m(0, 1) = c * s;
    m(1, 0) = c * s;
    m(1, 1) = s * s;
    return FockOperator{std::move(m), cutoff, true, std::numeric_limits<double>::quiet_NaN()};
}

FockOperator bw_ch_projector(DisplacementSetting setting, FockCutoff cutoff) {
    const FockOperator d = make_displacement(setting.alpha, cutoff);
    const CVec col = d.matrix.col(0);  // D(alpha)|0>
    CMat m = col * col.adjoint();
    return FockOperator{std::move(m), cutoff, true, std::numeric_limits<double>::quiet_NaN()};
}

FockOperator parity_rotation(double theta, FockCutoff cutoff) {
    const int dim = cutoff.dim();
    const double c = std::cos(theta), s = std::sin(theta);
    CMat m = CMat::Zero(dim, dim);
    for (int n = 0; n < dim; n += 2) {
        m(n, n) = c;
        if (n + 1 < dim) {
            m(n + 1, n + 1) = c;
            m(n + 1, n) = -s;
            m(n, n + 1) = s;
        } else {
            m(n, n) = 1.0;  // lone even state at an odd-dimension edge
        }
    }
    double defect = 0.0;
    for (int col = 0; col < dim; ++col) defect = std::max(defect, std::abs(m.col(col).norm() - 1.0));
    return FockOperator{std::move(m), cutoff, false, defect};
}

FockOperator chi_projector(double theta, FockCutoff cutoff) {
    const int dim = cutoff.dim();
    const FockOperator u = parity_rotation(theta, cutoff);
    CVec even(dim);
    for (int n = 0; n < dim; ++n) even(n) = (n % 2 == 0) ? 1.0 : 0.0;
    CMat m = u.matrix * even.asDiagonal() * u.matrix.adjoint();
    m = (m + m.adjoint().eval()) / 2.0;
    return FockOperator{std::move(m), cutoff, true, std::numeric_limits<double>::quiet_NaN()};
}

double cat_rotation_fidelity(double gamma, double alpha_i, FockCutoff cutoff) {
    if (!(gamma > 0.0)) throw std::invalid_argument("cat_rotation_fidelity: gamma must be > 0");
    const double theta = 2.0 * gamma * alpha_i;
    const SingleModeState e = make_cat(gamma, CatParity::even, cutoff);
    const SingleModeState d = make_cat(gamma, CatParity::odd, cutoff);
    // R_x(theta)|e> = cos(theta)|e> + i sin(theta)|d>
    const CVec rotated = std::cos(theta) * e.coeffs + Complex(0.0, std::sin(theta)) * d.coeffs;
    const FockOperator disp = make_displacement(Complex(0.0, alpha_i), cutoff);
    const CVec displaced = disp.matrix * e.coeffs;  // <e|D^dag = (D|e>)^dag
    return std::norm(displaced.dot(rotated));
}

double cat_rotation_fidelity(double gamma, double alpha_i) {
    const double mu = (gamma + std::abs(alpha_i)) * (gamma + std::abs(alpha_i));
    return cat_rotation_fidelity(gamma, alpha_i, default_cutoff(mu));
}

} // namespace cvbell
