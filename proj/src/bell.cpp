#include "cvbell/bell.hpp"

#include "cvbell/phase_space.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cvbell {

namespace {
constexpr double kPi = std::numbers::pi;

double log_sinh(double x) { return x + std::log1p(-std::exp(-2.0 * x)) - std::numbers::ln2; }
double log_cosh(double x) { return x + std::log1p(std::exp(-2.0 * x)) - std::numbers::ln2; }

// ln of S = sum_n gamma^{4n+1} / sqrt((2n)!(2n+1)!); streaming logsumexp
// since the terms rise to a peak near 2n ~ gamma^2 before decaying.
double log_k_series(double gamma) {
    const double lg = std::log(gamma);
    double peak = -std::numeric_limits<double>::infinity();
    double acc = 0.0;
    double prev = -std::numeric_limits<double>::infinity();
    for (int n = 0; n < 200000; ++n) {
        const double t = (4.0 * n + 1.0) * lg - 0.5 * (std::lgamma(2.0 * n + 1.0) + std::lgamma(2.0 * n + 2.0));
        if (t > peak) {
            acc = acc * std::exp(peak - t) + 1.0;
            peak = t;
        } else {
            const double w = std::exp(t - peak);
            acc += w;
            if (t < prev && w < 1e-16 * acc) break;
        }
        prev = t;
    }
    return peak + std::log(acc);
}
} // namespace

std::string to_string(Formalism f) {
    switch (f) {
        case Formalism::pseudospin: return "pseudospin";
        case Formalism::bw: return "bw";
        case Formalism::gbw: return "gbw";
        case Formalism::gisin_peres: return "gisin_peres";
        case Formalism::ch_qubit: return "ch_qubit";
        case Formalism::ch_q: return "ch_q";
        case Formalism::ch_parity: return "ch_parity";
    }
    return "?";
}

std::string to_string(StateKind k) {
    switch (k) {
        case StateKind::tmss: return "tmss";
        case StateKind::ecs: return "ecs";
        case StateKind::single_photon: return "single_photon";
    }
    return "?";
}

double k_of_gamma(double gamma) {
    if (!(gamma > 0.0)) throw std::invalid_argument("k_of_gamma: gamma must be > 0");
    thread_local double memo_gamma = -1.0, memo_k = 0.0;  // optimizers hammer one gamma
    if (gamma == memo_gamma) return memo_k;
    const double x = gamma * gamma;
    const double k = std::exp(2.0 * log_k_series(gamma) - log_sinh(x) - log_cosh(x));
    memo_gamma = gamma;
    memo_k = k;
    return k;
}

double k_of_gamma_printed(double gamma) { return 1.0 / k_of_gamma(gamma); }

double ecs_pseudospin_correlation(double k, PseudospinSetting a, PseudospinSetting b) {
    return -std::cos(a.theta) * std::cos(b.theta) -
           k * std::cos(a.phi - b.phi) * std::sin(a.theta) * std::sin(b.theta);
}

double tmss_pseudospin_correlation(double r, PseudospinSetting a, PseudospinSetting b) {
    return std::cos(a.theta) * std::cos(b.theta) +
           std::tanh(2.0 * r) * std::cos(a.phi + b.phi) * std::sin(a.theta) * std::sin(b.theta);
}

namespace {

template <typename Corr>
double chsh_combine(const Corr& e, const PseudospinSettings& s) {
    return e(s.a, s.b) + e(s.a, s.b_prime) + e(s.a_prime, s.b) - e(s.a_prime, s.b_prime);
}

} // namespace

double chsh_pseudospin_analytic(StateKind kind, double param, const PseudospinSettings& s) {
    switch (kind) {
        case StateKind::tmss: {
            if (!(param >= 0.0)) throw std::invalid_argument("chsh_pseudospin_analytic: r must be >= 0");
            auto e = [param](PseudospinSetting x, PseudospinSetting y) {
                return tmss_pseudospin_correlation(param, x, y);
            };
            return chsh_combine(e, s);
        }
        case StateKind::ecs: {
            const double k = k_of_gamma(param);
            auto e = [k](PseudospinSetting x, PseudospinSetting y) {
                return ecs_pseudospin_correlation(k, x, y);
            };
            return chsh_combine(e, s);
        }
        case StateKind::single_photon:
            throw std::invalid_argument("chsh_pseudospin_analytic: unsupported state kind");
    }
    throw std::invalid_argument("chsh_pseudospin_analytic: unsupported state kind");
}

double chsh_gbw(StateKind kind, double param, const DisplacementSettings& s) {
    const auto e = [&](Complex alpha, Complex beta) {
        const PhasePoint p{alpha, beta};
        const double w = (kind == StateKind::tmss) ? wigner_tmss(p, param)
                         : (kind == StateKind::ecs)
                             ? wigner_ecs(p, param)
                             : throw std::invalid_argument("chsh_gbw: unsupported state kind");
        return kPi * kPi / 4.0 * w;
    };
    return e(s.a.alpha, s.b.alpha) + e(s.a.alpha, s.b_prime.alpha) + e(s.a_prime.alpha, s.b.alpha) -
           e(s.a_prime.alpha, s.b_prime.alpha);
}

double ch_q(StateKind kind, double param, const DisplacementSettings& s) {
    const auto q12 = [&](Complex alpha, Complex beta) {
        const PhasePoint p{alpha, beta};
        switch (kind) {
            case StateKind::tmss: return q_tmss(p, param);
            case StateKind::ecs: return q_ecs(p, param);
            case StateKind::single_photon: return q12_single_photon(p);
        }
        throw std::invalid_argument("ch_q: unsupported state kind");
    };
    const auto q1 = [&](Complex alpha) {
        switch (kind) {
            case StateKind::tmss: return q1_tmss(alpha, param);
            case StateKind::ecs: return q1_ecs(alpha, param);
            case StateKind::single_photon: return q1_single_photon(alpha);
        }
        throw std::invalid_argument("ch_q: unsupported state kind");
    };
    const Complex a = s.a.alpha, ap = s.a_prime.alpha, b = s.b.alpha, bp = s.b_prime.alpha;
    return kPi * kPi * (q12(a, b) + q12(a, bp) + q12(ap, b) - q12(ap, bp)) -
           kPi * (q1(a) + q1(b));
}

double ch_parity(StateKind kind, double param, const ProjectorSettings& s) {
    double corr_ab, corr_abp, corr_apb, corr_apbp, marg_a, marg_b;
    const double t1 = s.a.theta, t1p = s.a_prime.theta, t2 = s.b.theta, t2p = s.b_prime.theta;
    if (kind == StateKind::tmss) {
        const double r = param;
        const double ch2 = std::cosh(r) * std::cosh(r), sh2 = std::sinh(r) * std::sinh(r);
        const double c2r = std::cosh(2.0 * r), t2r = std::tanh(2.0 * r);
        auto corr = [&](double x, double y) {
            const double cx = std::cos(x), sx = std::sin(x), cy = std::cos(y), sy = std::sin(y);
            return (cx * cx * cy * cy * ch2 + sx * sx * sy * sy * sh2) / c2r +
                   sx * cx * sy * cy * t2r;
        };
        auto marg = [&](double x) {
            const double cx = std::cos(x), sx = std::sin(x);
            return (cx * cx * ch2 + sx * sx * sh2) / c2r;
        };
        corr_ab = corr(t1, t2); corr_abp = corr(t1, t2p);
        corr_apb = corr(t1p, t2); corr_apbp = corr(t1p, t2p);
        marg_a = marg(t1); marg_b = marg(t2);
    } else if (kind == StateKind::ecs) {
        const double k = k_of_gamma(param);
        auto corr = [&](double x, double y) {
            const double cx = std::cos(x), sx = std::sin(x), cy = std::cos(y), sy = std::sin(y);
            return 0.5 * (cx * cx * sy * sy + sx * sx * cy * cy) - k * sx * cx * sy * cy;
        };
        corr_ab = corr(t1, t2); corr_abp = corr(t1, t2p);
        corr_apb = corr(t1p, t2); corr_apbp = corr(t1p, t2p);
        marg_a = 0.5; marg_b = 0.5;
    } else {
        throw std::invalid_argument("ch_parity: unsupported state kind");
    }
    return corr_ab + corr_abp + corr_apb - corr_apbp - marg_a - marg_b;
}

double ch_qubit_single_photon(const ProjectorSettings& s) {
    const double t1 = s.a.theta, t1p = s.a_prime.theta, t2 = s.b.theta, t2p = s.b_prime.theta;
    return 0.25 * (std::cos(2.0 * (t1p - t2p)) - std::cos(2.0 * (t1 - t2p)) -
                   std::cos(2.0 * (t1p - t2)) - std::cos(2.0 * (t1 - t2)) - 2.0);
}

std::pair<double, double> ch_delta_bounds(const ProjectorSettings& s) {
    const double delta =
        -std::abs(std::sin(2.0 * (s.a.theta - s.a_prime.theta)) *
                  std::sin(2.0 * (s.b.theta - s.b_prime.theta))) / 4.0;
    const double root = std::sqrt(1.0 - 4.0 * delta);
    return {(-1.0 - root) / 2.0, (-1.0 + root) / 2.0};
}

FockOperator ch_delta_factor(double theta, double theta_prime, FockCutoff cutoff) {
    const int dim = cutoff.dim();
    CVec t = CVec::Zero(dim), tp = CVec::Zero(dim);
    t(0) = std::cos(theta); t(1) = std::sin(theta);
    tp(0) = std::cos(theta_prime); tp(1) = std::sin(theta_prime);
    const Complex ov = t.dot(tp);
    CMat m = ov * (t * tp.adjoint() - tp * t.adjoint());
    return FockOperator{std::move(m), cutoff, false, std::numeric_limits<double>::quiet_NaN()};
}

namespace {

template <typename OpBuilder>
double chsh_matrix(const TwoModeState& state, OpBuilder build, const auto& a, const auto& ap,
                   const auto& b, const auto& bp) {
    const FockOperator oa = build(a), oap = build(ap), ob = build(b), obp = build(bp);
    return expectation(state, oa, ob) + expectation(state, oa, obp) +
           expectation(state, oap, ob) - expectation(state, oap, obp);
}

template <typename OpBuilder>
double ch_matrix(const TwoModeState& state, OpBuilder build, const auto& a, const auto& ap,
                 const auto& b, const auto& bp) {
    const FockOperator oa = build(a), oap = build(ap), ob = build(b), obp = build(bp);
    const FockOperator id = make_identity(state.cutoff);
    return expectation(state, oa, ob) + expectation(state, oa, obp) +
           expectation(state, oap, ob) - expectation(state, oap, obp) -
           expectation(state, oa, id) - expectation(state, id, ob);
}

} // namespace

double chsh_pseudospin(const TwoModeState& state, const PseudospinSettings& s) {
    auto build = [&](PseudospinSetting x) { return pseudospin(x, state.cutoff); };
    return chsh_matrix(state, build, s.a, s.a_prime, s.b, s.b_prime);
}

double chsh_gisin_peres(const TwoModeState& state, const ProjectorSettings& s) {
    auto build = [&](ProjectorSetting x) { return gisin_peres(state.cutoff.dim(), x.theta); };
    return chsh_matrix(state, build, s.a, s.a_prime, s.b, s.b_prime);
}

double chsh_bw_state(const TwoModeState& state, const DisplacementSettings& s) {
    auto build = [&](DisplacementSetting x) { return bw_parity(x, state.cutoff); };
    return chsh_matrix(state, build, s.a, s.a_prime, s.b, s.b_prime);
}

double ch_qubit(const TwoModeState& state, const ProjectorSettings& s) {
    auto build = [&](ProjectorSetting x) { return ch_projector(x, state.cutoff); };
    return ch_matrix(state, build, s.a, s.a_prime, s.b, s.b_prime);
}

double ch_parity_state(const TwoModeState& state, const ProjectorSettings& s) {
    auto build = [&](ProjectorSetting x) { return chi_projector(x.theta, state.cutoff); };
    return ch_matrix(state, build, s.a, s.a_prime, s.b, s.b_prime);
}

double ch_q_state(const TwoModeState& state, const DisplacementSettings& s) {
    auto build = [&](DisplacementSetting x) { return bw_ch_projector(x, state.cutoff); };
    return ch_matrix(state, build, s.a, s.a_prime, s.b, s.b_prime);
}

GisinPeresCorrelations::GisinPeresCorrelations(const TwoModeState& state) {
    const int dim = state.cutoff.dim();
    CMat gx = CMat::Zero(dim, dim), gz = CMat::Zero(dim, dim), ge = CMat::Zero(dim, dim);
    for (int n = 0; n + 1 < dim; n += 2) {
        gx(n, n + 1) = 1.0;
        gx(n + 1, n) = 1.0;
        gz(n, n) = -1.0;
        gz(n + 1, n + 1) = 1.0;
    }
    if (dim % 2 == 1) ge(dim - 1, dim - 1) = 1.0;
    auto ev = [&](const CMat& m1, const CMat& m2) { return expectation_unchecked(state, m1, m2).real(); };
    xx_ = ev(gx, gx); xz_ = ev(gx, gz); zx_ = ev(gz, gx); zz_ = ev(gz, gz);
    xe_ = ev(gx, ge); ex_ = ev(ge, gx); ze_ = ev(gz, ge); ez_ = ev(ge, gz);
    ee_ = ev(ge, ge);
}

double GisinPeresCorrelations::correlation(double theta_a, double theta_b) const {
    const double sa = std::sin(theta_a), ca = std::cos(theta_a);
    const double sb = std::sin(theta_b), cb = std::cos(theta_b);
    return sa * sb * xx_ + sa * cb * xz_ + ca * sb * zx_ + ca * cb * zz_ + sa * xe_ + ca * ze_ +
           sb * ex_ + cb * ez_ + ee_;
}

double GisinPeresCorrelations::chsh(const ProjectorSettings& s) const {
    return correlation(s.a.theta, s.b.theta) + correlation(s.a.theta, s.b_prime.theta) +
           correlation(s.a_prime.theta, s.b.theta) -
           correlation(s.a_prime.theta, s.b_prime.theta);
}

double qubit_support_weight(const TwoModeState& state) {
    return state.coeffs.topLeftCorner(2, 2).squaredNorm();
}

BellResult make_bell_result(double value, BellSettings settings, Formalism formalism,
                            int iterations, int restarts, bool converged) {
    const bool chsh = formalism == Formalism::pseudospin || formalism == Formalism::bw ||
                      formalism == Formalism::gbw || formalism == Formalism::gisin_peres;
    if (chsh) {
        if (std::abs(value) > kCirelson + 1e-6)
            throw std::runtime_error("Bell value " + std::to_string(value) +
                                     " exceeds the Cirel'son bound");
    } else {
        if (value < kChLower - 1e-6 || value > kChUpper + 1e-6)
            throw std::runtime_error("Bell-CH value " + std::to_string(value) +
                                     " leaves the quantum range");
    }
    return BellResult{value, std::move(settings), formalism, iterations, restarts, converged};
}

} // namespace cvbell
