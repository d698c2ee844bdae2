#ifndef CVBELL_BELL_HPP
#define CVBELL_BELL_HPP

#include "cvbell/fock.hpp"
#include "cvbell/observables.hpp"

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace cvbell {

enum class Formalism { pseudospin, bw, gbw, gisin_peres, ch_qubit, ch_q, ch_parity };
enum class StateKind { tmss, ecs, single_photon };

std::string to_string(Formalism f);
std::string to_string(StateKind k);

// Quantum bounds: CHSH family |B| <= 2 sqrt(2); CH family
// -(1+sqrt 2)/2 <= B <= (-1+sqrt 2)/2.
inline constexpr double kCirelson = 2.8284271247461902628;
inline constexpr double kChUpper = 0.2071067811865475244;
inline constexpr double kChLower = -1.2071067811865475244;

// The four-setting tuple (a, a', b, b') of one homogeneous kind.
struct PseudospinSettings {
    PseudospinSetting a, a_prime, b, b_prime;
};
struct DisplacementSettings {
    DisplacementSetting a, a_prime, b, b_prime;
};
struct ProjectorSettings {
    ProjectorSetting a, a_prime, b, b_prime;
};
using BellSettings = std::variant<PseudospinSettings, DisplacementSettings, ProjectorSettings>;

struct BellResult {
    double value = 0.0;
    BellSettings settings;
    Formalism formalism = Formalism::pseudospin;
    int iterations = 0;
    int restarts = 0;
    bool converged = false;
};

// Packages an evaluation/optimization outcome and enforces the family
// invariant: CHSH values obey |v| <= 2 sqrt(2) + 1e-6, CH values lie in
// [-(1+sqrt2)/2 - 1e-6, (-1+sqrt2)/2 + 1e-6]. Violations throw.
BellResult make_bell_result(double value, BellSettings settings, Formalism formalism,
                            int iterations, int restarts, bool converged);

// K(gamma) of the ECS pseudospin correlation, equal to the rotation fidelity
// |<d|U(pi/2)|e>|^2; in (0,1] and -> 1 for gamma -> 0 and gamma -> infinity.
// (The published closed form is inverted; see k_of_gamma_printed.)
double k_of_gamma(double gamma);
double k_of_gamma_printed(double gamma);

// ---- analytic correlation functions (infinite-dimensional, exact) ----

// ECS: E = -cos t1 cos t2 - K cos(p1 - p2) sin t1 sin t2.
double ecs_pseudospin_correlation(double k, PseudospinSetting a, PseudospinSetting b);
// TMSS: E = cos t1 cos t2 + tanh(2r) cos(p1 + p2) sin t1 sin t2.
double tmss_pseudospin_correlation(double r, PseudospinSetting a, PseudospinSetting b);

// ---- Bell functionals, closed-form paths ----

// CHSH with pseudospin observables for tmss/ecs.
double chsh_pseudospin_analytic(StateKind kind, double param, const PseudospinSettings& s);

// Generalized-BW CHSH from closed-form Wigner functions, tmss/ecs. The
// restricted BW case is the same call with a = b = 0.
double chsh_gbw(StateKind kind, double param, const DisplacementSettings& s);

// Bell-CH in the Q-function formalism, tmss/ecs/single_photon.
double ch_q(StateKind kind, double param, const DisplacementSettings& s);

// Bell-CH with rotated parity projectors chi(theta), tmss/ecs.
double ch_parity(StateKind kind, double param, const ProjectorSettings& s);

// Printed single-photon Bell-CH cosine formula.
double ch_qubit_single_photon(const ProjectorSettings& s);

// Setting-dependent CH bounds from the Delta-operator argument:
// ((-1 - sqrt(1-4 delta))/2, (-1 + sqrt(1-4 delta))/2) with
// delta = -|sin 2(t1-t1') sin 2(t2-t2')|/4.
std::pair<double, double> ch_delta_bounds(const ProjectorSettings& s);

// One mode-local factor of the Delta operator,
// <t|t'> (|t><t'| - |t'><t|), for property tests.
FockOperator ch_delta_factor(double theta, double theta_prime, FockCutoff cutoff);

// ---- Bell functionals, matrix-oracle paths (any truncated state) ----

double chsh_pseudospin(const TwoModeState& state, const PseudospinSettings& s);
double chsh_gisin_peres(const TwoModeState& state, const ProjectorSettings& s);
double chsh_bw_state(const TwoModeState& state, const DisplacementSettings& s);
double ch_qubit(const TwoModeState& state, const ProjectorSettings& s);
double ch_parity_state(const TwoModeState& state, const ProjectorSettings& s);
double ch_q_state(const TwoModeState& state, const DisplacementSettings& s);

// Precomputed Gisin-Peres base correlations of a state; evaluates the
// two-observable correlation E(theta_a, theta_b) in O(1).
class GisinPeresCorrelations {
public:
    explicit GisinPeresCorrelations(const TwoModeState& state);
    double correlation(double theta_a, double theta_b) const;
    double chsh(const ProjectorSettings& s) const;

private:
    double xx_, xz_, zx_, zz_, xe_, ex_, ze_, ez_, ee_;
};

// Fraction of the state's weight inside span{|0>,|1>} x span{|0>,|1>};
// ch_qubit is meaningful as a CH probability combination only near 1.
double qubit_support_weight(const TwoModeState& state);

} // namespace cvbell

#endif
