#ifndef CVBELL_OBSERVABLES_HPP
#define CVBELL_OBSERVABLES_HPP

#include "cvbell/fock.hpp"

namespace cvbell {

// One local pseudospin direction a = (theta, phi).
struct PseudospinSetting {
    double theta = 0.0;
    double phi = 0.0;
};

// One local displacement setting alpha.
struct DisplacementSetting {
    Complex alpha{0.0, 0.0};
};

// One local qubit-projector angle: |theta> = cos(theta)|0> + sin(theta)|1>.
struct ProjectorSetting {
    double theta = 0.0;
};

// s_z = sum(|2n+1><2n+1| - |2n><2n|) = diag(-1,+1,-1,+1,...).
FockOperator pseudospin_sz(FockCutoff cutoff);

// s_- = sum |2n><2n+1|; s_+ = s_-^dag.
FockOperator pseudospin_lower(FockCutoff cutoff);
FockOperator pseudospin_sx(FockCutoff cutoff);

// a.s = s_z cos(theta) + sin(theta)(e^{i phi} s_- + e^{-i phi} s_+).
// Squares to the identity exactly when dim() is even.
FockOperator pseudospin(PseudospinSetting setting, FockCutoff cutoff);

// Gisin-Peres A(theta) = Gamma_x sin(theta) + Gamma_z cos(theta) + E at
// dimension N >= 2. Pauli blocks pair (0,1),(2,3),...; Gamma_z blocks are
// oriented diag(-1,+1) so that A(theta) at even N equals the pseudospin
// matrix a.s (phi = 0) truncated to N; E_{N-1,N-1} = 1 for odd N.
FockOperator gisin_peres(int dimension, double theta);

// Pi(alpha) = D(alpha) (Pi+ - Pi-) D^dag(alpha), with Pi+ - Pi- = diag(+1,-1,...).
FockOperator bw_parity(DisplacementSetting setting, FockCutoff cutoff);

// P(n,|alpha|) = <n|Pi(alpha)|n> via the matrix oracle at an internally
// chosen cutoff (the primary path).
double parity_expectation_number_state(int n, double abs_alpha);

// The Laguerre-series form of P(n,|alpha|). The published series pairs the
// odd term's degree/order as L_{2k+2}^{(n-2k-1)}, which disagrees with the
// matrix oracle; `corrected` uses degree 2k+1 and matches it.
enum class SeriesForm { as_printed, corrected };
double parity_expectation_series(int n, double abs_alpha, SeriesForm form);

// xi(theta) = |theta><theta| embedded at the working cutoff.
FockOperator ch_projector(ProjectorSetting setting, FockCutoff cutoff);

// zeta(alpha) = D(alpha)|0><0|D^dag(alpha) = |alpha><alpha|.
FockOperator bw_ch_projector(DisplacementSetting setting, FockCutoff cutoff);

// U(theta): U|2n> = -sin|2n+1> + cos|2n>, U|2n+1> = cos|2n+1> + sin|2n>.
// Exactly unitary when dim() is even.
FockOperator parity_rotation(double theta, FockCutoff cutoff);

// chi(theta) = sum U(theta)|2n><2n|U^dag(theta), the rotated even-parity
// projector; equals (I - cos(2 theta) s_z - sin(2 theta) s_x)/2.
FockOperator chi_projector(double theta, FockCutoff cutoff);

// |<e| D^dag(i alpha_i) R_x(theta) |e>|^2 with theta = 2 gamma alpha_i and
// R_x the ideal rotation on the {|e>,|d>} cat basis (identity on the
// complement).
double cat_rotation_fidelity(double gamma, double alpha_i, FockCutoff cutoff);
double cat_rotation_fidelity(double gamma, double alpha_i);

} // namespace cvbell

#endif
