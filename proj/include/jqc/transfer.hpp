#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "jqc/device.hpp"
#include "jqc/operator_core.hpp"

// Two-cavity state transfer in the single-excitation sector: amplitudes
// (alpha_i, beta_i) for qubit i excited / photon in cavity i, with cavity
// loss kappa and a one-way beta1 -> beta2 drive.  Two damping layouts are
// kept side by side:
//   cascaded:  beta1' = -G1 a1 - k b1,  beta2' = -G2 a2 - k b2 - c k b1
//              (the physically one-directional chain; asserted in tests)
//   literal_paper: both beta rows damp through -k b1 alone, exactly as the
//              source equations print them (kept for comparison, never
//              silently corrected).
// Both cavities sit at the two-photon resonance (qubit bias = nu/2); the
// pulses only ever enter through the rates Gamma_i = g E_J^i / 2 >= 0.

namespace jqc {

enum class CouplingVariant { cascaded, literal_paper };
enum class PulseProvenance { closed_form, solved_no_reflection, user_supplied };

const char* variant_name(CouplingVariant v);
CouplingVariant variant_from_name(const std::string& s);
const char* provenance_name(PulseProvenance p);

struct TransferParams {
  double kappa = 1.0;
  double g = 0.2;
  double e_j0 = 10.0;
  // Coefficient of the one-way beta1 -> beta2 drive in the cascaded variant.
  double cascade_factor = 2.0;
  CouplingVariant coupling_variant = CouplingVariant::cascaded;
};

void validate(const TransferParams& p);

struct TransferState {
  Complex alpha1{0.0, 0.0};
  Complex beta1{0.0, 0.0};
  Complex alpha2{0.0, 0.0};
  Complex beta2{0.0, 0.0};
  double t = 0.0;

  double norm_sq() const;
};

// Coupling rates Gamma_i(t) >= 0, total in t (zero outside their active
// window).  [t_start, t_end] records the window the pair was built for; it
// seeds the symmetry-check grid and is advisory for integration.
struct PulsePair {
  std::function<double(double)> gamma1_of_t;
  std::function<double(double)> gamma2_of_t;
  PulseProvenance provenance = PulseProvenance::user_supplied;
  double t_start = 0.0;
  double t_end = 0.0;
  // Set by solve_receiver_pulse when the constraint division needed help.
  bool alpha2_floor_hit = false;
  bool gamma2_cap_hit = false;
};

// Time derivative of the four amplitudes at state.t.  Gamma functions are
// evaluated here; a negative rate is a contract violation.
TransferState ode_rhs(const TransferState& state, const PulsePair& pulses,
                      const TransferParams& params);

// Sender rate held constant at Gamma1 = kappa (an exact algebraic identity
// of the arccos-flux parameterization); receiver rate from the printed
// envelope
//   alpha2(t) = sqrt(1 - e^{-kt} [1 + cos(sqrt(3) k t - pi/6)/sqrt(3)] / 2),
//   Gamma2(t) = k e^{-kt/2} cos(sqrt(3) k t / 2 - pi/3) / alpha2(t)
// for t >= 0, clamped at zero where the cosine goes negative; Gamma2 = 0 for
// t < 0.  Construction requires kappa/(g e_j0) <= 2; evaluating a pulse
// whose arccos argument leaves [-1, 1] throws std::domain_error naming the
// offending time.
PulsePair closed_form_pulses(const TransferParams& params);

// The symmetric counterpart: receiver as above, sender mirrored from it,
// Gamma1(t) = Gamma2(-t).  symmetry_check vanishes identically on this pair.
PulsePair mirrored_closed_form_pulses(const TransferParams& params);

// Printed receiver envelope alpha2(t); 0 for t < 0.
double closed_form_alpha2(double kappa, double t);

struct SolverOptions {
  int n_grid = 16384;
  // Division floor: |alpha2| below this uses the floor instead.
  double alpha2_floor = 1e-6;
  // Gamma2 cap, in units of kappa.
  double gamma2_cap_kappas = 1e3;
  // Error out if the floor stays engaged longer than this fraction of the
  // window after the receiver should have taken over.
  double max_floor_fraction = 0.9;
};

// Receiver pulse enforcing the no-reflection condition beta2 = -beta1 (the
// composite output ~ (beta1 + beta2) vanishes), obtained by co-integrating
// the sender with Gamma2 = -(Gamma1 alpha1 + c kappa beta1) / alpha2 on a
// fixed grid over [t_start, t_end].  Cascaded variant only.
PulsePair solve_receiver_pulse(const std::function<double(double)>& gamma1,
                               const TransferParams& params, double t_start,
                               double t_end, const SolverOptions& opts = {});

struct TransferSummary {
  double final_alpha2_sq = 0.0;  // transfer fidelity for alpha1(start) = 1
  double final_beta1_sq = 0.0;
  double final_beta2_sq = 0.0;
  double final_norm_sq = 0.0;
  double accumulated_loss = 0.0;  // initial norm^2 - final norm^2
  double max_norm_sq = 0.0;       // can exceed 1 for the literal variant
};

struct TransferTrajectory {
  std::vector<TransferState> samples;
  TransferSummary summary;
};

// Integrate the chosen variant from `initial` across [t_start, t_end],
// sampling n_samples states (endpoints included).  The initial norm must
// not exceed 1 + 1e-9.
TransferTrajectory integrate_transfer(const PulsePair& pulses,
                                      const TransferParams& params,
                                      const TransferState& initial,
                                      double t_start, double t_end,
                                      double tol = 1e-10,
                                      int n_samples = 481);

// Max over a mirrored grid of |Gamma2(t) - Gamma1(-t)|; zero certifies a
// symmetric pulse pair under the chosen time extension.  The grid spans
// [-T, T] with T = max(|t_start|, |t_end|) from the pair.
double symmetry_check(const PulsePair& pulses, int n_grid = 1025);
double symmetry_check(const PulsePair& pulses, double t_max, int n_grid);

// Exact column layout:
// t,alpha1_re,alpha1_im,beta1_re,beta1_im,alpha2_re,alpha2_im,beta2_re,beta2_im,norm
// with 17 significant digits and '\n' line endings.
void write_trajectory_csv(std::ostream& os, const TransferTrajectory& tr);

}  // namespace jqc
