#pragma once

#include <Eigen/Core>

#include <string>
#include <vector>

#include <json.hpp>

// Physical parameter records for SQUID charge qubits coupled to one cavity
// mode, plus the derived control quantities every Hamiltonian consumes:
//   E_J(phi) = sqrt((E_J1 - E_J2)^2 + 4 E_J1 E_J2 cos^2(pi phi/phi0))
//   tan(beta) = ((E_J1 - E_J2)/(E_J1 + E_J2)) tan(pi phi/phi0)
//   E_nbar    = E_ch (nbar - 1/2)
// Internal units: hbar = 1, energies in the caller's chosen energy unit.

namespace jqc {

struct QubitParams {
  double e_ch = 1.0;   // charging energy
  double e_j1 = 0.0;   // Josephson energy, junction 1
  double e_j2 = 0.0;   // Josephson energy, junction 2
  double n_bar = 0.5;  // induced gate charge
  double flux_ratio = 0.0;  // phi / phi0
};

struct CavityParams {
  double nu = 1.0;   // mode frequency
  double g = 0.0;    // dimensionless qubit-cavity coupling
  int n_ph = 2;      // Fock truncation
  double kappa = 0.0;  // cavity loss rate (transfer protocol only)
};

struct DeviceModel {
  std::vector<QubitParams> qubits;
  CavityParams cavity;
  double capacitive_ec = 0.0;  // nearest-neighbor coupling energy E_c
};

// Hard validation; throws std::invalid_argument on the first violation.
void validate(const QubitParams& q);
void validate(const CavityParams& c);
void validate(const DeviceModel& d);

// Soft regime checks.  Returned strings are stable (machine-greppable):
//   "charging_regime:qubit<k>"  unless e_ch >= 10 * max(e_j1, e_j2)
//   "lamb_dicke"                unless g * sqrt(n_ph) < threshold
std::vector<std::string> device_warnings(const DeviceModel& d,
                                         double lamb_dicke_threshold = 0.3);

// Effective Josephson energy E_J(phi) >= |e_j1 - e_j2|.
double ej_effective(const QubitParams& q);

// Mixing angle beta via atan2((e_j1-e_j2) sin(pi f), (e_j1+e_j2) cos(pi f)),
// continuous across flux_ratio = 1/2.  For a symmetric SQUID this picks
// beta = 0 below half flux and beta = pi above it, which keeps
// E_J(phi) e^{-i beta} equal to the signed 2 e_j0 cos(pi f).
double beta_mixing(const QubitParams& q);

// Charge bias E_nbar = e_ch * (n_bar - 1/2); zero at the degeneracy point.
double charging_bias(const QubitParams& q);

// Inverse of the symmetric-SQUID ej: flux_ratio in [0,1] with
// 2 e_j0 cos(pi f) = target.  Requires |target| <= 2 e_j0.
double solve_flux_for_ej(double target, double e_j0);

// Hilbert-space dimension 2^nq * n_ph.
Eigen::Index hilbert_dim(const DeviceModel& d);

// JSON round trip (validates on load).
DeviceModel device_from_json(const nlohmann::json& j);
nlohmann::json device_to_json(const DeviceModel& d);
DeviceModel load_device_file(const std::string& path);

}  // namespace jqc
