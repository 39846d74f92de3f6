#include "jqc/device.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace jqc {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void validate(const QubitParams& q) {
  if (!(q.e_ch > 0)) throw std::invalid_argument("QubitParams: e_ch > 0");
  if (q.e_j1 < 0 || q.e_j2 < 0) {
    throw std::invalid_argument("QubitParams: Josephson energies must be >= 0");
  }
  if (!std::isfinite(q.n_bar) || !std::isfinite(q.flux_ratio)) {
    throw std::invalid_argument("QubitParams: non-finite field");
  }
}

void validate(const CavityParams& c) {
  if (!(c.nu > 0)) throw std::invalid_argument("CavityParams: nu > 0");
  if (!(c.g >= 0 && c.g < 1)) {
    throw std::invalid_argument("CavityParams: g in [0, 1)");
  }
  if (c.n_ph < 2) throw std::invalid_argument("CavityParams: n_ph >= 2");
  if (!(c.kappa >= 0)) throw std::invalid_argument("CavityParams: kappa >= 0");
}

void validate(const DeviceModel& d) {
  if (d.qubits.empty()) {
    throw std::invalid_argument("DeviceModel: at least one qubit");
  }
  for (const auto& q : d.qubits) validate(q);
  validate(d.cavity);
  if (!(d.capacitive_ec >= 0)) {
    throw std::invalid_argument("DeviceModel: capacitive_ec >= 0");
  }
}

std::vector<std::string> device_warnings(const DeviceModel& d,
                                         double lamb_dicke_threshold) {
  std::vector<std::string> w;
  for (std::size_t k = 0; k < d.qubits.size(); ++k) {
    const auto& q = d.qubits[k];
    if (q.e_ch < 10.0 * std::max(q.e_j1, q.e_j2)) {
      w.push_back("charging_regime:qubit" + std::to_string(k));
    }
  }
  if (!(d.cavity.g * std::sqrt(double(d.cavity.n_ph)) <
        lamb_dicke_threshold)) {
    w.push_back("lamb_dicke");
  }
  return w;
}

double ej_effective(const QubitParams& q) {
  const double dj = q.e_j1 - q.e_j2;
  const double c = std::cos(kPi * q.flux_ratio);
  return std::sqrt(dj * dj + 4.0 * q.e_j1 * q.e_j2 * c * c);
}

double beta_mixing(const QubitParams& q) {
  if (q.e_j1 + q.e_j2 <= 0) {
    throw std::invalid_argument("beta_mixing: e_j1 + e_j2 > 0 required");
  }
  const double f = kPi * q.flux_ratio;
  return std::atan2((q.e_j1 - q.e_j2) * std::sin(f),
                    (q.e_j1 + q.e_j2) * std::cos(f));
}

double charging_bias(const QubitParams& q) {
  return q.e_ch * (q.n_bar - 0.5);
}

double solve_flux_for_ej(double target, double e_j0) {
  if (!(e_j0 > 0)) throw std::invalid_argument("solve_flux_for_ej: e_j0 > 0");
  if (std::abs(target) > 2.0 * e_j0) {
    throw std::invalid_argument("solve_flux_for_ej: |target| <= 2*e_j0");
  }
  return std::acos(target / (2.0 * e_j0)) / kPi;
}

Eigen::Index hilbert_dim(const DeviceModel& d) {
  Eigen::Index dim = d.cavity.n_ph;
  for (std::size_t k = 0; k < d.qubits.size(); ++k) dim *= 2;
  return dim;
}

DeviceModel device_from_json(const nlohmann::json& j) {
  DeviceModel d;
  for (const auto& jq : j.at("qubits")) {
    QubitParams q;
    q.e_ch = jq.at("e_ch").get<double>();
    q.e_j1 = jq.at("e_j1").get<double>();
    q.e_j2 = jq.at("e_j2").get<double>();
    q.n_bar = jq.at("n_bar").get<double>();
    q.flux_ratio = jq.at("flux_ratio").get<double>();
    d.qubits.push_back(q);
  }
  const auto& jc = j.at("cavity");
  d.cavity.nu = jc.at("nu").get<double>();
  d.cavity.g = jc.at("g").get<double>();
  d.cavity.n_ph = jc.at("n_ph").get<int>();
  d.cavity.kappa = jc.value("kappa", 0.0);
  d.capacitive_ec = j.value("capacitive_ec", 0.0);
  validate(d);
  return d;
}

nlohmann::json device_to_json(const DeviceModel& d) {
  nlohmann::json j;
  j["qubits"] = nlohmann::json::array();
  for (const auto& q : d.qubits) {
    j["qubits"].push_back({{"e_ch", q.e_ch},
                           {"e_j1", q.e_j1},
                           {"e_j2", q.e_j2},
                           {"n_bar", q.n_bar},
                           {"flux_ratio", q.flux_ratio}});
  }
  j["cavity"] = {{"nu", d.cavity.nu},
                 {"g", d.cavity.g},
                 {"n_ph", d.cavity.n_ph},
                 {"kappa", d.cavity.kappa}};
  j["capacitive_ec"] = d.capacitive_ec;
  return j;
}

DeviceModel load_device_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open device file: " + path);
  nlohmann::json j;
  in >> j;
  return device_from_json(j);
}

}  // namespace jqc
