// Python face of the simulator: parameter records, the closed-form device
// quantities, Hamiltonian builders (as numpy arrays), the ideal gate gallery
// with its audit reports, pulse schedules, the cavity-mediated transfer
// integrator, and the full CLI entry point.  JSON payloads cross the boundary
// as strings; matrices cross as numpy complex arrays.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>
#include <utility>

#include "jqc/cli.hpp"
#include "jqc/device.hpp"
#include "jqc/gates.hpp"
#include "jqc/hamiltonian.hpp"
#include "jqc/operator_core.hpp"
#include "jqc/schedule.hpp"
#include "jqc/transfer.hpp"

namespace py = pybind11;
using namespace jqc;

namespace {

SidebandBranch branch_from_name(const std::string& s) {
  if (s == "blue") return SidebandBranch::blue;
  if (s == "red") return SidebandBranch::red;
  throw std::invalid_argument("branch must be 'blue' or 'red', got '" + s +
                              "'");
}

// Malformed JSON is an input error: surface it as ValueError, matching the
// library's own validation exceptions.
template <typename Fn>
auto json_input(Fn&& fn) {
  try {
    return fn();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(e.what());
  }
}

py::dict report_dict(const GateReport& r) {
  py::dict d;
  d["target_name"] = r.target_name;
  d["fidelity"] = r.fidelity;
  d["leakage"] = r.leakage;
  d["makhlin_g1"] = r.makhlin_g1;
  d["makhlin_g2"] = r.makhlin_g2;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Deterministic simulator for SQUID charge qubits coupled through a "
      "single microwave cavity mode: device formulas, Hamiltonians at three "
      "approximation levels, sideband gate constructions with audits, pulse "
      "schedules, and the two-cavity state-transfer protocol.";

  py::class_<QubitParams>(m, "QubitParams")
      .def(py::init([](double e_ch, double e_j1, double e_j2, double n_bar,
                       double flux_ratio) {
             return QubitParams{e_ch, e_j1, e_j2, n_bar, flux_ratio};
           }),
           py::arg("e_ch") = 1.0, py::arg("e_j1") = 0.0,
           py::arg("e_j2") = 0.0, py::arg("n_bar") = 0.5,
           py::arg("flux_ratio") = 0.0)
      .def_readwrite("e_ch", &QubitParams::e_ch)
      .def_readwrite("e_j1", &QubitParams::e_j1)
      .def_readwrite("e_j2", &QubitParams::e_j2)
      .def_readwrite("n_bar", &QubitParams::n_bar)
      .def_readwrite("flux_ratio", &QubitParams::flux_ratio);

  py::class_<CavityParams>(m, "CavityParams")
      .def(py::init([](double nu, double g, int n_ph, double kappa) {
             return CavityParams{nu, g, n_ph, kappa};
           }),
           py::arg("nu") = 1.0, py::arg("g") = 0.0, py::arg("n_ph") = 2,
           py::arg("kappa") = 0.0)
      .def_readwrite("nu", &CavityParams::nu)
      .def_readwrite("g", &CavityParams::g)
      .def_readwrite("n_ph", &CavityParams::n_ph)
      .def_readwrite("kappa", &CavityParams::kappa);

  py::class_<DeviceModel>(m, "DeviceModel")
      .def(py::init([](std::vector<QubitParams> qubits, CavityParams cavity,
                       double capacitive_ec) {
             DeviceModel d;
             d.qubits = std::move(qubits);
             d.cavity = cavity;
             d.capacitive_ec = capacitive_ec;
             return d;
           }),
           py::arg("qubits"), py::arg("cavity") = CavityParams{},
           py::arg("capacitive_ec") = 0.0)
      .def_readwrite("qubits", &DeviceModel::qubits)
      .def_readwrite("cavity", &DeviceModel::cavity)
      .def_readwrite("capacitive_ec", &DeviceModel::capacitive_ec);

  // ---- device quantities ----
  m.def("validate_device", [](const DeviceModel& d) { validate(d); },
        py::arg("device"), "Raise ValueError on the first invalid parameter.");
  m.def("device_warnings", &device_warnings, py::arg("device"),
        py::arg("lamb_dicke_threshold") = 0.3);
  m.def("ej_effective", &ej_effective, py::arg("qubit"),
        "Effective junction energy E_J(phi).");
  m.def("beta_mixing", &beta_mixing, py::arg("qubit"),
        "Mixing angle beta(phi), continuous across half flux.");
  m.def("charging_bias", &charging_bias, py::arg("qubit"),
        "Charge bias E_ch (n_bar - 1/2).");
  m.def("solve_flux_for_ej", &solve_flux_for_ej, py::arg("target"),
        py::arg("e_j0"),
        "Flux ratio with 2 e_j0 cos(pi f) equal to target.");
  m.def("hilbert_dim",
        [](const DeviceModel& d) { return static_cast<long>(hilbert_dim(d)); },
        py::arg("device"));
  m.def("device_from_json",
        [](const std::string& text) {
          return json_input(
              [&] { return device_from_json(nlohmann::json::parse(text)); });
        },
        py::arg("text"), "Parse and validate a device from a JSON string.");
  m.def("device_to_json",
        [](const DeviceModel& d) { return device_to_json(d).dump(2); },
        py::arg("device"));

  // ---- Hamiltonian builders (numpy matrices, basis: qubits then mode) ----
  m.def("build_h0", [](const DeviceModel& d) { return build_h0(d).mat; },
        py::arg("device"));
  m.def("build_hint_exact",
        [](const DeviceModel& d) { return build_hint_exact(d).mat; },
        py::arg("device"));
  m.def("build_hint_first_order",
        [](const DeviceModel& d) { return build_hint_first_order(d).mat; },
        py::arg("device"));
  m.def("build_rwa_hamiltonian",
        [](const DeviceModel& d) { return build_rwa_hamiltonian(d).mat; },
        py::arg("device"));
  m.def("sideband_generator",
        [](const DeviceModel& d, std::size_t k, double beta,
           const std::string& branch) {
          return sideband_generator(d, k, beta, branch_from_name(branch)).mat;
        },
        py::arg("device"), py::arg("qubit"), py::arg("beta"),
        py::arg("branch"));
  m.def("displacement_factor",
        [](int n_ph, double g) { return displacement_factor(n_ph, g).mat; },
        py::arg("n_ph"), py::arg("g"),
        "exp(-i g (a + a^dag)) on the truncated mode space.");
  m.def("resonant_bias",
        [](const CavityParams& c, const std::string& branch) {
          return resonant_bias(c, branch_from_name(branch));
        },
        py::arg("cavity"), py::arg("branch"));
  m.def("expm",
        [](const Matrix& h, double t) { return expm(Operator(h), t).mat; },
        py::arg("h"), py::arg("t"), "exp(-i h t) for hermitian h.");

  // ---- gate gallery ----
  m.def("axis_from_params",
        [](const QubitParams& q) {
          const auto ar = axis_from_params(q);
          return py::make_tuple(ar.e_k, ar.axis);
        },
        py::arg("qubit"), "Rotation rate E_k and unit axis (x, y, z).");
  m.def("u_single",
        [](double gamma, const Eigen::Vector3d& axis) {
          return u_single(gamma, axis).mat;
        },
        py::arg("gamma"), py::arg("axis"),
        "cos(gamma) I - i sin(gamma) axis.sigma");
  m.def("hadamard", [] { return hadamard().mat; });
  m.def("z_phase", [](double zeta) { return z_phase(zeta).mat; },
        py::arg("zeta"));
  m.def("r_sideband",
        [](const DeviceModel& d, std::size_t k, double theta, double beta,
           const std::string& branch) {
          return r_sideband(d, k, theta, beta, branch_from_name(branch)).mat;
        },
        py::arg("device"), py::arg("qubit"), py::arg("theta"), py::arg("beta"),
        py::arg("branch"));
  m.def("conditional_phase",
        [](const DeviceModel& d, double t) {
          return conditional_phase(d, t).mat;
        },
        py::arg("device"), py::arg("t"),
        "Diagonal two-qubit phase gate on the |n1 n2> basis.");
  m.def("swap_qubit_photon",
        [](const DeviceModel& d, std::size_t k, int n_winding) {
          return swap_qubit_photon(d, k, n_winding).mat;
        },
        py::arg("device"), py::arg("qubit"), py::arg("n_winding") = 1);
  m.def("swap_qubit_qubit",
        [](const DeviceModel& d, std::size_t j, std::size_t k) {
          return swap_qubit_qubit(d, j, k).mat;
        },
        py::arg("device"), py::arg("receiver"), py::arg("source"));
  m.def("cnot_target_full",
        [](std::size_t nq, std::size_t j, std::size_t k) {
          return cnot_target_full(nq, j, k).mat;
        },
        py::arg("n_qubits"), py::arg("control"), py::arg("target"));
  m.def("vacuum_block_indices",
        [](const DeviceModel& d) {
          std::vector<long> out;
          for (auto i : vacuum_block_indices(d)) out.push_back(i);
          return out;
        },
        py::arg("device"));
  m.def("cnot_verified",
        [](const DeviceModel& d, std::size_t j, std::size_t k) {
          auto r = cnot_verified(d, j, k);
          return py::make_tuple(r.u.mat, report_dict(r.report));
        },
        py::arg("device"), py::arg("control"), py::arg("target"),
        "Full-space unitary plus its audit report against CNOT.");
  m.def("cnot_literal",
        [](const DeviceModel& d, std::size_t j, std::size_t k,
           std::optional<double> beta_j) {
          auto r = cnot_composition(d, j, k, beta_j);
          return py::make_tuple(r.u.mat, report_dict(r.report));
        },
        py::arg("device"), py::arg("control"), py::arg("target"),
        py::arg("beta_j") = py::none(),
        "The as-printed pulse composition and its audit report.");
  m.def("audit_gate",
        [](const Matrix& realized, const Matrix& target_block,
           const std::vector<long>& keep, const std::string& name) {
          std::vector<Eigen::Index> idx(keep.begin(), keep.end());
          return report_dict(audit_gate(Operator(realized),
                                        Operator(target_block), idx, name));
        },
        py::arg("realized"), py::arg("target_block"), py::arg("keep"),
        py::arg("target_name"));
  m.def("makhlin_invariants",
        [](const Matrix& u) {
          const auto mk = makhlin_invariants(Operator(u));
          return py::make_tuple(mk.g1, mk.g2);
        },
        py::arg("u"), "Local-equivalence invariants (g1, g2) of a 4x4 gate.");
  m.def("phase_invariant_fidelity",
        [](const Matrix& a, const Matrix& b) {
          return phase_invariant_fidelity(Operator(a), Operator(b));
        },
        py::arg("u"), py::arg("v"));
  m.def("bloch_grid", &bloch_grid, py::arg("n") = 20,
        "Deterministic (alpha, beta) sample points on the Bloch sphere.");

  // ---- pulse schedules ----
  m.def("run_schedule",
        [](const DeviceModel& d, const std::string& schedule_json,
           const std::string& engine, double tol) {
          ScheduleEngine eng;
          if (engine == "product_exact") {
            eng = ScheduleEngine::product_exact;
          } else if (engine == "ode") {
            eng = ScheduleEngine::ode;
          } else {
            throw std::invalid_argument(
                "engine must be 'product_exact' or 'ode', got '" + engine +
                "'");
          }
          const Schedule s = json_input([&] {
            return schedule_from_json(nlohmann::json::parse(schedule_json));
          });
          const auto res = run_schedule(d, s, eng, tol);
          py::dict out;
          out["propagator"] = res.propagator.mat;
          out["final_state"] =
              res.final_state ? py::cast(*res.final_state) : py::none();
          out["norm_drift"] = res.diagnostics.norm_drift;
          return out;
        },
        py::arg("device"), py::arg("schedule_json"),
        py::arg("engine") = "product_exact", py::arg("tol") = 1e-10,
        "Evolve a piecewise-constant control schedule given as JSON.");

  // ---- cavity-mediated transfer ----
  m.def("closed_form_alpha2", &closed_form_alpha2, py::arg("kappa"),
        py::arg("t"), "Printed receiver envelope alpha2(t).");
  m.def("run_transfer",
        [](double kappa, double g, double e_j0,
           std::pair<double, double> window, const std::string& pulse,
           const std::string& variant, const std::string& sender,
           std::optional<double> sender_rate, Complex alpha1, double tol,
           int n_samples) {
          TransferParams p;
          p.kappa = kappa;
          p.g = g;
          p.e_j0 = e_j0;
          p.coupling_variant = variant_from_name(variant);
          validate(p);
          const double t0 = window.first, t1 = window.second;
          if (!(t1 > t0)) {
            throw std::invalid_argument("window must satisfy t1 > t0");
          }
          PulsePair pp;
          if (pulse == "closed_form") {
            pp = closed_form_pulses(p);
          } else if (pulse == "zero") {
            pp.gamma1_of_t = [](double) { return 0.0; };
            pp.gamma2_of_t = [](double) { return 0.0; };
            pp.t_start = t0;
            pp.t_end = t1;
          } else if (pulse == "solved_no_reflection") {
            const double k = kappa;
            std::function<double(double)> g1;
            if (sender == "damped_ramp") {
              g1 = [k](double t) {
                return t < 0 ? 0.5 * k * std::exp(0.25 * k * t) : 0.5 * k;
              };
            } else if (sender == "soft_on") {
              g1 = [k](double t) {
                return t > 0 ? 0.5 * k * (1.0 - std::exp(-k * t)) : 0.0;
              };
            } else if (sender == "constant") {
              const double rate = sender_rate.value_or(k);
              if (rate < 0) {
                throw std::invalid_argument("sender rate must be >= 0");
              }
              g1 = [rate](double) { return rate; };
            } else {
              throw std::invalid_argument(
                  "sender must be 'damped_ramp', 'soft_on' or 'constant'");
            }
            pp = solve_receiver_pulse(g1, p, t0, t1);
          } else {
            throw std::invalid_argument(
                "pulse must be 'closed_form', 'zero' or "
                "'solved_no_reflection'");
          }
          TransferState init;
          init.alpha1 = alpha1;
          init.t = t0;
          const auto tr = integrate_transfer(pp, p, init, t0, t1, tol,
                                             n_samples);
          py::dict out;
          out["final_population"] = tr.summary.final_alpha2_sq;
          out["final_beta1_sq"] = tr.summary.final_beta1_sq;
          out["final_beta2_sq"] = tr.summary.final_beta2_sq;
          out["final_norm_sq"] = tr.summary.final_norm_sq;
          out["accumulated_loss"] = tr.summary.accumulated_loss;
          out["max_norm_sq"] = tr.summary.max_norm_sq;
          out["provenance"] = std::string(provenance_name(pp.provenance));
          out["alpha2_floor_hit"] = pp.alpha2_floor_hit;
          out["gamma2_cap_hit"] = pp.gamma2_cap_hit;
          return out;
        },
        py::arg("kappa"), py::arg("g"), py::arg("e_j0"), py::arg("window"),
        py::arg("pulse") = "closed_form", py::arg("variant") = "cascaded",
        py::arg("sender") = "damped_ramp",
        py::arg("sender_rate") = py::none(),
        py::arg("alpha1") = Complex(1.0, 0.0), py::arg("tol") = 1e-10,
        py::arg("n_samples") = 481,
        "Integrate the single-excitation transfer equations; returns the "
        "summary as a dict.");

  // ---- CLI ----
  m.def("run_cli",
        [](const std::vector<std::string>& args) {
          std::ostringstream out, err;
          const int code = run_cli(args, out, err);
          return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"),
        "Run the command-line driver in-process; returns (exit_code, stdout, "
        "stderr).");
}
