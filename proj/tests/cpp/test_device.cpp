#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "jqc/device.hpp"
#include "jqc/operator_core.hpp"

using namespace jqc;

namespace {
constexpr double kPi = 3.14159265358979323846;

QubitParams qubit(double e_ch, double e_j1, double e_j2, double n_bar,
                  double flux) {
  QubitParams q;
  q.e_ch = e_ch;
  q.e_j1 = e_j1;
  q.e_j2 = e_j2;
  q.n_bar = n_bar;
  q.flux_ratio = flux;
  return q;
}
}  // namespace

TEST_CASE("effective Josephson energy: closed-form special cases") {
  CHECK(ej_effective(qubit(10, 1, 1, 0.5, 0.0)) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(ej_effective(qubit(10, 1, 1, 0.5, 0.5)) <= 1e-15);
  CHECK(ej_effective(qubit(10, 1.2, 0.8, 0.5, 0.5)) ==
        doctest::Approx(0.4).epsilon(1e-13));
  // Lower bound |e_j1 - e_j2| everywhere.
  for (int i = 0; i <= 20; ++i) {
    const double f = i / 20.0;
    CHECK(ej_effective(qubit(10, 1.7, 0.4, 0.5, f)) >= 1.3 - 1e-14);
  }
}

TEST_CASE("effective Josephson energy: scalar oracle on random tuples") {
  RandomStream rng(314159);
  for (int i = 0; i < 100; ++i) {
    const double e1 = rng.uniform(0.0, 2.0);
    const double e2 = rng.uniform(0.0, 2.0);
    const double f = rng.uniform(-1.5, 1.5);
    const QubitParams q = qubit(10, e1, e2, 0.5, f);
    // Independent evaluation path: expand under the square root directly.
    const double c = std::cos(kPi * f);
    const double oracle =
        std::sqrt(e1 * e1 + e2 * e2 - 2 * e1 * e2 + 4 * e1 * e2 * c * c);
    CHECK(std::abs(ej_effective(q) - oracle) <= 1e-12);
  }
}

TEST_CASE("effective Josephson energy is unit-periodic and even in flux") {
  for (int i = 0; i <= 40; ++i) {
    const double f = -1.0 + i * 0.05;
    const QubitParams a = qubit(10, 1.3, 0.6, 0.5, f);
    const QubitParams b = qubit(10, 1.3, 0.6, 0.5, f + 1.0);
    const QubitParams c = qubit(10, 1.3, 0.6, 0.5, -f);
    CHECK(std::abs(ej_effective(a) - ej_effective(b)) <= 1e-12);
    CHECK(std::abs(ej_effective(a) - ej_effective(c)) <= 1e-12);
  }
}

TEST_CASE("mixing angle: special cases and oracle value") {
  // Symmetric SQUID: beta = 0 below half flux (100-point grid).
  for (int i = 0; i < 100; ++i) {
    const double f = 0.5 * i / 100.0;
    CHECK(std::abs(beta_mixing(qubit(10, 1, 1, 0.5, f))) <= 1e-15);
  }
  CHECK(std::abs(beta_mixing(qubit(10, 1.2, 0.8, 0.5, 0.0))) <= 1e-15);
  CHECK(beta_mixing(qubit(10, 1.2, 0.8, 0.5, 0.25)) ==
        doctest::Approx(std::atan(0.2)).epsilon(1e-13));
  CHECK_THROWS_AS(beta_mixing(qubit(10, 0, 0, 0.5, 0.25)),
                  std::invalid_argument);
}

TEST_CASE("mixing angle is continuous across half flux") {
  const double eps = 1e-9;
  const QubitParams lo = qubit(10, 1.2, 0.8, 0.5, 0.5 - eps);
  const QubitParams mid = qubit(10, 1.2, 0.8, 0.5, 0.5);
  const QubitParams hi = qubit(10, 1.2, 0.8, 0.5, 0.5 + eps);
  CHECK(beta_mixing(mid) == doctest::Approx(kPi / 2).epsilon(1e-14));
  CHECK(std::abs(beta_mixing(lo) - beta_mixing(mid)) <= 1e-7);
  CHECK(std::abs(beta_mixing(hi) - beta_mixing(mid)) <= 1e-7);
  // tan(beta) matches the defining relation away from the pole.
  for (double f : {0.1, 0.3, 0.45, 0.62, 0.9}) {
    const QubitParams q = qubit(10, 1.7, 0.4, 0.5, f);
    const double lhs = std::tan(beta_mixing(q));
    const double rhs = (1.7 - 0.4) / (1.7 + 0.4) * std::tan(kPi * f);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }
}

TEST_CASE("charge bias: degeneracy point and affinity") {
  CHECK(charging_bias(qubit(4, 0.1, 0.1, 0.5, 0)) == 0.0);
  CHECK(charging_bias(qubit(4, 0.1, 0.1, 1.0, 0)) == doctest::Approx(2.0));
  CHECK(charging_bias(qubit(5, 0.1, 0.1, 0.3, 0)) == doctest::Approx(-1.0));
  // Midpoint identity holds exactly for an affine map.
  const double a = 0.17, b = 0.83;
  const double mid = charging_bias(qubit(7, 0, 0.1, (a + b) / 2, 0));
  const double avg = 0.5 * (charging_bias(qubit(7, 0, 0.1, a, 0)) +
                            charging_bias(qubit(7, 0, 0.1, b, 0)));
  CHECK(mid == doctest::Approx(avg).epsilon(1e-16));
}

TEST_CASE("flux solve inverts the symmetric ej curve") {
  CHECK(solve_flux_for_ej(2.0, 1.0) == doctest::Approx(0.0));
  CHECK(solve_flux_for_ej(0.0, 1.0) == doctest::Approx(0.5));
  CHECK(solve_flux_for_ej(1.0, 1.0) == doctest::Approx(1.0 / 3).epsilon(1e-13));
  CHECK_THROWS_AS(solve_flux_for_ej(2.01, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(solve_flux_for_ej(1.0, 0.0), std::invalid_argument);

  // Round trip over [0, 2 e_j0], including signed targets mapping to f > 1/2.
  const double e_j0 = 0.7;
  for (int i = 0; i <= 50; ++i) {
    const double target = 2 * e_j0 * i / 50.0;
    const double f = solve_flux_for_ej(target, e_j0);
    CHECK(f >= 0.0);
    CHECK(f <= 1.0);
    CHECK(std::abs(ej_effective(qubit(10, e_j0, e_j0, 0.5, f)) - target) <=
          1e-10);
    const double signed_target = -target;
    const double fs = solve_flux_for_ej(signed_target, e_j0);
    CHECK(std::abs(2 * e_j0 * std::cos(kPi * fs) - signed_target) <= 1e-12);
  }
}

TEST_CASE("validation and regime warnings") {
  DeviceModel d;
  d.qubits = {qubit(5, 0.02, 0.02, 0.5, 0.0)};
  d.cavity.nu = 1.0;
  d.cavity.g = 0.05;
  d.cavity.n_ph = 6;
  CHECK_NOTHROW(validate(d));
  CHECK(device_warnings(d).empty());

  DeviceModel noisy = d;
  noisy.qubits.push_back(qubit(1, 0.5, 0.5, 0.5, 0.0));  // e_ch < 10 e_j
  noisy.cavity.g = 0.2;                                  // g sqrt(6) ~ 0.49
  const auto w = device_warnings(noisy);
  REQUIRE(w.size() == 2);
  CHECK(w[0] == "charging_regime:qubit1");
  CHECK(w[1] == "lamb_dicke");
  // Threshold is configurable.
  CHECK(device_warnings(noisy, 0.6).size() == 1);

  DeviceModel bad = d;
  bad.cavity.n_ph = 1;
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);
  bad = d;
  bad.qubits.clear();
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);
  bad = d;
  bad.qubits[0].e_ch = 0;
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);
  bad = d;
  bad.cavity.g = 1.0;
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);
  bad = d;
  bad.capacitive_ec = -0.1;
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);
}

TEST_CASE("device JSON round trip preserves every field") {
  DeviceModel d;
  d.qubits = {qubit(5, 0.02, 0.03, 0.25, 0.125), qubit(4, 0.01, 0.01, 0.5, 0.3)};
  d.cavity.nu = 1.25;
  d.cavity.g = 0.04;
  d.cavity.n_ph = 8;
  d.cavity.kappa = 0.002;
  d.capacitive_ec = 0.6;
  const DeviceModel back = device_from_json(device_to_json(d));
  REQUIRE(back.qubits.size() == 2);
  CHECK(back.qubits[0].e_ch == 5.0);
  CHECK(back.qubits[0].e_j2 == 0.03);
  CHECK(back.qubits[0].n_bar == 0.25);
  CHECK(back.qubits[1].flux_ratio == 0.3);
  CHECK(back.cavity.nu == 1.25);
  CHECK(back.cavity.kappa == 0.002);
  CHECK(back.capacitive_ec == 0.6);
  CHECK(hilbert_dim(back) == 32);

  // Invalid payloads are rejected on load.
  nlohmann::json j = device_to_json(d);
  j["cavity"]["n_ph"] = 1;
  CHECK_THROWS_AS(device_from_json(j), std::invalid_argument);
  CHECK_THROWS(device_from_json(nlohmann::json::object()));
}
