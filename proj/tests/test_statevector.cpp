#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "dcp/rng.hpp"
#include "dcp/statevector.hpp"
#include "doctest.h"
#include "helpers.hpp"

using dcp::Complex;
using dcp::GateOp;
using dcp::NoiseConfig;
using dcp::Rng;
using dcp::StateVector;

namespace {

const NoiseConfig kNoNoise{};

void expect_amp(const StateVector& s, std::uint64_t index, Complex want, double tol = 1e-12) {
  CAPTURE(index);
  CHECK(std::abs(s.amps[index] - want) < tol);
}

StateVector mat_vec(const std::vector<Complex>& m, const StateVector& v) {
  StateVector out(v.num_qubits);
  const std::uint64_t dim = v.dim();
  for (std::uint64_t j = 0; j < dim; ++j) {
    Complex acc(0.0);
    for (std::uint64_t k = 0; k < dim; ++k) acc += m[j * dim + k] * v.amps[k];
    out.amps[j] = acc;
  }
  return out;
}

}  // namespace

TEST_SUITE("statevector") {

TEST_CASE("zero state and basis states") {
  StateVector s(3);
  CHECK(s.dim() == 8);
  expect_amp(s, 0, Complex(1.0));
  StateVector b = StateVector::basis(3, 5);
  expect_amp(b, 5, Complex(1.0));
  CHECK(b.norm_sq() == doctest::Approx(1.0));
}

TEST_CASE("wire 0 is the most significant index bit") {
  Rng rng(1);
  StateVector s(2);
  dcp::apply_gate(s, GateOp::x(0), kNoNoise, rng);
  expect_amp(s, 2, Complex(1.0));  // |10>
  dcp::apply_gate(s, GateOp::cnot(0, 1), kNoNoise, rng);
  expect_amp(s, 3, Complex(1.0));  // |11>
}

TEST_CASE("hadamard is an involution") {
  Rng rng(1);
  StateVector s(1);
  dcp::apply_gate(s, GateOp::h(0), kNoNoise, rng);
  const double h = 1.0 / std::numbers::sqrt2;
  expect_amp(s, 0, Complex(h));
  expect_amp(s, 1, Complex(h));
  dcp::apply_gate(s, GateOp::h(0), kNoNoise, rng);
  expect_amp(s, 0, Complex(1.0));
  expect_amp(s, 1, Complex(0.0));
}

TEST_CASE("u3(pi/2,0,pi) equals H up to one global phase") {
  auto u = dcp::u3_matrix(std::numbers::pi / 2.0, 0.0, std::numbers::pi);
  const double h = 1.0 / std::numbers::sqrt2;
  const Complex want[4] = {Complex(h), Complex(h), Complex(h), Complex(-h)};
  const Complex phase = want[0] / u[0];
  CHECK(std::abs(std::abs(phase) - 1.0) < 1e-12);
  for (int i = 0; i < 4; ++i) CHECK(std::abs(u[i] * phase - want[i]) < 1e-12);
}

TEST_CASE("u3 angle domains are enforced") {
  Rng rng(1);
  StateVector s(1);
  CHECK_THROWS_AS(dcp::apply_gate(s, GateOp::u3(0, std::numbers::pi, 0.0, 0.0), kNoNoise, rng),
                  std::domain_error);
  CHECK_THROWS_AS(dcp::apply_gate(s, GateOp::u3(0, 0.1, -0.1, 0.0), kNoNoise, rng),
                  std::domain_error);
  CHECK_THROWS_AS(
      dcp::apply_gate(s, GateOp::u3(0, 0.1, 0.0, 2.0 * std::numbers::pi), kNoNoise, rng),
      std::domain_error);
  CHECK_NOTHROW(
      dcp::apply_gate(s, GateOp::u3(0, std::numbers::pi / 2.0, 0.0, std::numbers::pi),
                      kNoNoise, rng));
}

TEST_CASE("qft on a basis state lays down omega^{jk} phases") {
  Rng rng(1);
  StateVector s = StateVector::basis(3, 5);
  dcp::apply_gate(s, GateOp::qft(0, 3), kNoNoise, rng);
  const double scale = 1.0 / std::sqrt(8.0);
  for (std::uint64_t k = 0; k < 8; ++k) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>((5 * k) % 8) / 8.0;
    expect_amp(s, k, std::polar(scale, angle), 1e-9);
  }
}

TEST_CASE("qft butterfly matches the dense reference on random states") {
  for (int n = 1; n <= 6; ++n) {
    CAPTURE(n);
    const auto m = dcp::qft_matrix_reference(n);
    Rng rng(77 + static_cast<std::uint64_t>(n));
    StateVector v(n);
    for (auto& a : v.amps) a = Complex(rng.uniform() - 0.5, rng.uniform() - 0.5);
    const double scale = 1.0 / std::sqrt(v.norm_sq());
    for (auto& a : v.amps) a *= scale;

    StateVector got = v;
    dcp::apply_gate(got, GateOp::qft(0, n), kNoNoise, rng);
    StateVector want = mat_vec(m, v);
    for (std::uint64_t i = 0; i < v.dim(); ++i) {
      CHECK(std::abs(got.amps[i] - want.amps[i]) < 1e-9);
    }
  }
}

TEST_CASE("qft over an interior wire range acts on that register only") {
  // 3 wires, transform wires 1..2: |b, j> -> |b> (x) QFT|j>.
  const auto m = dcp::qft_matrix_reference(2);
  for (std::uint64_t b = 0; b < 2; ++b) {
    for (std::uint64_t j = 0; j < 4; ++j) {
      Rng rng(1);
      StateVector s = StateVector::basis(3, (b << 2) | j);
      dcp::apply_gate(s, GateOp::qft(1, 2), kNoNoise, rng);
      for (std::uint64_t k = 0; k < 4; ++k) {
        expect_amp(s, (b << 2) | k, m[j * 4 + k], 1e-9);
        expect_amp(s, ((b ^ 1) << 2) | k, Complex(0.0), 1e-9);
      }
    }
  }
}

TEST_CASE("measurement follows the born rule") {
  Rng rng(2024);
  std::uint64_t ones = 0;
  const int shots = 100000;
  for (int i = 0; i < shots; ++i) {
    StateVector s(1);
    dcp::apply_gate(s, GateOp::h(0), kNoNoise, rng);
    const int wires[] = {0};
    ones += static_cast<std::uint64_t>(dcp::measure(s, wires, kNoNoise, rng)[0]);
  }
  CHECK(std::abs(static_cast<double>(ones) / shots - 0.5) < 0.005);
}

TEST_CASE("measurement collapses entangled wires together") {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    StateVector s(2);
    dcp::apply_gate(s, GateOp::h(0), kNoNoise, rng);
    dcp::apply_gate(s, GateOp::cnot(0, 1), kNoNoise, rng);
    const int w0[] = {0};
    const int bit = dcp::measure(s, w0, kNoNoise, rng)[0];
    const std::uint64_t idx = bit ? 3u : 0u;
    expect_amp(s, idx, Complex(1.0), 1e-9);
    const int w1[] = {1};
    CHECK(dcp::measure(s, w1, kNoNoise, rng)[0] == bit);
  }
}

TEST_CASE("measure returns bits in the order the wires were listed") {
  Rng rng(1);
  StateVector s = StateVector::basis(2, 1);  // wire0=0, wire1=1
  const int rev[] = {1, 0};
  auto bits = dcp::measure(s, rev, kNoNoise, rng);
  CHECK(bits == std::vector<int>{1, 0});
}

TEST_CASE("readout noise flips reported bits but not the state") {
  SUBCASE("rate") {
    NoiseConfig noise;
    noise.p_readout = 0.03;
    Rng rng(99);
    std::uint64_t flips = 0;
    const int shots = 100000;
    for (int i = 0; i < shots; ++i) {
      StateVector s = StateVector::basis(1, 1);
      const int wires[] = {0};
      flips += dcp::measure(s, wires, noise, rng)[0] == 0 ? 1u : 0u;
    }
    CHECK(std::abs(static_cast<double>(flips) / shots - 0.03) < 0.005);
  }
  SUBCASE("certain flip leaves the collapsed state intact") {
    NoiseConfig noise;
    noise.p_readout = 1.0;
    Rng rng(1);
    StateVector s = StateVector::basis(1, 1);
    const int wires[] = {0};
    CHECK(dcp::measure(s, wires, noise, rng)[0] == 0);
    expect_amp(s, 1, Complex(1.0));
    CHECK(dcp::measure(s, wires, kNoNoise, rng)[0] == 1);
  }
}

TEST_CASE("certain pauli noise is applied after the ideal gate") {
  Rng rng(5);
  SUBCASE("bit flip") {
    NoiseConfig noise;
    noise.p_bit = 1.0;
    StateVector s(1);  // X then forced X cancels
    dcp::apply_gate(s, GateOp::x(0), noise, rng);
    expect_amp(s, 0, Complex(1.0));
  }
  SUBCASE("phase flip") {
    NoiseConfig noise;
    noise.p_phase = 1.0;
    StateVector s(1);  // H then forced Z gives |->
    dcp::apply_gate(s, GateOp::h(0), noise, rng);
    const double h = 1.0 / std::numbers::sqrt2;
    expect_amp(s, 0, Complex(h));
    expect_amp(s, 1, Complex(-h));
  }
}

TEST_CASE("zero noise makes gate application seed independent") {
  auto run = [](std::uint64_t seed) {
    Rng rng(seed);
    StateVector s(3);
    dcp::apply_gate(s, GateOp::h(0), kNoNoise, rng);
    dcp::apply_gate(s, GateOp::x(2), kNoNoise, rng);
    dcp::apply_gate(s, GateOp::cnot(0, 1), kNoNoise, rng);
    dcp::apply_gate(s, GateOp::qft(1, 2), kNoNoise, rng);
    return s;
  };
  StateVector a = run(1);
  StateVector b = run(987654321);
  for (std::uint64_t i = 0; i < a.dim(); ++i) CHECK(a.amps[i] == b.amps[i]);
}

TEST_CASE("norm stays 1 along noisy trajectories") {
  NoiseConfig noise;
  noise.p_bit = 0.05;
  noise.p_phase = 0.05;
  noise.p_readout = 0.1;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Rng rng(seed);
    StateVector s(3);
    for (int g = 0; g < 60; ++g) {
      switch (rng.uniform_below(5)) {
        case 0: dcp::apply_gate(s, GateOp::h(static_cast<int>(rng.uniform_below(3))), noise, rng); break;
        case 1: dcp::apply_gate(s, GateOp::x(static_cast<int>(rng.uniform_below(3))), noise, rng); break;
        case 2: {
          int c = static_cast<int>(rng.uniform_below(3));
          int t = (c + 1 + static_cast<int>(rng.uniform_below(2))) % 3;
          dcp::apply_gate(s, GateOp::cnot(c, t), noise, rng);
          break;
        }
        case 3:
          dcp::apply_gate(s, GateOp::u3(static_cast<int>(rng.uniform_below(3)), 1.1, 2.2, 3.3),
                          noise, rng);
          break;
        default: dcp::apply_gate(s, GateOp::qft(0, 3), noise, rng); break;
      }
      CHECK(std::abs(s.norm_sq() - 1.0) <= 1e-9);
    }
  }
}

TEST_CASE("validation errors") {
  Rng rng(1);
  StateVector s(2);
  CHECK_THROWS_AS(dcp::apply_gate(s, GateOp::h(2), kNoNoise, rng), std::out_of_range);
  CHECK_THROWS_AS(dcp::apply_gate(s, GateOp::cnot(1, 1), kNoNoise, rng), std::invalid_argument);
  CHECK_THROWS_AS(dcp::apply_gate(s, GateOp::qft(1, 2), kNoNoise, rng), std::out_of_range);

  std::vector<int> no_wires;
  CHECK_THROWS_AS(dcp::measure(s, no_wires, kNoNoise, rng), std::invalid_argument);

  StateVector bad(1);
  bad.amps[0] = Complex(0.5);
  CHECK_THROWS_AS(dcp::apply_gate(bad, GateOp::h(0), kNoNoise, rng), std::invalid_argument);

  NoiseConfig bad_noise;
  bad_noise.p_bit = 1.5;
  CHECK_THROWS_AS(dcp::apply_gate(s, GateOp::h(0), bad_noise, rng), std::invalid_argument);

  CHECK_THROWS_AS(dcp::qft_matrix_reference(0), std::invalid_argument);
  CHECK_THROWS_AS(dcp::qft_matrix_reference(13), std::invalid_argument);
  CHECK_THROWS_AS(StateVector(0), std::invalid_argument);
  CHECK_THROWS_AS(StateVector::basis(2, 4), std::out_of_range);
}

}  // TEST_SUITE
