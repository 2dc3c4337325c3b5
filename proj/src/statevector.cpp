#include "dcp/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dcp {

namespace {

constexpr int kMaxQubits = 24;        // 2^24 amplitudes = 256 MiB, oracle headroom
constexpr double kNormTol = 1e-9;

void check_wire(const StateVector& state, int wire) {
  if (wire < 0 || wire >= state.num_qubits) {
    throw std::out_of_range("wire " + std::to_string(wire) + " out of range for " +
                            std::to_string(state.num_qubits) + " qubits");
  }
}

void check_normalized(const StateVector& state) {
  if (std::abs(state.norm_sq() - 1.0) > kNormTol) {
    throw std::invalid_argument("state is not normalized");
  }
}

// 2x2 on one wire; pairs (i, i|mask) with the wire bit clear/set.
void apply_1q(StateVector& state, int wire, const std::array<Complex, 4>& u) {
  const std::uint64_t mask = state.wire_mask(wire);
  const std::uint64_t dim = state.dim();
  for (std::uint64_t base = 0; base < dim; base += mask << 1) {
    for (std::uint64_t i = base; i < base + mask; ++i) {
      Complex a0 = state.amps[i];
      Complex a1 = state.amps[i | mask];
      state.amps[i] = u[0] * a0 + u[1] * a1;
      state.amps[i | mask] = u[2] * a0 + u[3] * a1;
    }
  }
}

void apply_x(StateVector& state, int wire) {
  const std::uint64_t mask = state.wire_mask(wire);
  const std::uint64_t dim = state.dim();
  for (std::uint64_t base = 0; base < dim; base += mask << 1) {
    for (std::uint64_t i = base; i < base + mask; ++i) {
      std::swap(state.amps[i], state.amps[i | mask]);
    }
  }
}

void apply_z(StateVector& state, int wire) {
  const std::uint64_t mask = state.wire_mask(wire);
  for (std::uint64_t i = 0; i < state.dim(); ++i) {
    if (i & mask) state.amps[i] = -state.amps[i];
  }
}

void apply_h(StateVector& state, int wire) {
  const double h = 1.0 / std::numbers::sqrt2;
  apply_1q(state, wire, {Complex(h), Complex(h), Complex(h), Complex(-h)});
}

void apply_cnot(StateVector& state, int control, int target) {
  const std::uint64_t cmask = state.wire_mask(control);
  const std::uint64_t tmask = state.wire_mask(target);
  for (std::uint64_t i = 0; i < state.dim(); ++i) {
    if ((i & cmask) && !(i & tmask)) std::swap(state.amps[i], state.amps[i | tmask]);
  }
}

// diag(1,1,1,e^{i angle}) on two wires; symmetric in the pair.
void apply_cphase(StateVector& state, int wa, int wb, double angle) {
  const std::uint64_t mask = state.wire_mask(wa) | state.wire_mask(wb);
  const Complex phase = std::polar(1.0, angle);
  for (std::uint64_t i = 0; i < state.dim(); ++i) {
    if ((i & mask) == mask) state.amps[i] *= phase;
  }
}

void apply_swap(StateVector& state, int wa, int wb) {
  const std::uint64_t ma = state.wire_mask(wa);
  const std::uint64_t mb = state.wire_mask(wb);
  for (std::uint64_t i = 0; i < state.dim(); ++i) {
    if ((i & ma) && !(i & mb)) std::swap(state.amps[i], state.amps[(i & ~ma) | mb]);
  }
}

// Textbook butterfly: H + controlled phases column by column, then reverse
// the wire order. Wire `first` is the register MSB, so this matches the dense
// omega^{jk} matrix with no extra reindexing.
void apply_qft(StateVector& state, int first, int span) {
  for (int i = 0; i < span; ++i) {
    apply_h(state, first + i);
    for (int j = i + 1; j < span; ++j) {
      apply_cphase(state, first + j, first + i,
                   2.0 * std::numbers::pi / static_cast<double>(1ull << (j - i + 1)));
    }
  }
  for (int i = 0; i < span / 2; ++i) {
    apply_swap(state, first + i, first + span - 1 - i);
  }
}

void noise_round(StateVector& state, std::span<const int> wires, const NoiseConfig& noise,
                 Rng& rng) {
  for (int w : wires) {
    if (noise.p_bit > 0.0 && rng.bernoulli(noise.p_bit)) apply_x(state, w);
    if (noise.p_phase > 0.0 && rng.bernoulli(noise.p_phase)) apply_z(state, w);
  }
}

}  // namespace

void NoiseConfig::validate() const {
  for (double p : {p_bit, p_phase, p_readout}) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument("noise rate outside [0,1]");
    }
  }
}

StateVector::StateVector(int qubits) : num_qubits(qubits) {
  if (qubits < 1 || qubits > kMaxQubits) {
    throw std::invalid_argument("qubit count must be in [1," + std::to_string(kMaxQubits) + "]");
  }
  amps.assign(1ull << qubits, Complex(0.0));
  amps[0] = Complex(1.0);
}

StateVector StateVector::basis(int qubits, std::uint64_t index) {
  StateVector s(qubits);
  if (index >= s.dim()) throw std::out_of_range("basis index out of range");
  s.amps[0] = Complex(0.0);
  s.amps[index] = Complex(1.0);
  return s;
}

double StateVector::norm_sq() const {
  double n = 0.0;
  for (const Complex& a : amps) n += std::norm(a);
  return n;
}

std::array<Complex, 4> u3_matrix(double a, double b, double c) {
  const double ch = std::cos(a / 2.0);
  const double sh = std::sin(a / 2.0);
  return {std::polar(ch, -(b + c) / 2.0), -std::polar(sh, -(b - c) / 2.0),
          std::polar(sh, (b - c) / 2.0), std::polar(ch, (b + c) / 2.0)};
}

void apply_gate(StateVector& state, const GateOp& op, const NoiseConfig& noise, Rng& rng) {
  noise.validate();
  check_normalized(state);

  int touched[2] = {op.q0, op.q1};
  std::span<const int> touched_span;

  switch (op.kind) {
    case GateOp::Kind::H:
      check_wire(state, op.q0);
      apply_h(state, op.q0);
      touched_span = {touched, 1};
      break;
    case GateOp::Kind::X:
      check_wire(state, op.q0);
      apply_x(state, op.q0);
      touched_span = {touched, 1};
      break;
    case GateOp::Kind::Cnot:
      check_wire(state, op.q0);
      check_wire(state, op.q1);
      if (op.q0 == op.q1) throw std::invalid_argument("cnot control equals target");
      apply_cnot(state, op.q0, op.q1);
      if (touched[0] > touched[1]) std::swap(touched[0], touched[1]);
      touched_span = {touched, 2};
      break;
    case GateOp::Kind::U3: {
      check_wire(state, op.q0);
      if (!(op.a >= 0.0 && op.a < std::numbers::pi) ||
          !(op.b >= 0.0 && op.b < 4.0 * std::numbers::pi) ||
          !(op.c >= 0.0 && op.c < 2.0 * std::numbers::pi)) {
        throw std::domain_error("u3 angles outside a:[0,pi) b:[0,4pi) c:[0,2pi)");
      }
      apply_1q(state, op.q0, u3_matrix(op.a, op.b, op.c));
      touched_span = {touched, 1};
      break;
    }
    case GateOp::Kind::Qft: {
      if (op.span < 1) throw std::invalid_argument("qft span must be >= 1");
      check_wire(state, op.q0);
      check_wire(state, op.q0 + op.span - 1);
      apply_qft(state, op.q0, op.span);
      if (!noise.is_zero()) {
        std::vector<int> range(static_cast<std::size_t>(op.span));
        for (int i = 0; i < op.span; ++i) range[static_cast<std::size_t>(i)] = op.q0 + i;
        noise_round(state, range, noise, rng);
      }
      return;
    }
  }
  noise_round(state, touched_span, noise, rng);
}

std::vector<int> measure(StateVector& state, std::span<const int> wires,
                         const NoiseConfig& noise, Rng& rng) {
  noise.validate();
  check_normalized(state);
  if (wires.empty()) throw std::invalid_argument("measurement needs at least one wire");
  for (int w : wires) check_wire(state, w);

  std::vector<int> reported;
  reported.reserve(wires.size());
  for (int w : wires) {
    const std::uint64_t mask = state.wire_mask(w);
    double p1 = 0.0;
    for (std::uint64_t i = 0; i < state.dim(); ++i) {
      if (i & mask) p1 += std::norm(state.amps[i]);
    }
    const int outcome = rng.uniform() < p1 ? 1 : 0;
    const double p_kept = outcome ? p1 : 1.0 - p1;
    const double scale = 1.0 / std::sqrt(p_kept);
    const std::uint64_t want = outcome ? mask : 0ull;
    for (std::uint64_t i = 0; i < state.dim(); ++i) {
      if ((i & mask) == want) {
        state.amps[i] *= scale;
      } else {
        state.amps[i] = Complex(0.0);
      }
    }
    int bit = outcome;
    if (noise.p_readout > 0.0 && rng.bernoulli(noise.p_readout)) bit ^= 1;
    reported.push_back(bit);
  }
  return reported;
}

std::vector<Complex> qft_matrix_reference(int n) {
  if (n < 1 || n > 12) throw std::invalid_argument("qft reference supports n in [1,12]");
  const std::uint64_t dim = 1ull << n;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  std::vector<Complex> m(dim * dim);
  for (std::uint64_t j = 0; j < dim; ++j) {
    for (std::uint64_t k = 0; k < dim; ++k) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>((j * k) % dim) /
                           static_cast<double>(dim);
      m[j * dim + k] = std::polar(scale, angle);
    }
  }
  return m;
}

}  // namespace dcp
