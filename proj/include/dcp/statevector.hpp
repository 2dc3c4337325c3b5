#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "dcp/rng.hpp"

namespace dcp {

using Complex = std::complex<double>;

// Stochastic Pauli trajectory noise. After each ideal gate every wire the
// gate touches takes an independent X flip (p_bit) then Z flip (p_phase).
// p_readout flips each reported measurement bit classically; the collapsed
// state keeps the true outcome.
struct NoiseConfig {
  double p_bit = 0.0;
  double p_phase = 0.0;
  double p_readout = 0.0;

  bool is_zero() const { return p_bit == 0.0 && p_phase == 0.0 && p_readout == 0.0; }
  void validate() const;  // throws std::invalid_argument if any rate is outside [0,1]
};

// Dense statevector over `num_qubits` wires.
//
// Wire convention: wire 0 is the top wire and the most significant index bit,
// so reading a register top-to-bottom gives the usual binary expansion and
// basis index = refl * 2^n + x for a sample laid out (reflection, register).
struct StateVector {
  int num_qubits = 0;
  std::vector<Complex> amps;

  explicit StateVector(int qubits);
  static StateVector basis(int qubits, std::uint64_t index);

  std::uint64_t dim() const { return amps.size(); }
  double norm_sq() const;
  // Index bit for `wire`: wire 0 is the MSB.
  std::uint64_t wire_mask(int wire) const {
    return 1ull << (num_qubits - 1 - wire);
  }
};

struct GateOp {
  enum class Kind { H, X, Cnot, U3, Qft };

  Kind kind;
  int q0 = 0;       // single-qubit target / CNOT control / first QFT wire
  int q1 = 0;       // CNOT target
  int span = 0;     // QFT wire count
  double a = 0.0, b = 0.0, c = 0.0;  // U3 angles

  static GateOp h(int q) { return {Kind::H, q}; }
  static GateOp x(int q) { return {Kind::X, q}; }
  static GateOp cnot(int control, int target) { return {Kind::Cnot, control, target}; }
  // a in [0,pi), b in [0,4pi), c in [0,2pi); checked at application.
  static GateOp u3(int q, double a, double b, double c) {
    GateOp op{Kind::U3, q};
    op.a = a;
    op.b = b;
    op.c = c;
    return op;
  }
  // Exact O(span^2) butterfly over wires [first, first+span), wire `first`
  // being the most significant register bit.
  static GateOp qft(int first, int span) {
    GateOp op{Kind::Qft, first};
    op.span = span;
    return op;
  }
};

// Row-major U3 matrix:
//   [ e^{-i(b+c)/2} cos(a/2)   -e^{-i(b-c)/2} sin(a/2) ]
//   [ e^{+i(b-c)/2} sin(a/2)    e^{+i(b+c)/2} cos(a/2) ]
std::array<Complex, 4> u3_matrix(double a, double b, double c);

// Applies the ideal gate, then one trajectory-noise round on the touched
// wires. Throws on bad wire indices, out-of-domain U3 angles, or an input
// state whose norm is off by more than 1e-9.
void apply_gate(StateVector& state, const GateOp& op, const NoiseConfig& noise, Rng& rng);

// Measures the listed wires (joint Born rule, collapse, renormalize) and
// returns the reported bits in the same order. p_readout flips reported bits
// only.
std::vector<int> measure(StateVector& state, std::span<const int> wires,
                         const NoiseConfig& noise, Rng& rng);

// Dense DFT matrix, row-major, entry[j*2^n + k] = omega^{jk}/sqrt(2^n) with
// omega = e^{2 pi i / 2^n}. Reference oracle for the butterfly; n <= 12.
std::vector<Complex> qft_matrix_reference(int n);

}  // namespace dcp
