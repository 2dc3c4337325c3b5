#include "dcp/samples.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace dcp {

void SampleSpec::validate() const {
  if (n < 1 || n > 20) throw std::invalid_argument("register width must be in [1,20]");
  if (x >= modulus()) throw std::invalid_argument("x out of range for register");
  if (s >= modulus()) throw std::invalid_argument("s out of range for register");
}

std::vector<GateOp> synthesize_circuit(const SampleSpec& spec) {
  spec.validate();
  std::vector<GateOp> gates;
  gates.push_back(GateOp::h(0));
  const std::uint64_t diff = spec.x ^ spec.shifted_x();
  // Register wire w holds bit n-w of the value (wire 1 = MSB).
  for (int w = 1; w <= spec.n; ++w) {
    if (spec.x >> (spec.n - w) & 1ull) gates.push_back(GateOp::x(w));
  }
  for (int w = 1; w <= spec.n; ++w) {
    if (diff >> (spec.n - w) & 1ull) gates.push_back(GateOp::cnot(0, w));
  }
  return gates;
}

SampleHandle::SampleHandle(SampleSpec spec, StateVector state)
    : spec_(spec), state_(std::move(state)) {}

void SampleHandle::apply(const GateOp& op, const NoiseConfig& noise, Rng& rng) {
  apply_gate(state_, op, noise, rng);
}

std::vector<int> SampleHandle::measure_wires(std::span<const int> wires, const NoiseConfig& noise,
                                             Rng& rng) {
  return measure(state_, wires, noise, rng);
}

StateVector SampleHandle::release_qubit(int wire) const {
  if (wire < 0 || wire >= num_qubits()) throw std::out_of_range("wire out of range");
  const std::uint64_t mask = state_.wire_mask(wire);

  // The rest of the handle must be collapsed: support confined to one index
  // pair differing only in `wire`.
  std::uint64_t anchor = 0;
  double best = -1.0;
  for (std::uint64_t i = 0; i < state_.dim(); ++i) {
    const double w = std::norm(state_.amps[i]);
    if (w > best) {
      best = w;
      anchor = i;
    }
  }
  const std::uint64_t lo = anchor & ~mask;
  const std::uint64_t hi = anchor | mask;
  double leak = 0.0;
  for (std::uint64_t i = 0; i < state_.dim(); ++i) {
    if (i != lo && i != hi) leak += std::norm(state_.amps[i]);
  }
  if (leak > 1e-9) throw std::logic_error("other wires are not collapsed; measure them first");

  StateVector q(1);
  q.amps[0] = state_.amps[lo];
  q.amps[1] = state_.amps[hi];
  const double scale = 1.0 / std::sqrt(q.norm_sq());
  q.amps[0] *= scale;
  q.amps[1] *= scale;
  return q;
}

SampleHandle prepare(const SampleSpec& spec, const NoiseConfig& noise, Rng& rng) {
  StateVector state(spec.n + 1);
  for (const GateOp& op : synthesize_circuit(spec)) {
    apply_gate(state, op, noise, rng);
  }
  return SampleHandle(spec, std::move(state));
}

std::vector<int> verify_sample(SampleHandle& handle, const NoiseConfig& noise, Rng& rng) {
  std::vector<int> wires(static_cast<std::size_t>(handle.num_qubits()));
  std::iota(wires.begin(), wires.end(), 0);
  return handle.measure_wires(wires, noise, rng);
}

bool verify_outcome(const SampleSpec& spec, std::span<const int> bits) {
  if (bits.size() != static_cast<std::size_t>(spec.n + 1)) {
    throw std::invalid_argument("bit count does not match sample width");
  }
  std::uint64_t reg = 0;
  for (int i = 1; i <= spec.n; ++i) reg = reg << 1 | static_cast<std::uint64_t>(bits[static_cast<std::size_t>(i)] & 1);
  if (bits[0] == 0) return reg == spec.x;
  return reg == spec.shifted_x();
}

}  // namespace dcp
