#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dcp/statevector.hpp"

namespace dcp {

// One challenge sample (|0>|x> + |1>|(x+s) mod 2^n>)/sqrt(2). x and s are the
// verifier's secrets; everything prover-facing goes through SampleHandle.
struct SampleSpec {
  int n = 0;
  std::uint64_t x = 0;
  std::uint64_t s = 0;

  std::uint64_t modulus() const { return 1ull << n; }
  std::uint64_t shifted_x() const { return (x + s) & (modulus() - 1); }
  void validate() const;  // throws std::invalid_argument
};

// Preparation circuit on n+1 wires (wire 0 = reflection, wires 1..n = the
// register, MSB first): H on the reflection wire, X where x has a 1 bit, and
// a reflection-controlled CNOT onto every register wire where x and
// (x+s) mod 2^n differ.
std::vector<GateOp> synthesize_circuit(const SampleSpec& spec);

class VerifierAccess;

// Prover-side view of a prepared sample: n+1 wires, gates and measurement
// only. The generating (x, s) stays behind VerifierAccess.
class SampleHandle {
 public:
  int register_width() const { return spec_.n; }
  int num_qubits() const { return spec_.n + 1; }

  void apply(const GateOp& op, const NoiseConfig& noise, Rng& rng);
  std::vector<int> measure_wires(std::span<const int> wires, const NoiseConfig& noise, Rng& rng);

  // Hands over one wire as a standalone qubit. Valid only once every other
  // wire has been collapsed to a basis state (i.e. after measuring them);
  // throws std::logic_error otherwise.
  StateVector release_qubit(int wire) const;

 private:
  friend class VerifierAccess;
  friend SampleHandle prepare(const SampleSpec&, const NoiseConfig&, Rng&);
  SampleHandle(SampleSpec spec, StateVector state);

  SampleSpec spec_;
  StateVector state_;
};

// Verifier-role (and test-oracle) access to the hidden sample internals.
class VerifierAccess {
 public:
  static const SampleSpec& spec(const SampleHandle& h) { return h.spec_; }
  static const StateVector& state(const SampleHandle& h) { return h.state_; }
};

// Runs the synthesis circuit on |0...0> under the given noise.
SampleHandle prepare(const SampleSpec& spec, const NoiseConfig& noise, Rng& rng);

// Measures all n+1 wires (wire order 0..n) and returns the reported bits.
std::vector<int> verify_sample(SampleHandle& handle, const NoiseConfig& noise, Rng& rng);

// True when a full-sample readout matches one of the two branches
// (0, x) or (1, (x+s) mod 2^n).
bool verify_outcome(const SampleSpec& spec, std::span<const int> bits);

}  // namespace dcp
