#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dcp/samples.hpp"
#include "dcp/statevector.hpp"

namespace dcp {

// What is left of a sample after the register QFT and readout: the reported
// register value and the surviving reflection qubit
// (|0> + omega^{x_hat * s}|1>)/sqrt(2) in the noiseless case.
struct PostQftRecord {
  int register_width = 0;
  std::uint64_t x_hat = 0;
  StateVector reflection{1};
};

// Two records whose reported values differ by exactly 2^(n-1) mod 2^n, i.e.
// the top bit differs and the rest agree.
struct CollisionPair {
  std::size_t index_a = 0;  // always < index_b
  std::size_t index_b = 0;
  std::uint64_t x_hat_a = 0;
  std::uint64_t x_hat_b = 0;
};

struct ExtractResult {
  bool target_one = false;  // CNOT target readout; the attempt only counts on 1
  int parity = -1;          // defined when target_one
};

struct IterationOutcome {
  enum class Status { Solved, NoCollision, CnotMeasuredZero };
  Status status = Status::NoCollision;
  int parity = -1;
  std::vector<PostQftRecord> records;  // the records this iteration produced
};

// QFT over the register wires, read them out, and carry the reflection qubit
// forward. Consumes the handle.
PostQftRecord qft_and_measure(SampleHandle handle, const NoiseConfig& noise, Rng& rng);

// First collision in (index_a, index_b) lexicographic order, or nullopt.
// Records must share a register width.
std::optional<CollisionPair> find_collision(std::span<const PostQftRecord> records);

// CNOT from the lower-index reflection onto the higher-index one, read the
// target; on 1, H the control and read the parity. Throws if the pair is not
// a collision for the given width.
ExtractResult extract_parity(const CollisionPair& pair, int register_width,
                             StateVector refl_control, StateVector refl_target,
                             const NoiseConfig& noise, Rng& rng);

// One full prover iteration over a batch of samples sharing one width:
// process all samples, attempt at most one extraction, report the outcome.
// Failed iterations abandon every record (the standard prover keeps nothing).
IterationOutcome parity_solve_iteration(std::vector<SampleHandle> samples,
                                        const NoiseConfig& noise, Rng& rng);

}  // namespace dcp
