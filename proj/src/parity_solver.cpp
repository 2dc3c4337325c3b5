#include "dcp/parity_solver.hpp"

#include <stdexcept>
#include <utility>

namespace dcp {

PostQftRecord qft_and_measure(SampleHandle handle, const NoiseConfig& noise, Rng& rng) {
  const int n = handle.register_width();
  handle.apply(GateOp::qft(1, n), noise, rng);

  std::vector<int> reg_wires(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) reg_wires[static_cast<std::size_t>(i)] = i + 1;
  const std::vector<int> bits = handle.measure_wires(reg_wires, noise, rng);

  PostQftRecord rec;
  rec.register_width = n;
  for (int b : bits) rec.x_hat = rec.x_hat << 1 | static_cast<std::uint64_t>(b & 1);
  rec.reflection = handle.release_qubit(0);
  return rec;
}

std::optional<CollisionPair> find_collision(std::span<const PostQftRecord> records) {
  if (records.empty()) return std::nullopt;
  const int n = records.front().register_width;
  for (const PostQftRecord& r : records) {
    if (r.register_width != n) {
      throw std::invalid_argument("records mix register widths");
    }
  }
  const std::uint64_t half = 1ull << (n - 1);
  for (std::size_t a = 0; a + 1 < records.size(); ++a) {
    for (std::size_t b = a + 1; b < records.size(); ++b) {
      if ((records[a].x_hat ^ records[b].x_hat) == half) {
        return CollisionPair{a, b, records[a].x_hat, records[b].x_hat};
      }
    }
  }
  return std::nullopt;
}

ExtractResult extract_parity(const CollisionPair& pair, int register_width,
                             StateVector refl_control, StateVector refl_target,
                             const NoiseConfig& noise, Rng& rng) {
  if (register_width < 1 || pair.index_a >= pair.index_b ||
      (pair.x_hat_a ^ pair.x_hat_b) != (1ull << (register_width - 1))) {
    throw std::invalid_argument("pair is not a collision for this register width");
  }
  if (refl_control.num_qubits != 1 || refl_target.num_qubits != 1) {
    throw std::invalid_argument("reflection states must be single qubits");
  }

  // Two-wire state, control on wire 0.
  StateVector pairstate(2);
  for (std::uint64_t c = 0; c < 2; ++c) {
    for (std::uint64_t t = 0; t < 2; ++t) {
      pairstate.amps[c << 1 | t] = refl_control.amps[c] * refl_target.amps[t];
    }
  }

  apply_gate(pairstate, GateOp::cnot(0, 1), noise, rng);
  const int target_wire[] = {1};
  if (measure(pairstate, target_wire, noise, rng)[0] == 0) {
    return {false, -1};
  }
  apply_gate(pairstate, GateOp::h(0), noise, rng);
  const int control_wire[] = {0};
  return {true, measure(pairstate, control_wire, noise, rng)[0]};
}

IterationOutcome parity_solve_iteration(std::vector<SampleHandle> samples,
                                        const NoiseConfig& noise, Rng& rng) {
  if (samples.size() < 2) throw std::invalid_argument("an iteration needs at least 2 samples");
  const int n = samples.front().register_width();
  for (const SampleHandle& h : samples) {
    if (h.register_width() != n) throw std::invalid_argument("samples mix register widths");
  }

  IterationOutcome out;
  out.records.reserve(samples.size());
  for (SampleHandle& h : samples) {
    out.records.push_back(qft_and_measure(std::move(h), noise, rng));
  }

  const auto pair = find_collision(out.records);
  if (!pair) {
    out.status = IterationOutcome::Status::NoCollision;
    return out;
  }
  const ExtractResult r =
      extract_parity(*pair, n, out.records[pair->index_a].reflection,
                     out.records[pair->index_b].reflection, noise, rng);
  if (!r.target_one) {
    out.status = IterationOutcome::Status::CnotMeasuredZero;
    return out;
  }
  out.status = IterationOutcome::Status::Solved;
  out.parity = r.parity;
  return out;
}

}  // namespace dcp
