#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <string>
#include <vector>

#include "dcp/rng.hpp"
#include "dcp/statevector.hpp"

namespace dcp {

// One of the eight hardware runs: a two-sample challenge round at n = 1 with
// shift s and register values (x0, x1), compiled to four wires.
//   q0 register of sample one   q1 its reflection
//   q2 reflection of sample two q3 its register
struct CaseCircuit {
  std::string label;  // "A" .. "H", index s*4 + x0*2 + x1
  int s = 0, x0 = 0, x1 = 0;
  std::vector<GateOp> gates;
};

std::vector<CaseCircuit> enumerate_cases();

// Readout histogram for one case, keyed by "q3q2q1q0" bitstrings.
struct CaseCounts {
  std::string label;
  int s = 0, x0 = 0, x1 = 0;
  std::map<std::string, std::uint64_t> counts;
};

CaseCounts simulate_case_counts(const CaseCircuit& circuit, std::uint64_t shots,
                                const NoiseConfig& noise, Rng& rng);

// Keep q0 != q3 (registers disagree) and q2 = 1 (extraction armed); a kept
// shot errs when q1 misses s.
struct PostSelection {
  std::uint64_t kept = 0;
  std::uint64_t dropped = 0;
  std::uint64_t errors = 0;
  double error_rate = 0.0;
};

PostSelection post_select(const CaseCounts& counts);

// CSV with the exact header "case,bitstring,count"; rows accumulate.
std::vector<CaseCounts> load_counts_csv(std::istream& in);

// The hardware table shipped with the toolkit (also at data/table2_counts.csv).
const std::vector<CaseCounts>& published_counts();

// Replays the challenge by resampling recorded shots: per repetition draw s,
// then per iteration draw (x0, x1), pull one shot from that case and apply
// the post-selection; a dropped shot burns the iteration.
struct ReconstructionResult {
  int t = 0, r = 0, trials = 0;
  std::vector<double> accuracies;  // one challenge run per trial
  double mean = 0.0;
  double sigma_formula = 0.0;    // sigma_p at the mean accuracy
  double sigma_empirical = 0.0;  // spread across trials
  bool floor_warning = false;    // mean below even coin-toss reach
};

ReconstructionResult reconstruct_challenge(const std::vector<CaseCounts>& counts, int t,
                                           int r, int trials, std::uint64_t seed);

}  // namespace dcp
