#pragma once

#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "dcp/samples.hpp"
#include "dcp/statevector.hpp"

namespace dcp {

// Single-qubit basis applied to every wire before a full readout,
// M = sum over wires of bit * 2^(n-wire) (reflection wire weighs 2^n).
struct MeasureBasis {
  double a = std::numbers::pi / 2.0;
  double b = 0.0;
  double c = std::numbers::pi;
};

// Outcome values tied to the parity of s:
//   m_even appears iff s is even, m_odd iff s is odd (each with prob 1/2^n),
//   m_non never appears. Known bases: c=0 -> (N-1, 2N-2, N-2),
//   c=pi -> (N, 1, N+1), both at a=pi/2, any b.
struct FeatureValues {
  double c = 0.0;
  std::uint64_t m_non = 0;
  std::uint64_t m_even = 0;
  std::uint64_t m_odd = 0;
};

FeatureValues expected_features(int n, double c);

// Exact amplitude-level census of one basis over every (x, s):
//   even_only  values measurable for every even-s sample and no odd one
//   odd_only   the mirror class
//   never      values with zero probability for all (x, s)
// plus the spread of the feature probability across its class.
struct BasisAnalysis {
  int n = 0;
  MeasureBasis basis;
  std::vector<std::uint64_t> even_only;
  std::vector<std::uint64_t> odd_only;
  std::vector<std::uint64_t> never;
  double even_prob_min = 0.0, even_prob_max = 0.0;
  double odd_prob_min = 0.0, odd_prob_max = 0.0;
};

BasisAnalysis analyze_basis(int n, const MeasureBasis& basis);

// Scans a basis grid and reports the bases whose even/odd/never classes are
// all singletons. n <= 8; throws if n or the grid exceeds the search budget.
std::vector<std::pair<MeasureBasis, FeatureValues>> brute_force_feature_search(
    int n, std::span<const MeasureBasis> grid);

// U3(a,b,c) on every wire, then a full readout. Consumes the handle.
std::uint64_t measure_in_basis(SampleHandle handle, const MeasureBasis& basis,
                               const NoiseConfig& noise, Rng& rng);

// Parity told by one readout value in the c=pi basis, if any.
std::optional<int> feature_parity(std::uint64_t m_value, int n);

// Measures the stream in the c=pi basis; answers at the first feature value,
// falls back to a coin toss when the stream runs out.
int baseline_solve(std::vector<SampleHandle> stream, const NoiseConfig& noise, Rng& rng);

}  // namespace dcp
