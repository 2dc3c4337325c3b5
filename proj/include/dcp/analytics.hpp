#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

namespace dcp {

// Bounds on the per-iteration probability that m uniform register readouts
// from [0, 2^n) contain no pair differing exactly in the top bit.
double k_lower(int m, int n);
double k_upper(int m, int n);

// Monte Carlo estimate of the same probability. Deterministic for a given
// seed regardless of the thread count.
double k_collision_mc(int m, int n, std::uint64_t trials, std::uint64_t seed,
                      int threads = 1);

// Accuracy after t iterations when each one solves with probability
// (1 - k) / 2 and a miss ends in a coin toss.
double p_from_k(double k, int t);

double p_upper(int m, int n, int t);  // from k_lower
double p_lower(int m, int n, int t);  // from k_upper

// Smallest t whose accuracy upper bound reaches target_p (in (0.5, 1)).
int estimate_t(int m, int n, double target_p);

// Reported spread of the accuracy over r repetitions.
double sigma_p(double p, int r);

// Accuracy of the single-readout strategy given m*t chances at a feature
// that lands with probability 1/2^n.
double p_baseline(int m, int n, int t);

struct AnalyticsResult {
  int m = 0, n = 0, t = 0;
  double k_lower = 0.0, k_upper = 0.0;
  double k_mc = std::numeric_limits<double>::quiet_NaN();
  double p_lower = 0.0, p_upper = 0.0;
  double p_mc = std::numeric_limits<double>::quiet_NaN();
  double p_b = 0.0;
};

// mc_trials = 0 skips the Monte Carlo fields.
AnalyticsResult compute_analytics(int m, int n, int t, std::uint64_t mc_trials = 0,
                                  std::uint64_t seed = 0, int threads = 1);

struct GapCell {
  int m = 0, n = 0, t = 0;
  double p_upper = 0.0, p_b = 0.0, gap = 0.0;
};

// One cell per (m, n) with m*(n+1) <= max_qubits whose lead over the
// single-readout strategy exceeds min_gap at some t < t_max; t is the
// smallest such iteration count.
std::vector<GapCell> gap_sweep(int max_qubits, double min_gap, int t_max);

// Qualifying cell with the fewest total qubits m*(n+1), ties broken by
// smaller n, then smaller m.
std::optional<GapCell> smallest_instance(int max_qubits, double min_gap, int t_max);

}  // namespace dcp
