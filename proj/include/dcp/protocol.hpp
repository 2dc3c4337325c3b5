#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dcp/analytics.hpp"
#include "dcp/parity_solver.hpp"
#include "dcp/rng.hpp"
#include "dcp/statevector.hpp"

namespace dcp {

enum class StrategyId {
  ParityStandard,         // fresh batch of m per iteration, one extraction try
  ParityStreaming,        // rolling pool, samples arrive one at a time
  ParityExtendedStorage,  // batch prover with extra pool slots across iterations
  MeasurementBaseline,    // single-readout feature hunt
  RandomGuess,
};

struct Strategy {
  StrategyId id = StrategyId::ParityStandard;
  std::size_t capacity = 0;     // ParityStreaming pool size, at least m
  std::size_t extra_slots = 0;  // ParityExtendedStorage slots beyond m

  static Strategy standard() { return {}; }
  static Strategy streaming(std::size_t capacity) {
    return {StrategyId::ParityStreaming, capacity, 0};
  }
  static Strategy extended(std::size_t extra_slots) {
    return {StrategyId::ParityExtendedStorage, 0, extra_slots};
  }
  static Strategy baseline() { return {StrategyId::MeasurementBaseline, 0, 0}; }
  static Strategy random_guess() { return {StrategyId::RandomGuess, 0, 0}; }
};

struct ChallengeConfig {
  int m = 6;
  int n = 4;
  int t = 1;
  int r = 1000;
  std::uint64_t seed = 1729;
  NoiseConfig noise;
  Strategy strategy;

  void validate() const;
};

struct RunReport {
  ChallengeConfig config;
  std::vector<int> answers;  // one parity claim per repetition
  std::vector<int> truths;   // s & 1 per repetition
  std::uint64_t solved_count = 0;   // answers backed by a measurement
  std::uint64_t guessed_count = 0;  // coin-toss fallbacks
  double accuracy = 0.0;
  double sigma = 0.0;  // sigma_p at the empirical accuracy
};

struct RepetitionResult {
  int answer = 0;
  bool solved = false;
};

// One repetition against a fixed shift. rng is the repetition's own stream.
RepetitionResult run_repetition(const ChallengeConfig& config, std::uint64_t s, Rng& rng);

// r repetitions, each on its own derived stream, so the outcome depends only
// on the seed, never on the thread count.
RunReport run_challenge(const ChallengeConfig& config, int threads = 1);

// Prover memory for the one-at-a-time sample flow. The pool never holds a
// colliding pair: an arrival that collides is used up on the spot.
class StreamingProver {
 public:
  explicit StreamingProver(std::size_t capacity);

  // Returns the parity when this arrival completes an extraction.
  std::optional<int> feed(PostQftRecord record, const NoiseConfig& noise, Rng& rng);

  std::size_t pool_size() const { return pool_.size(); }
  std::span<const PostQftRecord> pool() const { return pool_; }

 private:
  std::size_t capacity_;
  std::vector<PostQftRecord> pool_;
};

// Batch prover whose pool of m + extra_slots records survives between
// iterations. One extraction attempt per iteration.
class ExtendedProver {
 public:
  ExtendedProver(std::size_t m, std::size_t extra_slots);

  void add(PostQftRecord record);  // oldest record leaves when full
  std::optional<int> attempt(const NoiseConfig& noise, Rng& rng);

  std::size_t pool_size() const { return pool_.size(); }
  std::size_t capacity() const { return capacity_; }
  std::span<const PostQftRecord> pool() const { return pool_; }

 private:
  std::size_t capacity_;
  std::vector<PostQftRecord> pool_;
};

enum class Verdict {
  BelowBaseline,             // within reach of the single-readout strategy
  QuantumVerified,           // clears the baseline band
  QuantumVerifiedQualified,  // also sits inside the predicted band
};

struct VerifyResult {
  Verdict verdict = Verdict::BelowBaseline;
  double accuracy = 0.0;
  double baseline_p = 0.0;
  double baseline_band = 0.0;   // two sigma at the baseline accuracy
  double predicted_p = 0.0;     // NaN without a Monte Carlo estimate
  double predicted_band = 0.0;
};

// Judges a report against analytics computed for the same (m, n, t).
VerifyResult verify_report(const RunReport& report, const AnalyticsResult& analytics);

}  // namespace dcp
