#include "dcp/protocol.hpp"

#include <cmath>
#include <stdexcept>

#include "dcp/baseline.hpp"
#include "dcp/parallel.hpp"
#include "dcp/samples.hpp"

namespace dcp {
namespace {

bool is_parity(StrategyId id) {
  return id == StrategyId::ParityStandard || id == StrategyId::ParityStreaming ||
         id == StrategyId::ParityExtendedStorage;
}

SampleHandle fresh_sample(const ChallengeConfig& cfg, std::uint64_t s, Rng& rng) {
  const std::uint64_t big_n = std::uint64_t{1} << cfg.n;
  return prepare(SampleSpec{cfg.n, rng.uniform_below(big_n), s}, cfg.noise, rng);
}

int coin(Rng& rng) { return static_cast<int>(rng.uniform_below(2)); }

}  // namespace

void ChallengeConfig::validate() const {
  if (n < 1 || n > 20) throw std::invalid_argument("challenge: n out of [1, 20]");
  if (m < 1 || m > 100'000) throw std::invalid_argument("challenge: m out of range");
  if (is_parity(strategy.id) && m < 2)
    throw std::invalid_argument("challenge: parity strategies need at least two samples");
  if (t < 1 || t > 1'000'000) throw std::invalid_argument("challenge: t out of range");
  if (r < 1 || r > 10'000'000) throw std::invalid_argument("challenge: r out of range");
  noise.validate();
  if (strategy.id == StrategyId::ParityStreaming &&
      strategy.capacity < static_cast<std::size_t>(m))
    throw std::invalid_argument("challenge: streaming pool smaller than one batch");
}

StreamingProver::StreamingProver(std::size_t capacity) : capacity_(capacity) {
  if (capacity_ < 2) throw std::invalid_argument("streaming prover: capacity below 2");
  pool_.reserve(capacity_ + 1);
}

std::optional<int> StreamingProver::feed(PostQftRecord record, const NoiseConfig& noise,
                                         Rng& rng) {
  if (!pool_.empty() && pool_.front().register_width != record.register_width)
    throw std::invalid_argument("streaming prover: mixed register widths");
  const std::uint64_t half = std::uint64_t{1} << (record.register_width - 1);
  for (std::size_t i = 0; i < pool_.size(); ++i) {
    if ((pool_[i].x_hat ^ record.x_hat) != half) continue;
    const CollisionPair pair{i, pool_.size(), pool_[i].x_hat, record.x_hat};
    const ExtractResult res =
        extract_parity(pair, record.register_width, std::move(pool_[i].reflection),
                       std::move(record.reflection), noise, rng);
    pool_.erase(pool_.begin() + static_cast<std::ptrdiff_t>(i));
    if (res.target_one) return res.parity;
    return std::nullopt;  // arrival and partner both used up
  }
  pool_.push_back(std::move(record));
  if (pool_.size() > capacity_) pool_.erase(pool_.begin());
  return std::nullopt;
}

ExtendedProver::ExtendedProver(std::size_t m, std::size_t extra_slots)
    : capacity_(m + extra_slots) {
  if (m < 2) throw std::invalid_argument("extended prover: need at least two samples");
  pool_.reserve(capacity_ + 1);
}

void ExtendedProver::add(PostQftRecord record) {
  if (!pool_.empty() && pool_.front().register_width != record.register_width)
    throw std::invalid_argument("extended prover: mixed register widths");
  pool_.push_back(std::move(record));
  if (pool_.size() > capacity_) pool_.erase(pool_.begin());
}

std::optional<int> ExtendedProver::attempt(const NoiseConfig& noise, Rng& rng) {
  const auto pair = find_collision(pool_);
  if (!pair) return std::nullopt;
  const ExtractResult res = extract_parity(
      *pair, pool_.front().register_width, std::move(pool_[pair->index_a].reflection),
      std::move(pool_[pair->index_b].reflection), noise, rng);
  pool_.erase(pool_.begin() + static_cast<std::ptrdiff_t>(pair->index_b));
  pool_.erase(pool_.begin() + static_cast<std::ptrdiff_t>(pair->index_a));
  if (res.target_one) return res.parity;
  return std::nullopt;
}

RepetitionResult run_repetition(const ChallengeConfig& cfg, std::uint64_t s, Rng& rng) {
  switch (cfg.strategy.id) {
    case StrategyId::RandomGuess:
      return {coin(rng), false};

    case StrategyId::MeasurementBaseline: {
      const MeasureBasis basis{};
      const std::int64_t shots = static_cast<std::int64_t>(cfg.t) * cfg.m;
      for (std::int64_t i = 0; i < shots; ++i) {
        const std::uint64_t m_value =
            measure_in_basis(fresh_sample(cfg, s, rng), basis, cfg.noise, rng);
        if (const auto parity = feature_parity(m_value, cfg.n)) return {*parity, true};
      }
      return {coin(rng), false};
    }

    case StrategyId::ParityStandard: {
      for (int iter = 0; iter < cfg.t; ++iter) {
        std::vector<SampleHandle> batch;
        batch.reserve(static_cast<std::size_t>(cfg.m));
        for (int j = 0; j < cfg.m; ++j) batch.push_back(fresh_sample(cfg, s, rng));
        const IterationOutcome out = parity_solve_iteration(std::move(batch), cfg.noise, rng);
        if (out.status == IterationOutcome::Status::Solved) return {out.parity, true};
      }
      return {coin(rng), false};
    }

    case StrategyId::ParityStreaming: {
      StreamingProver prover(cfg.strategy.capacity);
      for (int iter = 0; iter < cfg.t; ++iter)
        for (int j = 0; j < cfg.m; ++j) {
          PostQftRecord rec = qft_and_measure(fresh_sample(cfg, s, rng), cfg.noise, rng);
          if (const auto parity = prover.feed(std::move(rec), cfg.noise, rng))
            return {*parity, true};
        }
      return {coin(rng), false};
    }

    case StrategyId::ParityExtendedStorage: {
      ExtendedProver prover(static_cast<std::size_t>(cfg.m), cfg.strategy.extra_slots);
      for (int iter = 0; iter < cfg.t; ++iter) {
        for (int j = 0; j < cfg.m; ++j)
          prover.add(qft_and_measure(fresh_sample(cfg, s, rng), cfg.noise, rng));
        if (const auto parity = prover.attempt(cfg.noise, rng)) return {*parity, true};
      }
      return {coin(rng), false};
    }
  }
  throw std::logic_error("run_repetition: unknown strategy");
}

RunReport run_challenge(const ChallengeConfig& config, int threads) {
  config.validate();
  const std::size_t reps = static_cast<std::size_t>(config.r);
  RunReport report;
  report.config = config;
  report.answers.assign(reps, 0);
  report.truths.assign(reps, 0);
  std::vector<char> solved(reps, 0);

  const std::uint64_t big_n = std::uint64_t{1} << config.n;
  parallel_for(reps, resolve_threads(threads), [&](std::size_t first, std::size_t last) {
    for (std::size_t rep = first; rep < last; ++rep) {
      Rng rng = Rng(config.seed).derive(rep + 1);
      const std::uint64_t s = rng.uniform_below(big_n);
      report.truths[rep] = static_cast<int>(s & 1);
      const RepetitionResult res = run_repetition(config, s, rng);
      report.answers[rep] = res.answer;
      solved[rep] = res.solved ? 1 : 0;
    }
  });

  std::uint64_t correct = 0;
  for (std::size_t rep = 0; rep < reps; ++rep) {
    if (report.answers[rep] == report.truths[rep]) ++correct;
    if (solved[rep]) ++report.solved_count;
  }
  report.guessed_count = reps - report.solved_count;
  report.accuracy = static_cast<double>(correct) / static_cast<double>(reps);
  report.sigma = sigma_p(report.accuracy, config.r);
  return report;
}

VerifyResult verify_report(const RunReport& report, const AnalyticsResult& analytics) {
  const ChallengeConfig& cfg = report.config;
  if (cfg.m != analytics.m || cfg.n != analytics.n || cfg.t != analytics.t)
    throw std::invalid_argument("verify_report: analytics computed for a different challenge");
  if (cfg.r < 1) throw std::invalid_argument("verify_report: empty report");

  VerifyResult out;
  out.accuracy = report.accuracy;
  out.baseline_p = analytics.p_b;
  out.baseline_band = 2.0 * sigma_p(analytics.p_b, cfg.r);
  out.predicted_p = analytics.p_mc;
  out.predicted_band =
      std::isnan(analytics.p_mc) ? analytics.p_mc : 2.0 * sigma_p(analytics.p_mc, cfg.r);
  if (out.accuracy <= out.baseline_p + out.baseline_band) {
    out.verdict = Verdict::BelowBaseline;
  } else if (!std::isnan(analytics.p_mc) &&
             std::abs(out.accuracy - analytics.p_mc) <= out.predicted_band) {
    out.verdict = Verdict::QuantumVerifiedQualified;
  } else {
    out.verdict = Verdict::QuantumVerified;
  }
  return out;
}

}  // namespace dcp
