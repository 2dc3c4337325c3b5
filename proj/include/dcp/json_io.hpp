#pragma once

// JSON adapters, kept out of the domain headers so only serialization users
// pay for the include.

#include <cmath>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "dcp/analytics.hpp"
#include "dcp/protocol.hpp"
#include "dcp/reconstruction.hpp"
#include "dcp/samples.hpp"

namespace dcp {

inline void to_json(nlohmann::json& j, const SampleSpec& spec) {
  j = nlohmann::json{{"n", spec.n}, {"x", spec.x}, {"s", spec.s}};
}

inline void from_json(const nlohmann::json& j, SampleSpec& spec) {
  j.at("n").get_to(spec.n);
  j.at("x").get_to(spec.x);
  j.at("s").get_to(spec.s);
  spec.validate();
}

inline void to_json(nlohmann::json& j, const NoiseConfig& noise) {
  j = nlohmann::json{{"p_bit", noise.p_bit},
                     {"p_phase", noise.p_phase},
                     {"p_readout", noise.p_readout}};
}

inline void from_json(const nlohmann::json& j, NoiseConfig& noise) {
  noise.p_bit = j.value("p_bit", 0.0);
  noise.p_phase = j.value("p_phase", 0.0);
  noise.p_readout = j.value("p_readout", 0.0);
  noise.validate();
}

inline const char* strategy_kind(StrategyId id) {
  switch (id) {
    case StrategyId::ParityStandard: return "standard";
    case StrategyId::ParityStreaming: return "streaming";
    case StrategyId::ParityExtendedStorage: return "extended";
    case StrategyId::MeasurementBaseline: return "baseline";
    case StrategyId::RandomGuess: return "random";
  }
  throw std::invalid_argument("unknown strategy id");
}

inline StrategyId strategy_kind_from(const std::string& kind) {
  if (kind == "standard") return StrategyId::ParityStandard;
  if (kind == "streaming") return StrategyId::ParityStreaming;
  if (kind == "extended") return StrategyId::ParityExtendedStorage;
  if (kind == "baseline") return StrategyId::MeasurementBaseline;
  if (kind == "random") return StrategyId::RandomGuess;
  throw std::invalid_argument("unknown strategy kind: " + kind);
}

inline void to_json(nlohmann::json& j, const Strategy& strategy) {
  j = nlohmann::json{{"kind", strategy_kind(strategy.id)},
                     {"capacity", strategy.capacity},
                     {"extra_slots", strategy.extra_slots}};
}

inline void from_json(const nlohmann::json& j, Strategy& strategy) {
  strategy.id = strategy_kind_from(j.at("kind").get<std::string>());
  strategy.capacity = j.value("capacity", std::size_t{0});
  strategy.extra_slots = j.value("extra_slots", std::size_t{0});
}

inline void to_json(nlohmann::json& j, const ChallengeConfig& config) {
  j = nlohmann::json{{"m", config.m},       {"n", config.n},
                     {"t", config.t},       {"r", config.r},
                     {"seed", config.seed}, {"noise", config.noise},
                     {"strategy", config.strategy}};
}

inline void from_json(const nlohmann::json& j, ChallengeConfig& config) {
  j.at("m").get_to(config.m);
  j.at("n").get_to(config.n);
  j.at("t").get_to(config.t);
  j.at("r").get_to(config.r);
  config.seed = j.value("seed", std::uint64_t{1729});
  if (j.contains("noise")) j.at("noise").get_to(config.noise);
  if (j.contains("strategy")) j.at("strategy").get_to(config.strategy);
  config.validate();
}

// answers/truths are optional on input: reports written without
// --full-transcript carry only the aggregate numbers.
inline void to_json(nlohmann::json& j, const RunReport& report) {
  j = nlohmann::json{{"config", report.config},
                     {"solved_count", report.solved_count},
                     {"guessed_count", report.guessed_count},
                     {"accuracy", report.accuracy},
                     {"sigma", report.sigma},
                     {"answers", report.answers},
                     {"truths", report.truths}};
}

inline void from_json(const nlohmann::json& j, RunReport& report) {
  j.at("config").get_to(report.config);
  j.at("accuracy").get_to(report.accuracy);
  j.at("sigma").get_to(report.sigma);
  report.solved_count = j.value("solved_count", std::uint64_t{0});
  report.guessed_count = j.value("guessed_count", std::uint64_t{0});
  report.answers.clear();
  report.truths.clear();
  if (j.contains("answers")) j.at("answers").get_to(report.answers);
  if (j.contains("truths")) j.at("truths").get_to(report.truths);
  const auto r = static_cast<std::size_t>(report.config.r);
  if (!report.answers.empty() && report.answers.size() != r)
    throw std::invalid_argument("report answers length does not match r");
  if (!report.truths.empty() && report.truths.size() != r)
    throw std::invalid_argument("report truths length does not match r");
}

// Monte Carlo fields appear only when they were computed; NaN has no JSON
// representation worth emitting.
inline void to_json(nlohmann::json& j, const AnalyticsResult& result) {
  j = nlohmann::json{{"m", result.m},
                     {"n", result.n},
                     {"t", result.t},
                     {"k_lower", result.k_lower},
                     {"k_upper", result.k_upper},
                     {"p_lower", result.p_lower},
                     {"p_upper", result.p_upper},
                     {"p_B", result.p_b}};
  if (std::isfinite(result.k_mc)) j["k_mc"] = result.k_mc;
  if (std::isfinite(result.p_mc)) j["p_mc"] = result.p_mc;
}

inline void to_json(nlohmann::json& j, const GapCell& cell) {
  j = nlohmann::json{{"m", cell.m},           {"n", cell.n},
                     {"t", cell.t},           {"p_upper", cell.p_upper},
                     {"p_B", cell.p_b},       {"gap", cell.gap}};
}

inline const char* verdict_name(Verdict verdict) {
  switch (verdict) {
    case Verdict::BelowBaseline: return "below-baseline";
    case Verdict::QuantumVerified: return "quantum-verified";
    case Verdict::QuantumVerifiedQualified: return "quantum-verified-qualified";
  }
  throw std::invalid_argument("unknown verdict");
}

inline void to_json(nlohmann::json& j, const VerifyResult& result) {
  j = nlohmann::json{{"verdict", verdict_name(result.verdict)},
                     {"accuracy", result.accuracy},
                     {"baseline_p", result.baseline_p},
                     {"baseline_band", result.baseline_band}};
  if (std::isfinite(result.predicted_p)) {
    j["predicted_p"] = result.predicted_p;
    j["predicted_band"] = result.predicted_band;
  }
}

inline void to_json(nlohmann::json& j, const PostSelection& sel) {
  j = nlohmann::json{{"kept", sel.kept},
                     {"dropped", sel.dropped},
                     {"errors", sel.errors},
                     {"error_rate", sel.error_rate}};
}

inline void to_json(nlohmann::json& j, const ReconstructionResult& result) {
  j = nlohmann::json{{"t", result.t},
                     {"r", result.r},
                     {"trials", result.trials},
                     {"accuracies", result.accuracies},
                     {"mean", result.mean},
                     {"sigma_formula", result.sigma_formula},
                     {"sigma_empirical", result.sigma_empirical},
                     {"floor_warning", result.floor_warning}};
}

}  // namespace dcp
