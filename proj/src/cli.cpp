#include "dcp/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dcp/analytics.hpp"
#include "dcp/baseline.hpp"
#include "dcp/json_io.hpp"
#include "dcp/protocol.hpp"
#include "dcp/reconstruction.hpp"

namespace dcp {
namespace {

// Fixed-width float formatting so the same flags and seed always produce the
// same bytes, independent of locale or stream state.
std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

struct GlobalOpts {
  std::uint64_t seed = 1729;
  std::string out_path;
  std::string format = "json";
  int threads = 0;  // 0 = all cores
};

// Keeps the --out file stream alive for as long as anyone writes to it.
class OutputTarget {
 public:
  OutputTarget(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open output file: " + path);
      stream_ = &file_;
    }
  }
  std::ostream& stream() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

void emit_json(std::ostream& os, const nlohmann::json& j) { os << j.dump(2) << '\n'; }

int do_analytics(const GlobalOpts& g, const std::vector<int>& ms, const std::vector<int>& ns,
                 const std::vector<int>& ts, std::uint64_t mc_trials, std::ostream& os) {
  std::vector<AnalyticsResult> rows;
  for (int m : ms)
    for (int n : ns)
      for (int t : ts) rows.push_back(compute_analytics(m, n, t, mc_trials, g.seed, g.threads));
  if (g.format == "csv") {
    os << "m,n,t,k_lower,k_upper,p_lower,p_upper,p_B\n";
    for (const auto& r : rows)
      os << r.m << ',' << r.n << ',' << r.t << ',' << num(r.k_lower) << ',' << num(r.k_upper)
         << ',' << num(r.p_lower) << ',' << num(r.p_upper) << ',' << num(r.p_b) << '\n';
  } else if (rows.size() == 1) {
    emit_json(os, nlohmann::json(rows.front()));
  } else {
    emit_json(os, nlohmann::json(rows));
  }
  return 0;
}

int do_sweep(const GlobalOpts& g, int max_qubits, double min_gap, int t_max, std::ostream& os) {
  std::vector<GapCell> cells = gap_sweep(max_qubits, min_gap, t_max);
  std::optional<GapCell> best = smallest_instance(max_qubits, min_gap, t_max);
  if (g.format == "csv") {
    os << "m,n,t,p_upper,p_B,gap\n";
    for (const auto& c : cells)
      os << c.m << ',' << c.n << ',' << c.t << ',' << num(c.p_upper) << ',' << num(c.p_b) << ','
         << num(c.gap) << '\n';
  } else {
    nlohmann::json j;
    j["cells"] = cells;
    j["smallest"] = nullptr;
    if (best) j["smallest"] = *best;
    emit_json(os, j);
  }
  return 0;
}

struct SimulateOpts {
  int m = 6, n = 4, t = 1, r = 1000;
  std::string strategy = "standard";
  std::int64_t capacity = -1;     // streaming pool, -1 = 2m
  std::int64_t extra_slots = -1;  // extended storage, -1 = m
  double p_bit = 0.0, p_phase = 0.0, p_readout = 0.0;
  std::uint64_t mc_trials = 0;
  bool full_transcript = false;
};

Strategy make_strategy(const std::string& kind, std::int64_t capacity, std::int64_t extra_slots,
                       int m) {
  Strategy s;
  s.id = strategy_kind_from(kind);
  if (s.id == StrategyId::ParityStreaming)
    s.capacity = capacity < 0 ? static_cast<std::size_t>(2 * m)
                              : static_cast<std::size_t>(capacity);
  if (s.id == StrategyId::ParityExtendedStorage)
    s.extra_slots = extra_slots < 0 ? static_cast<std::size_t>(m)
                                    : static_cast<std::size_t>(extra_slots);
  return s;
}

int do_simulate(const GlobalOpts& g, const SimulateOpts& o, std::ostream& os) {
  ChallengeConfig config;
  config.m = o.m;
  config.n = o.n;
  config.t = o.t;
  config.r = o.r;
  config.seed = g.seed;
  config.noise = NoiseConfig{o.p_bit, o.p_phase, o.p_readout};
  config.strategy = make_strategy(o.strategy, o.capacity, o.extra_slots, o.m);
  config.validate();
  RunReport report = run_challenge(config, g.threads);
  AnalyticsResult analytics =
      compute_analytics(config.m, config.n, config.t, o.mc_trials, g.seed, g.threads);
  VerifyResult verify = verify_report(report, analytics);
  if (g.format == "csv") {
    os << "rep,answer,truth\n";
    for (std::size_t i = 0; i < report.answers.size(); ++i)
      os << i << ',' << report.answers[i] << ',' << report.truths[i] << '\n';
  } else {
    nlohmann::json j(report);
    if (!o.full_transcript) {
      j.erase("answers");
      j.erase("truths");
    }
    j["verdict"] = verdict_name(verify.verdict);
    j["verify"] = verify;
    emit_json(os, j);
  }
  return 0;
}

int do_verify(const GlobalOpts& g, const std::string& report_path, std::uint64_t mc_trials,
              std::ostream& os, std::ostream& err) {
  std::ifstream in(report_path);
  if (!in) throw std::runtime_error("cannot open report: " + report_path);
  RunReport report = nlohmann::json::parse(in).get<RunReport>();
  std::uint64_t trials = mc_trials;
  if (trials > 0 && report.config.n > 24) {
    err << "note: register too wide for a Monte Carlo estimate, using bounds only\n";
    trials = 0;
  }
  AnalyticsResult analytics = compute_analytics(report.config.m, report.config.n, report.config.t,
                                                trials, g.seed, g.threads);
  VerifyResult result = verify_report(report, analytics);
  if (g.format == "csv") {
    os << "verdict,accuracy,p_B,baseline_band,p_mc,predicted_band\n";
    os << verdict_name(result.verdict) << ',' << num(result.accuracy) << ','
       << num(result.baseline_p) << ',' << num(result.baseline_band) << ','
       << (std::isfinite(result.predicted_p) ? num(result.predicted_p) : "") << ','
       << (std::isfinite(result.predicted_band) ? num(result.predicted_band) : "") << '\n';
  } else {
    nlohmann::json j(result);
    j["analytics"] = analytics;
    emit_json(os, j);
  }
  return 0;
}

int do_baseline(const GlobalOpts& g, int n, bool search, std::ostream& os) {
  constexpr double pi = std::numbers::pi;
  if (search) {
    if (n > 6) throw std::invalid_argument("--search supports n <= 6");
    // b is scanned nowhere: features are invariant in b, checked elsewhere
    std::vector<MeasureBasis> grid;
    for (double a : {pi / 4.0, pi / 2.0})
      for (double c : {0.0, pi / 2.0, pi, 3.0 * pi / 2.0}) grid.push_back({a, 0.0, c});
    auto found = brute_force_feature_search(n, grid);
    if (g.format == "csv") {
      os << "a,b,c,m_non,m_even,m_odd\n";
      for (const auto& [basis, f] : found)
        os << num(basis.a) << ',' << num(basis.b) << ',' << num(basis.c) << ',' << f.m_non << ','
           << f.m_even << ',' << f.m_odd << '\n';
    } else {
      nlohmann::json rows = nlohmann::json::array();
      for (const auto& [basis, f] : found)
        rows.push_back({{"a", basis.a},
                        {"b", basis.b},
                        {"c", basis.c},
                        {"m_non", f.m_non},
                        {"m_even", f.m_even},
                        {"m_odd", f.m_odd}});
      nlohmann::json j;
      j["n"] = n;
      j["found"] = rows;
      emit_json(os, j);
    }
    return 0;
  }

  const double prob = std::ldexp(1.0, -n);
  struct Row {
    FeatureValues features;
    std::string census;
  };
  std::vector<Row> table;
  for (double c : {0.0, pi}) {
    FeatureValues f = expected_features(n, c);
    std::string census = "skipped";
    if (n <= 8) {
      BasisAnalysis analysis = analyze_basis(n, MeasureBasis{pi / 2.0, 0.0, c});
      bool match = analysis.even_only == std::vector<std::uint64_t>{f.m_even} &&
                   analysis.odd_only == std::vector<std::uint64_t>{f.m_odd} &&
                   analysis.never == std::vector<std::uint64_t>{f.m_non} &&
                   std::abs(analysis.even_prob_min - prob) < 1e-12 &&
                   std::abs(analysis.even_prob_max - prob) < 1e-12 &&
                   std::abs(analysis.odd_prob_min - prob) < 1e-12 &&
                   std::abs(analysis.odd_prob_max - prob) < 1e-12;
      census = match ? "exact" : "mismatch";
    }
    table.push_back({f, census});
  }
  if (g.format == "csv") {
    os << "n,c,m_non,m_even,m_odd,probability,census\n";
    for (const auto& row : table)
      os << n << ',' << num(row.features.c) << ',' << row.features.m_non << ','
         << row.features.m_even << ',' << row.features.m_odd << ',' << num(prob) << ','
         << row.census << '\n';
  } else {
    nlohmann::json bases = nlohmann::json::array();
    for (const auto& row : table)
      bases.push_back({{"c", row.features.c},
                       {"m_non", row.features.m_non},
                       {"m_even", row.features.m_even},
                       {"m_odd", row.features.m_odd},
                       {"census", row.census}});
    nlohmann::json j;
    j["n"] = n;
    j["probability"] = prob;
    j["bases"] = bases;
    emit_json(os, j);
  }
  return 0;
}

int do_reconstruct(const GlobalOpts& g, const std::string& counts_path, int t, int r, int trials,
                   std::ostream& os) {
  std::vector<CaseCounts> table;
  if (counts_path.empty()) {
    table = published_counts();
  } else {
    std::ifstream in(counts_path);
    if (!in) throw std::runtime_error("cannot open counts file: " + counts_path);
    table = load_counts_csv(in);
  }
  ReconstructionResult result = reconstruct_challenge(table, t, r, trials, g.seed);
  if (g.format == "csv") {
    os << "trial,accuracy,mean,sigma_formula,sigma_empirical\n";
    for (std::size_t i = 0; i < result.accuracies.size(); ++i)
      os << i << ',' << num(result.accuracies[i]) << ',' << num(result.mean) << ','
         << num(result.sigma_formula) << ',' << num(result.sigma_empirical) << '\n';
  } else {
    nlohmann::json j(result);
    j["seed"] = g.seed;
    nlohmann::json cases = nlohmann::json::array();
    for (const auto& c : table) {
      nlohmann::json row(post_select(c));
      row["case"] = c.label;
      row["s"] = c.s;
      row["x0"] = c.x0;
      row["x1"] = c.x1;
      cases.push_back(row);
    }
    j["cases"] = cases;
    emit_json(os, j);
  }
  return 0;
}

// Embedded regression checks. Each returns an empty string on success or a
// one-line failure detail.
int do_selftest(const std::string& counts_path, std::ostream& os, std::ostream& err) {
  std::vector<CaseCounts> table;
  std::string load_error;
  if (counts_path.empty()) {
    table = published_counts();
  } else {
    try {
      std::ifstream in(counts_path);
      if (!in) throw std::runtime_error("cannot open counts file: " + counts_path);
      table = load_counts_csv(in);
    } catch (const std::exception& e) {
      load_error = e.what();
    }
  }

  using Check = std::pair<const char*, std::function<std::string()>>;
  const std::vector<Check> checks = {
      {"instance-predictions",
       [] {
         struct Caption {
           int m, n, t;
           double pb_pct, pu_pct;
         };
         const Caption captions[] = {
             {6, 4, 1, 66.05, 66.40}, {9, 6, 4, 71.64, 81.73}, {21, 9, 9, 65.45, 90.66}};
         for (const auto& c : captions) {
           double pb = 100.0 * p_baseline(c.m, c.n, c.t);
           double pu = 100.0 * p_upper(c.m, c.n, c.t);
           if (std::abs(pb - c.pb_pct) >= 0.01 || std::abs(pu - c.pu_pct) >= 0.01)
             return "(" + std::to_string(c.m) + "," + std::to_string(c.n) + "," +
                    std::to_string(c.t) + ") got p_B " + num(pb) + "% p_upper " + num(pu) + "%";
         }
         return std::string{};
       }},
      {"bounds-regression",
       [] {
         const int ts[] = {3, 3, 4, 5, 7, 9};
         const double uppers[] = {83.75, 82.47, 84.18, 83.22, 83.17, 80.62};
         const double lowers[] = {78.90, 76.86, 79.38, 79.59, 80.61, 78.91};
         for (int i = 0; i < 6; ++i) {
           const int m = i + 3, n = m - 1, t = ts[i];
           double up = 100.0 * p_upper(m, n, t);
           double lo = 100.0 * p_lower(m, n, t);
           if (std::abs(up - uppers[i]) >= 0.01 || std::abs(lo - lowers[i]) >= 0.01)
             return "m=" + std::to_string(m) + " got upper " + num(up) + "% lower " + num(lo) +
                    "%";
         }
         return std::string{};
       }},
      {"t-estimation",
       [] {
         if (int t = estimate_t(50, 19, 0.80); t != 785)
           return "estimate_t(50,19,0.80) = " + std::to_string(t) + ", want 785";
         if (int t = estimate_t(6, 5, 0.80); t != 5)
           return "estimate_t(6,5,0.80) = " + std::to_string(t) + ", want 5";
         return std::string{};
       }},
      {"table2-error-row",
       [&] {
         if (!load_error.empty()) return "counts table unusable: " + load_error;
         const double published[] = {2.4, 1.9, 2.1, 2.4, 11.8, 10.5, 9.4, 12.2};
         if (table.size() != 8) return std::string("expected 8 cases, got ") +
                                       std::to_string(table.size());
         for (int i = 0; i < 8; ++i) {
           if (table[i].label != std::string(1, static_cast<char>('A' + i)))
             return "case labels out of order at index " + std::to_string(i);
           double rate = 100.0 * post_select(table[i]).error_rate;
           if (std::abs(rate - published[i]) >= 0.1)
             return "case " + table[i].label + " error " + num(rate) + "% vs published " +
                    num(published[i]) + "%";
         }
         return std::string{};
       }},
      {"table2-aggregate",
       [&] {
         if (!load_error.empty()) return "counts table unusable: " + load_error;
         std::uint64_t zeros = 0, ones = 0;
         for (const auto& c : table) {
           PostSelection sel = post_select(c);
           // answers equal to s are the kept non-errors
           (c.s == 0 ? zeros : ones) += sel.kept - sel.errors;
           (c.s == 0 ? ones : zeros) += sel.errors;
         }
         if (zeros != 5426 || ones != 4425)
           return "kept answer totals " + std::to_string(zeros) + "/" + std::to_string(ones) +
                  ", want 5426/4425";
         return std::string{};
       }},
      {"feature-values",
       [] {
         constexpr double pi = std::numbers::pi;
         for (int n = 1; n <= 8; ++n) {
           const std::uint64_t big_n = 1ull << n;
           FeatureValues lo = expected_features(n, 0.0);
           FeatureValues hi = expected_features(n, pi);
           if (lo.m_non != big_n - 1 || lo.m_even != 2 * big_n - 2 || lo.m_odd != big_n - 2)
             return "c=0 closed form broke at n=" + std::to_string(n);
           if (hi.m_non != big_n || hi.m_even != 1 || hi.m_odd != big_n + 1)
             return "c=pi closed form broke at n=" + std::to_string(n);
         }
         for (int n = 1; n <= 4; ++n) {
           const double prob = std::ldexp(1.0, -n);
           for (double c : {0.0, pi}) {
             FeatureValues f = expected_features(n, c);
             BasisAnalysis a = analyze_basis(n, MeasureBasis{pi / 2.0, 0.0, c});
             bool ok = a.even_only == std::vector<std::uint64_t>{f.m_even} &&
                       a.odd_only == std::vector<std::uint64_t>{f.m_odd} &&
                       a.never == std::vector<std::uint64_t>{f.m_non} &&
                       std::abs(a.even_prob_min - prob) < 1e-12 &&
                       std::abs(a.even_prob_max - prob) < 1e-12 &&
                       std::abs(a.odd_prob_min - prob) < 1e-12 &&
                       std::abs(a.odd_prob_max - prob) < 1e-12;
             if (!ok) return "census mismatch at n=" + std::to_string(n) + " c=" + num(c);
           }
         }
         return std::string{};
       }},
      {"smallest-instances",
       [] {
         struct Want {
           double min_gap;
           int m, n, t;
         };
         const Want wants[] = {{0.0, 6, 4, 1}, {0.10, 9, 6, 4}, {0.25, 21, 9, 9}};
         for (const auto& w : wants) {
           auto cell = smallest_instance(210, w.min_gap, 64);
           if (!cell) return "no instance found at min_gap " + num(w.min_gap);
           if (cell->m != w.m || cell->n != w.n || cell->t != w.t)
             return "min_gap " + num(w.min_gap) + " got (" + std::to_string(cell->m) + "," +
                    std::to_string(cell->n) + "," + std::to_string(cell->t) + ")";
         }
         return std::string{};
       }},
  };

  int failed = 0;
  std::string failing;
  for (const auto& [name, run] : checks) {
    std::string detail = run();
    if (detail.empty()) {
      os << "[ok] " << name << '\n';
    } else {
      os << "[FAIL] " << name << ": " << detail << '\n';
      ++failed;
      failing += failing.empty() ? name : std::string(" ") + name;
    }
  }
  os << "selftest: " << checks.size() << " checks, " << failed << " failed\n";
  if (failed > 0) {
    err << "selftest failing: " << failing << '\n';
    return 2;
  }
  return 0;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"simulator and analytics for the dihedral coset parity challenge"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--seed", g.seed, "base seed for every random stream")->capture_default_str();
  app.add_option("--out", g.out_path, "write output to this file instead of stdout");
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--threads", g.threads, "worker threads, 0 means all cores")
      ->capture_default_str();

  auto* analytics_cmd =
      app.add_subcommand("analytics", "collision bounds and accuracy predictions");
  std::vector<int> ms{6}, ns{4}, ts{1};
  std::uint64_t analytics_mc = 0;
  analytics_cmd->add_option("-m,--m", ms, "samples per iteration, comma list for a table")
      ->delimiter(',')
      ->capture_default_str();
  analytics_cmd->add_option("-n,--n", ns, "register qubits, comma list for a table")
      ->delimiter(',')
      ->capture_default_str();
  analytics_cmd->add_option("-t,--t", ts, "iterations, comma list for a table")
      ->delimiter(',')
      ->capture_default_str();
  analytics_cmd
      ->add_option("--mc-trials", analytics_mc,
                   "Monte Carlo trials for k and p estimates (JSON output only)")
      ->capture_default_str();
  analytics_cmd->fallthrough();

  auto* sweep_cmd = app.add_subcommand("sweep", "accuracy lead over the single-readout strategy "
                                                "across instance sizes");
  int max_qubits = 210, t_max = 64;
  double min_gap = 0.0;
  sweep_cmd->add_option("--max-qubits", max_qubits, "total qubit budget m*(n+1)")
      ->capture_default_str();
  sweep_cmd->add_option("--min-gap", min_gap, "required accuracy lead")->capture_default_str();
  sweep_cmd->add_option("--t-max", t_max, "iteration counts to scan, exclusive")
      ->capture_default_str();
  sweep_cmd->fallthrough();

  auto* simulate_cmd = app.add_subcommand("simulate", "run the interactive challenge");
  SimulateOpts sim;
  simulate_cmd->add_option("-m,--m", sim.m, "samples per iteration")->capture_default_str();
  simulate_cmd->add_option("-n,--n", sim.n, "register qubits")->capture_default_str();
  simulate_cmd->add_option("-t,--t", sim.t, "iterations per repetition")->capture_default_str();
  simulate_cmd->add_option("-r,--r", sim.r, "repetitions")->capture_default_str();
  simulate_cmd->add_option("--strategy", sim.strategy, "prover strategy")
      ->check(CLI::IsMember({"standard", "streaming", "extended", "baseline", "random"}))
      ->capture_default_str();
  simulate_cmd->add_option("--capacity", sim.capacity,
                           "streaming pool size, -1 means twice m");
  simulate_cmd->add_option("--extra-slots", sim.extra_slots,
                           "extended storage beyond m, -1 means m");
  simulate_cmd->add_option("--p-bit", sim.p_bit, "bit flip rate per gate wire")
      ->capture_default_str();
  simulate_cmd->add_option("--p-phase", sim.p_phase, "phase flip rate per gate wire")
      ->capture_default_str();
  simulate_cmd->add_option("--p-readout", sim.p_readout, "readout flip rate per wire")
      ->capture_default_str();
  simulate_cmd
      ->add_option("--mc-trials", sim.mc_trials, "Monte Carlo trials behind the verdict band")
      ->capture_default_str();
  simulate_cmd->add_flag("--full-transcript", sim.full_transcript,
                         "include per-repetition answers and truths in the report");
  simulate_cmd->fallthrough();

  auto* verify_cmd = app.add_subcommand("verify", "judge a stored run report");
  std::string report_path;
  std::uint64_t verify_mc = 1000000;
  verify_cmd->add_option("--report", report_path, "report written by simulate")->required();
  verify_cmd->add_option("--mc-trials", verify_mc, "Monte Carlo trials for the predicted band")
      ->capture_default_str();
  verify_cmd->fallthrough();

  auto* baseline_cmd =
      app.add_subcommand("baseline", "feature values of the single-readout strategy");
  int baseline_n = 4;
  bool baseline_search = false;
  baseline_cmd->add_option("-n,--n", baseline_n, "register qubits")->capture_default_str();
  baseline_cmd->add_flag("--search", baseline_search,
                         "scan a basis grid for feature-bearing readouts (n <= 6)");
  baseline_cmd->fallthrough();

  auto* reconstruct_cmd =
      app.add_subcommand("reconstruct", "rebuild the challenge from hardware count tables");
  std::string counts_path;
  int rec_t = 7, rec_r = 1000, rec_trials = 100;
  reconstruct_cmd->add_option("--counts", counts_path,
                              "count table CSV (case,bitstring,count); bundled data when absent");
  reconstruct_cmd->add_option("-t,--t", rec_t, "iterations per repetition")->capture_default_str();
  reconstruct_cmd->add_option("-r,--r", rec_r, "repetitions per trial")->capture_default_str();
  reconstruct_cmd->add_option("--trials", rec_trials, "accuracy samples to draw")
      ->capture_default_str();
  reconstruct_cmd->fallthrough();

  auto* selftest_cmd = app.add_subcommand("selftest", "embedded regression checks");
  std::string selftest_counts;
  selftest_cmd->add_option("--counts", selftest_counts,
                           "validate this count table instead of the bundled one");
  selftest_cmd->fallthrough();

  std::reverse(args.begin(), args.end());
  try {
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    OutputTarget target(g.out_path, out);
    std::ostream& os = target.stream();
    if (app.got_subcommand(analytics_cmd))
      return do_analytics(g, ms, ns, ts, analytics_mc, os);
    if (app.got_subcommand(sweep_cmd)) return do_sweep(g, max_qubits, min_gap, t_max, os);
    if (app.got_subcommand(simulate_cmd)) return do_simulate(g, sim, os);
    if (app.got_subcommand(verify_cmd)) return do_verify(g, report_path, verify_mc, os, err);
    if (app.got_subcommand(baseline_cmd)) return do_baseline(g, baseline_n, baseline_search, os);
    if (app.got_subcommand(reconstruct_cmd))
      return do_reconstruct(g, counts_path, rec_t, rec_r, rec_trials, os);
    if (app.got_subcommand(selftest_cmd)) return do_selftest(selftest_counts, os, err);
    err << "error: no subcommand selected\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace dcp
