#include "dcp/reconstruction.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "dcp/analytics.hpp"

namespace dcp {
namespace {

constexpr std::array<int, 4> kAllWires{0, 1, 2, 3};

bool valid_key(const std::string& key) {
  if (key.size() != 4) return false;
  return std::all_of(key.begin(), key.end(), [](char c) { return c == '0' || c == '1'; });
}

bool shot_kept(const std::string& key) {
  // key is q3 q2 q1 q0
  return key[3] != key[0] && key[1] == '1';
}

int shot_answer(const std::string& key) { return key[2] == '1' ? 1 : 0; }

struct CasePmf {
  std::vector<std::string> keys;
  std::vector<std::uint64_t> cumulative;
  std::uint64_t total = 0;
};

CasePmf build_pmf(const CaseCounts& counts) {
  CasePmf pmf;
  for (const auto& [key, count] : counts.counts) {
    if (!valid_key(key)) throw std::invalid_argument("counts: bad bitstring " + key);
    if (count == 0) continue;
    pmf.total += count;
    pmf.keys.push_back(key);
    pmf.cumulative.push_back(pmf.total);
  }
  if (pmf.total == 0)
    throw std::invalid_argument("counts: case " + counts.label + " has no shots");
  return pmf;
}

const std::string& draw_shot(const CasePmf& pmf, Rng& rng) {
  const std::uint64_t u = rng.uniform_below(pmf.total);
  const auto it = std::upper_bound(pmf.cumulative.begin(), pmf.cumulative.end(), u);
  return pmf.keys[static_cast<std::size_t>(it - pmf.cumulative.begin())];
}

}  // namespace

std::vector<CaseCircuit> enumerate_cases() {
  std::vector<CaseCircuit> cases;
  for (int idx = 0; idx < 8; ++idx) {
    CaseCircuit c;
    c.label = std::string(1, static_cast<char>('A' + idx));
    c.s = idx >> 2;
    c.x0 = idx >> 1 & 1;
    c.x1 = idx & 1;
    c.gates = {GateOp::h(1), GateOp::h(2)};
    if (c.x0) c.gates.push_back(GateOp::x(0));
    if (c.x1) c.gates.push_back(GateOp::x(3));
    if (c.s) {
      c.gates.push_back(GateOp::cnot(1, 0));
      c.gates.push_back(GateOp::cnot(2, 3));
    }
    c.gates.push_back(GateOp::h(0));
    c.gates.push_back(GateOp::h(3));
    c.gates.push_back(GateOp::cnot(1, 2));
    c.gates.push_back(GateOp::h(1));
    cases.push_back(std::move(c));
  }
  return cases;
}

CaseCounts simulate_case_counts(const CaseCircuit& circuit, std::uint64_t shots,
                                const NoiseConfig& noise, Rng& rng) {
  if (shots == 0) throw std::invalid_argument("simulate_case_counts: no shots");
  CaseCounts out;
  out.label = circuit.label;
  out.s = circuit.s;
  out.x0 = circuit.x0;
  out.x1 = circuit.x1;
  for (std::uint64_t shot = 0; shot < shots; ++shot) {
    StateVector state(4);
    for (const GateOp& op : circuit.gates) apply_gate(state, op, noise, rng);
    const std::vector<int> bits = measure(state, kAllWires, noise, rng);
    std::string key(4, '0');
    for (int q = 0; q < 4; ++q) key[3 - q] = bits[q] ? '1' : '0';
    ++out.counts[key];
  }
  return out;
}

PostSelection post_select(const CaseCounts& counts) {
  PostSelection sel;
  for (const auto& [key, count] : counts.counts) {
    if (!valid_key(key)) throw std::invalid_argument("counts: bad bitstring " + key);
    if (!shot_kept(key)) {
      sel.dropped += count;
      continue;
    }
    sel.kept += count;
    if (shot_answer(key) != counts.s) sel.errors += count;
  }
  if (sel.kept == 0)
    throw std::invalid_argument("post_select: nothing survives for case " + counts.label);
  sel.error_rate = static_cast<double>(sel.errors) / static_cast<double>(sel.kept);
  return sel;
}

std::vector<CaseCounts> load_counts_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("counts csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "case,bitstring,count")
    throw std::invalid_argument("counts csv: header must be case,bitstring,count");

  std::map<char, CaseCounts> table;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto where = "counts csv line " + std::to_string(lineno);
    const std::size_t c1 = line.find(',');
    const std::size_t c2 = line.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
      throw std::invalid_argument(where + ": expected three fields");
    const std::string label = line.substr(0, c1);
    const std::string bits = line.substr(c1 + 1, c2 - c1 - 1);
    const std::string count_text = line.substr(c2 + 1);
    if (label.size() != 1 || label[0] < 'A' || label[0] > 'H')
      throw std::invalid_argument(where + ": case must be A..H");
    if (!valid_key(bits)) throw std::invalid_argument(where + ": bad bitstring");
    if (count_text.empty() ||
        !std::all_of(count_text.begin(), count_text.end(),
                     [](char c) { return c >= '0' && c <= '9'; }))
      throw std::invalid_argument(where + ": bad count");
    const std::uint64_t count = std::stoull(count_text);

    auto [it, fresh] = table.try_emplace(label[0]);
    if (fresh) {
      const int idx = label[0] - 'A';
      it->second.label = label;
      it->second.s = idx >> 2;
      it->second.x0 = idx >> 1 & 1;
      it->second.x1 = idx & 1;
    }
    it->second.counts[bits] += count;
  }
  if (table.empty()) throw std::invalid_argument("counts csv: no rows");

  std::vector<CaseCounts> out;
  out.reserve(table.size());
  for (auto& [label, counts] : table) out.push_back(std::move(counts));
  return out;
}

ReconstructionResult reconstruct_challenge(const std::vector<CaseCounts>& counts, int t,
                                           int r, int trials, std::uint64_t seed) {
  if (t < 1 || t > 1'000'000) throw std::invalid_argument("reconstruct: t out of range");
  if (r < 1 || r > 10'000'000) throw std::invalid_argument("reconstruct: r out of range");
  if (trials < 1 || trials > 100'000)
    throw std::invalid_argument("reconstruct: trials out of range");

  std::array<const CaseCounts*, 8> by_index{};
  for (const CaseCounts& c : counts) {
    if (c.label.size() != 1 || c.label[0] < 'A' || c.label[0] > 'H')
      throw std::invalid_argument("reconstruct: case label out of A..H");
    by_index[static_cast<std::size_t>(c.label[0] - 'A')] = &c;
  }
  std::array<CasePmf, 8> pmfs;
  for (std::size_t i = 0; i < 8; ++i) {
    if (by_index[i] == nullptr)
      throw std::invalid_argument(std::string("reconstruct: missing case ") +
                                  static_cast<char>('A' + i));
    pmfs[i] = build_pmf(*by_index[i]);
  }

  ReconstructionResult res;
  res.t = t;
  res.r = r;
  res.trials = trials;
  res.accuracies.reserve(static_cast<std::size_t>(trials));
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng = Rng(seed).derive(static_cast<std::uint64_t>(trial) + 1);
    std::uint64_t correct = 0;
    for (int rep = 0; rep < r; ++rep) {
      const int s = static_cast<int>(rng.uniform_below(2));
      int answer = -1;
      for (int iter = 0; iter < t; ++iter) {
        const std::uint64_t x0 = rng.uniform_below(2);
        const std::uint64_t x1 = rng.uniform_below(2);
        const std::size_t idx = static_cast<std::size_t>(s) * 4 + x0 * 2 + x1;
        const std::string& key = draw_shot(pmfs[idx], rng);
        if (shot_kept(key)) {
          answer = shot_answer(key);
          break;
        }
      }
      if (answer < 0) answer = static_cast<int>(rng.uniform_below(2));
      if (answer == s) ++correct;
    }
    res.accuracies.push_back(static_cast<double>(correct) / static_cast<double>(r));
  }

  double sum = 0.0;
  for (double a : res.accuracies) sum += a;
  res.mean = sum / static_cast<double>(trials);
  res.sigma_formula = sigma_p(res.mean, r);
  if (trials > 1) {
    double ss = 0.0;
    for (double a : res.accuracies) ss += (a - res.mean) * (a - res.mean);
    res.sigma_empirical = std::sqrt(ss / static_cast<double>(trials - 1));
  }
  res.floor_warning = res.mean < 0.5 - 2.0 * sigma_p(0.5, r);
  return res;
}

}  // namespace dcp
