#include "dcp/analytics.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <tuple>

#include "dcp/parallel.hpp"
#include "dcp/rng.hpp"

namespace dcp {
namespace {

constexpr int kMaxWidth = 1000;
constexpr std::uint64_t kMcBlock = 8192;

void check_mn(int m, int n) {
  if (m < 1 || m > 10'000'000) throw std::invalid_argument("m out of range");
  if (n < 1 || n > kMaxWidth) throw std::invalid_argument("n out of range");
}

// prod_{i<count} (1 - i*inv), switching to log space for long products
double falling_product(std::uint64_t count, double inv) {
  if (count == 0) return 1.0;
  if (static_cast<double>(count - 1) * inv >= 1.0) return 0.0;
  if (count <= 1000) {
    double prod = 1.0;
    for (std::uint64_t i = 1; i < count; ++i) prod *= 1.0 - static_cast<double>(i) * inv;
    return prod;
  }
  double log_sum = 0.0;
  for (std::uint64_t i = 1; i < count; ++i)
    log_sum += std::log1p(-static_cast<double>(i) * inv);
  return std::exp(log_sum);
}

}  // namespace

double k_lower(int m, int n) {
  check_mn(m, n);
  return falling_product(static_cast<std::uint64_t>(m), std::ldexp(1.0, -n));
}

double k_upper(int m, int n) {
  check_mn(m, n);
  return 0.5 + 0.5 * falling_product(static_cast<std::uint64_t>(m), std::ldexp(1.0, 1 - n));
}

double k_collision_mc(int m, int n, std::uint64_t trials, std::uint64_t seed, int threads) {
  if (m < 1 || m > 1'000'000) throw std::invalid_argument("k_collision_mc: m out of range");
  if (n < 1 || n > 24) throw std::invalid_argument("k_collision_mc: n out of [1, 24]");
  if (trials == 0) throw std::invalid_argument("k_collision_mc: trials must be positive");
  const std::uint64_t big_n = std::uint64_t{1} << n;
  const std::uint64_t half = big_n >> 1;
  const std::uint64_t blocks = (trials + kMcBlock - 1) / kMcBlock;
  const int workers = resolve_threads(threads);

  std::atomic<std::uint64_t> clean_total{0};
  parallel_for(blocks, workers, [&](std::size_t first, std::size_t last) {
    std::vector<char> mark(big_n, 0);
    std::vector<std::uint64_t> touched;
    touched.reserve(static_cast<std::size_t>(m));
    std::uint64_t local = 0;
    for (std::size_t block = first; block < last; ++block) {
      Rng rng = Rng(seed).derive(block + 1);
      const std::uint64_t lo = block * kMcBlock;
      const std::uint64_t hi = std::min(trials, lo + kMcBlock);
      for (std::uint64_t trial = lo; trial < hi; ++trial) {
        touched.clear();
        bool collided = false;
        for (int i = 0; i < m; ++i) {
          const std::uint64_t v = rng.uniform_below(big_n);
          if (mark[v ^ half]) { collided = true; break; }
          if (!mark[v]) {
            mark[v] = 1;
            touched.push_back(v);
          }
        }
        for (std::uint64_t v : touched) mark[v] = 0;
        if (!collided) ++local;
      }
    }
    clean_total += local;
  });
  return static_cast<double>(clean_total.load()) / static_cast<double>(trials);
}

double p_from_k(double k, int t) {
  if (!(k >= 0.0 && k <= 1.0)) throw std::invalid_argument("p_from_k: k out of [0, 1]");
  if (t < 0 || t > 1'000'000) throw std::invalid_argument("p_from_k: t out of range");
  return (2.0 - std::pow((1.0 + k) / 2.0, static_cast<double>(t))) / 2.0;
}

double p_upper(int m, int n, int t) { return p_from_k(k_lower(m, n), t); }

double p_lower(int m, int n, int t) { return p_from_k(k_upper(m, n), t); }

int estimate_t(int m, int n, double target_p) {
  if (!(target_p > 0.5 && target_p < 1.0))
    throw std::invalid_argument("estimate_t: target accuracy must sit in (0.5, 1)");
  const double base = (1.0 + k_lower(m, n)) / 2.0;
  if (base > 1.0 - 1e-12)
    throw std::invalid_argument("estimate_t: no iteration count can reach the target");
  const double ratio = std::log(2.0 - 2.0 * target_p) / std::log(base);
  if (ratio > 2.0e9) throw std::overflow_error("estimate_t: iteration count overflow");
  const double t = std::ceil(ratio - 1e-12);
  return t < 1.0 ? 1 : static_cast<int>(t);
}

double sigma_p(double p, int r) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("sigma_p: p out of [0, 1]");
  if (r < 1) throw std::invalid_argument("sigma_p: r must be positive");
  return std::sqrt((1.0 - p) / (2.0 * static_cast<double>(r)));
}

double p_baseline(int m, int n, int t) {
  check_mn(m, n);
  if (t < 0 || t > 1'000'000) throw std::invalid_argument("p_baseline: t out of range");
  const double miss = std::exp(static_cast<double>(m) * static_cast<double>(t) *
                               std::log1p(-std::ldexp(1.0, -n)));
  return (2.0 - miss) / 2.0;
}

AnalyticsResult compute_analytics(int m, int n, int t, std::uint64_t mc_trials,
                                  std::uint64_t seed, int threads) {
  AnalyticsResult res;
  res.m = m;
  res.n = n;
  res.t = t;
  res.k_lower = k_lower(m, n);
  res.k_upper = k_upper(m, n);
  res.p_lower = p_from_k(res.k_upper, t);
  res.p_upper = p_from_k(res.k_lower, t);
  res.p_b = p_baseline(m, n, t);
  if (mc_trials > 0) {
    res.k_mc = k_collision_mc(m, n, mc_trials, seed, threads);
    res.p_mc = p_from_k(res.k_mc, t);
  }
  return res;
}

std::vector<GapCell> gap_sweep(int max_qubits, double min_gap, int t_max) {
  if (max_qubits < 4 || max_qubits > 2000)
    throw std::invalid_argument("gap_sweep: max_qubits out of [4, 2000]");
  if (!(min_gap >= 0.0 && min_gap < 0.5))
    throw std::invalid_argument("gap_sweep: min_gap out of [0, 0.5)");
  if (t_max < 2 || t_max > 100'000) throw std::invalid_argument("gap_sweep: t_max out of range");

  std::vector<GapCell> cells;
  for (int n = 1; 2 * (n + 1) <= max_qubits; ++n) {
    const double miss_one = std::log1p(-std::ldexp(1.0, -n));
    for (int m = 2; m * (n + 1) <= max_qubits; ++m) {
      const double b = std::exp(static_cast<double>(m) * miss_one);
      const double a = (1.0 + k_lower(m, n)) / 2.0;
      double bt = 1.0, at = 1.0;
      for (int t = 1; t < t_max; ++t) {
        bt *= b;
        at *= a;
        const double gap = (bt - at) / 2.0;
        if (gap > min_gap) {
          cells.push_back(GapCell{m, n, t, (2.0 - at) / 2.0, (2.0 - bt) / 2.0, gap});
          break;
        }
      }
    }
  }
  return cells;
}

std::optional<GapCell> smallest_instance(int max_qubits, double min_gap, int t_max) {
  const std::vector<GapCell> cells = gap_sweep(max_qubits, min_gap, t_max);
  if (cells.empty()) return std::nullopt;
  const GapCell* best = &cells.front();
  for (const GapCell& cell : cells) {
    const auto key = std::make_tuple(cell.m * (cell.n + 1), cell.n, cell.m);
    const auto best_key = std::make_tuple(best->m * (best->n + 1), best->n, best->m);
    if (key < best_key) best = &cell;
  }
  return *best;
}

}  // namespace dcp
