#include "dcp/baseline.hpp"

#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <string>

namespace dcp {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSupportTol = 1e-9;      // on probability
constexpr double kAngleTol = 1e-12;
constexpr std::uint64_t kSearchBudget = 10'000'000'000ull;

void check_basis(const MeasureBasis& basis) {
  if (!(basis.a >= 0.0 && basis.a < kPi)) throw std::domain_error("basis: a out of [0, pi)");
  if (!(basis.b >= 0.0 && basis.b < 4.0 * kPi)) throw std::domain_error("basis: b out of [0, 4pi)");
  if (!(basis.c >= 0.0 && basis.c < 2.0 * kPi)) throw std::domain_error("basis: c out of [0, 2pi)");
}

// Tensor product of one 2x2 column per wire, MSB (wire 0) first. out[v] is
// the amplitude <v|U^(n+1)|i> for the basis state i.
void branch_amplitudes(const std::array<Complex, 4>& u, int wires, std::uint64_t i,
                       std::vector<Complex>& out) {
  out.assign(1, Complex{1.0, 0.0});
  out.reserve(std::size_t{1} << wires);
  std::vector<Complex> next;
  next.reserve(std::size_t{1} << wires);
  for (int w = 0; w < wires; ++w) {
    const int bit = static_cast<int>(i >> (wires - 1 - w) & 1ull);
    next.assign(out.size() * 2, Complex{});
    for (std::size_t v = 0; v < out.size(); ++v) {
      next[v * 2] = out[v] * u[bit];
      next[v * 2 + 1] = out[v] * u[2 + bit];
    }
    out.swap(next);
  }
}

double outcome_probability(const std::array<Complex, 4>& u, int n, std::uint64_t x,
                           std::uint64_t s, std::uint64_t v) {
  const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
  const std::uint64_t i0 = x;
  const std::uint64_t i1 = (std::uint64_t{1} << n) | ((x + s) & mask);
  Complex a0{1.0, 0.0}, a1{1.0, 0.0};
  for (int w = 0; w <= n; ++w) {
    const int vb = static_cast<int>(v >> (n - w) & 1ull);
    a0 *= u[vb * 2 + static_cast<int>(i0 >> (n - w) & 1ull)];
    a1 *= u[vb * 2 + static_cast<int>(i1 >> (n - w) & 1ull)];
  }
  return std::norm((a0 + a1) / std::sqrt(2.0));
}

}  // namespace

FeatureValues expected_features(int n, double c) {
  if (n < 1 || n > 20) throw std::invalid_argument("expected_features: n out of range");
  const std::uint64_t big_n = std::uint64_t{1} << n;
  if (std::abs(c) < kAngleTol)
    return FeatureValues{0.0, big_n - 1, 2 * big_n - 2, big_n - 2};
  if (std::abs(c - kPi) < kAngleTol)
    return FeatureValues{kPi, big_n, 1, big_n + 1};
  throw std::invalid_argument("expected_features: only c = 0 and c = pi have known values");
}

BasisAnalysis analyze_basis(int n, const MeasureBasis& basis) {
  if (n < 1 || n > 8) throw std::invalid_argument("analyze_basis: n out of [1, 8]");
  check_basis(basis);
  const auto u = u3_matrix(basis.a, basis.b, basis.c);
  const std::uint64_t big_n = std::uint64_t{1} << n;
  const std::size_t dim = std::size_t{1} << (n + 1);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  std::vector<char> union_even(dim, 0), union_odd(dim, 0);
  std::vector<char> inter_even(dim, 1), inter_odd(dim, 1);
  std::vector<Complex> p0, p1;
  for (std::uint64_t x = 0; x < big_n; ++x) {
    branch_amplitudes(u, n + 1, x, p0);
    for (std::uint64_t s = 0; s < big_n; ++s) {
      const std::uint64_t i1 = big_n | ((x + s) & (big_n - 1));
      branch_amplitudes(u, n + 1, i1, p1);
      auto& uni = (s & 1) ? union_odd : union_even;
      auto& inter = (s & 1) ? inter_odd : inter_even;
      for (std::size_t v = 0; v < dim; ++v) {
        const bool in = std::norm((p0[v] + p1[v]) * inv_sqrt2) > kSupportTol;
        if (in) uni[v] = 1; else inter[v] = 0;
      }
    }
  }

  BasisAnalysis out;
  out.n = n;
  out.basis = basis;
  for (std::size_t v = 0; v < dim; ++v) {
    if (inter_even[v] && !union_odd[v]) out.even_only.push_back(v);
    if (inter_odd[v] && !union_even[v]) out.odd_only.push_back(v);
    if (!union_even[v] && !union_odd[v]) out.never.push_back(v);
  }

  auto prob_spread = [&](std::span<const std::uint64_t> values, int parity, double& lo,
                         double& hi) {
    lo = hi = 0.0;
    bool first = true;
    for (std::uint64_t v : values)
      for (std::uint64_t x = 0; x < big_n; ++x)
        for (std::uint64_t s = parity; s < big_n; s += 2) {
          const double p = outcome_probability(u, n, x, s, v);
          if (first) { lo = hi = p; first = false; }
          lo = std::min(lo, p);
          hi = std::max(hi, p);
        }
  };
  prob_spread(out.even_only, 0, out.even_prob_min, out.even_prob_max);
  prob_spread(out.odd_only, 1, out.odd_prob_min, out.odd_prob_max);
  return out;
}

std::vector<std::pair<MeasureBasis, FeatureValues>> brute_force_feature_search(
    int n, std::span<const MeasureBasis> grid) {
  if (n < 1 || n > 8) throw std::invalid_argument("feature search: n out of [1, 8]");
  const std::uint64_t big_n = std::uint64_t{1} << n;
  const std::uint64_t per_basis = big_n * big_n * 6 * 2 * big_n;
  if (grid.size() > 0 && per_basis > kSearchBudget / grid.size())
    throw std::length_error("feature search: budget exceeded");

  std::vector<std::pair<MeasureBasis, FeatureValues>> found;
  for (const MeasureBasis& basis : grid) {
    const BasisAnalysis res = analyze_basis(n, basis);
    if (res.even_only.size() == 1 && res.odd_only.size() == 1 && res.never.size() == 1)
      found.emplace_back(basis, FeatureValues{basis.c, res.never[0], res.even_only[0],
                                              res.odd_only[0]});
  }
  return found;
}

std::uint64_t measure_in_basis(SampleHandle handle, const MeasureBasis& basis,
                               const NoiseConfig& noise, Rng& rng) {
  check_basis(basis);
  const int wires = handle.num_qubits();
  for (int w = 0; w < wires; ++w)
    handle.apply(GateOp::u3(w, basis.a, basis.b, basis.c), noise, rng);
  std::vector<int> order(wires);
  std::iota(order.begin(), order.end(), 0);
  const std::vector<int> bits = handle.measure_wires(order, noise, rng);
  std::uint64_t m_value = 0;
  for (int bit : bits) m_value = m_value << 1 | static_cast<unsigned>(bit);
  return m_value;
}

std::optional<int> feature_parity(std::uint64_t m_value, int n) {
  const std::uint64_t big_n = std::uint64_t{1} << n;
  if (m_value == 1) return 0;
  if (m_value == big_n + 1) return 1;
  return std::nullopt;
}

int baseline_solve(std::vector<SampleHandle> stream, const NoiseConfig& noise, Rng& rng) {
  const MeasureBasis basis{};  // a = pi/2, b = 0, c = pi
  for (SampleHandle& handle : stream) {
    const int n = handle.register_width();
    const std::uint64_t m_value = measure_in_basis(std::move(handle), basis, noise, rng);
    if (const auto parity = feature_parity(m_value, n)) return *parity;
  }
  return static_cast<int>(rng.uniform_below(2));
}

}  // namespace dcp
