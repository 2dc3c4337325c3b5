#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "dcp/statevector.hpp"

namespace testutil {

// chi^2 statistic against a uniform expectation over `bins`.
inline double chi2_uniform(std::span<const std::uint64_t> counts) {
  const double total = static_cast<double>(
      std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}));
  const double expected = total / static_cast<double>(counts.size());
  double stat = 0.0;
  for (std::uint64_t c : counts) {
    const double d = static_cast<double>(c) - expected;
    stat += d * d / expected;
  }
  return stat;
}

// 99th percentile of chi^2 for the degrees of freedom used by these tests.
inline double chi2_crit_1pct(int dof) {
  switch (dof) {
    case 1: return 6.6349;
    case 3: return 11.3449;
    case 7: return 18.4753;
    case 15: return 30.5779;
    case 31: return 52.1914;
    case 63: return 92.0100;
    default: throw std::invalid_argument("no chi2 critical value tabulated for this dof");
  }
}

inline double mean(std::span<const double> xs) {
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

inline double sample_sd(std::span<const double> xs) {
  const double mu = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - mu) * (x - mu);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

inline double fidelity(const dcp::StateVector& a, const dcp::StateVector& b) {
  dcp::Complex dot(0.0);
  for (std::size_t i = 0; i < a.amps.size(); ++i) dot += std::conj(a.amps[i]) * b.amps[i];
  return std::norm(dot);
}

// Total variation distance between two empirical count maps.
template <typename Key>
double tv_distance(const std::map<Key, std::uint64_t>& a, const std::map<Key, std::uint64_t>& b,
                   double total_a, double total_b) {
  double tv = 0.0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    double pa = 0.0, pb = 0.0;
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      pa = static_cast<double>(ia->second) / total_a;
      ++ia;
    } else if (ia == a.end() || ib->first < ia->first) {
      pb = static_cast<double>(ib->second) / total_b;
      ++ib;
    } else {
      pa = static_cast<double>(ia->second) / total_a;
      pb = static_cast<double>(ib->second) / total_b;
      ++ia;
      ++ib;
    }
    tv += std::abs(pa - pb);
  }
  return tv / 2.0;
}

}  // namespace testutil
