#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "dcp/parity_solver.hpp"
#include "dcp/rng.hpp"
#include "dcp/samples.hpp"
#include "doctest.h"
#include "helpers.hpp"

using dcp::CollisionPair;
using dcp::Complex;
using dcp::IterationOutcome;
using dcp::NoiseConfig;
using dcp::PostQftRecord;
using dcp::Rng;
using dcp::SampleHandle;
using dcp::SampleSpec;
using dcp::StateVector;

namespace {

const NoiseConfig kNoNoise{};

StateVector reflection_state(int n, std::uint64_t x_hat, std::uint64_t s) {
  const double h = 1.0 / std::sqrt(2.0);
  StateVector q(1);
  q.amps[0] = Complex(h);
  q.amps[1] = std::polar(
      h, 2.0 * std::numbers::pi * static_cast<double>((x_hat * s) % (1ull << n)) /
             static_cast<double>(1ull << n));
  return q;
}

PostQftRecord fake_record(int n, std::uint64_t x_hat) {
  PostQftRecord r;
  r.register_width = n;
  r.x_hat = x_hat;
  r.reflection = reflection_state(n, x_hat, 0);
  return r;
}

}  // namespace

TEST_SUITE("parity_solver") {

TEST_CASE("post-qft register values are uniform") {
  Rng rng(31);
  std::vector<std::uint64_t> counts(8, 0);
  const int shots = 10000;
  for (int i = 0; i < shots; ++i) {
    auto rec = dcp::qft_and_measure(dcp::prepare({3, 0, 2}, kNoNoise, rng), kNoNoise, rng);
    ++counts[rec.x_hat];
  }
  CHECK(testutil::chi2_uniform(counts) < testutil::chi2_crit_1pct(7));
}

TEST_CASE("reflection qubit carries omega^{x_hat * s}") {
  Rng rng(17);
  const SampleSpec spec{3, 0, 2};
  int seen = 0;
  for (int i = 0; i < 400 && seen < 20; ++i) {
    auto rec = dcp::qft_and_measure(dcp::prepare(spec, kNoNoise, rng), kNoNoise, rng);
    if (rec.x_hat != 3) continue;
    ++seen;
    CHECK(std::abs(std::abs(rec.reflection.amps[0]) - 1.0 / std::sqrt(2.0)) < 1e-9);
    CHECK(std::abs(std::abs(rec.reflection.amps[1]) - 1.0 / std::sqrt(2.0)) < 1e-9);
    // x_hat * s = 6, so the relative phase is omega_8^6 = -i.
    const Complex ratio = rec.reflection.amps[1] / rec.reflection.amps[0];
    CHECK(std::abs(ratio - Complex(0.0, -1.0)) < 1e-9);
  }
  CHECK(seen == 20);
}

TEST_CASE("s=0 leaves the reflection in |+>") {
  Rng rng(19);
  for (int i = 0; i < 30; ++i) {
    auto rec = dcp::qft_and_measure(dcp::prepare({3, 5, 0}, kNoNoise, rng), kNoNoise, rng);
    const Complex ratio = rec.reflection.amps[1] / rec.reflection.amps[0];
    CHECK(std::abs(ratio - Complex(1.0)) < 1e-9);
  }
}

TEST_CASE("find_collision picks the first lexicographic pair") {
  std::vector<PostQftRecord> recs;
  recs.push_back(fake_record(3, 3));
  recs.push_back(fake_record(3, 7));
  auto p = dcp::find_collision(recs);
  REQUIRE(p.has_value());
  CHECK(p->index_a == 0);
  CHECK(p->index_b == 1);
  CHECK(p->x_hat_a == 3);
  CHECK(p->x_hat_b == 7);

  // Order within the pair does not matter.
  std::vector<PostQftRecord> rev;
  rev.push_back(fake_record(3, 7));
  rev.push_back(fake_record(3, 3));
  CHECK(dcp::find_collision(rev).has_value());

  // Ties resolve to the earliest (a, b).
  std::vector<PostQftRecord> tie;
  tie.push_back(fake_record(3, 1));
  tie.push_back(fake_record(3, 5));
  tie.push_back(fake_record(3, 5));
  auto t = dcp::find_collision(tie);
  REQUIRE(t.has_value());
  CHECK(t->index_a == 0);
  CHECK(t->index_b == 1);

  std::vector<PostQftRecord> none;
  none.push_back(fake_record(3, 1));
  none.push_back(fake_record(3, 2));
  CHECK_FALSE(dcp::find_collision(none).has_value());

  std::vector<PostQftRecord> mixed;
  mixed.push_back(fake_record(3, 1));
  mixed.push_back(fake_record(2, 1));
  CHECK_THROWS_AS(dcp::find_collision(mixed), std::invalid_argument);
}

TEST_CASE("extraction returns the parity of s when the target reads 1") {
  SUBCASE("even secret") {
    Rng rng(23);
    int solved = 0;
    for (int i = 0; i < 200 && solved < 40; ++i) {
      const CollisionPair pair{0, 1, 3, 7};
      auto r = dcp::extract_parity(pair, 3, reflection_state(3, 3, 2), reflection_state(3, 7, 2),
                                   kNoNoise, rng);
      if (!r.target_one) continue;
      ++solved;
      CHECK(r.parity == 0);
    }
    CHECK(solved == 40);
  }
  SUBCASE("odd secret") {
    Rng rng(29);
    int solved = 0;
    for (int i = 0; i < 200 && solved < 40; ++i) {
      const CollisionPair pair{0, 1, 6, 2};
      auto r = dcp::extract_parity(pair, 3, reflection_state(3, 6, 3), reflection_state(3, 2, 3),
                                   kNoNoise, rng);
      if (!r.target_one) continue;
      ++solved;
      CHECK(r.parity == 1);
    }
    CHECK(solved == 40);
  }
}

TEST_CASE("the cnot target reads 1 half the time") {
  Rng rng(37);
  int ones = 0;
  const int shots = 10000;
  for (int i = 0; i < shots; ++i) {
    const CollisionPair pair{0, 1, 3, 7};
    auto r = dcp::extract_parity(pair, 3, reflection_state(3, 3, 5), reflection_state(3, 7, 5),
                                 kNoNoise, rng);
    ones += r.target_one ? 1 : 0;
  }
  CHECK(std::abs(static_cast<double>(ones) / shots - 0.5) < 0.02);
}

TEST_CASE("extraction rejects non-collision pairs") {
  Rng rng(1);
  const CollisionPair bad{0, 1, 3, 6};
  CHECK_THROWS_AS(dcp::extract_parity(bad, 3, reflection_state(3, 3, 1), reflection_state(3, 6, 1),
                                      kNoNoise, rng),
                  std::invalid_argument);
}

TEST_CASE("iterations validate their batch") {
  Rng rng(1);
  std::vector<SampleHandle> one;
  one.push_back(dcp::prepare({2, 0, 1}, kNoNoise, rng));
  CHECK_THROWS_AS(dcp::parity_solve_iteration(std::move(one), kNoNoise, rng),
                  std::invalid_argument);

  std::vector<SampleHandle> mixed;
  mixed.push_back(dcp::prepare({2, 0, 1}, kNoNoise, rng));
  mixed.push_back(dcp::prepare({3, 0, 1}, kNoNoise, rng));
  CHECK_THROWS_AS(dcp::parity_solve_iteration(std::move(mixed), kNoNoise, rng),
                  std::invalid_argument);
}

TEST_CASE("solved iterations always report the parity of s") {
  Rng base(41);
  std::uint64_t case_index = 0;
  for (std::uint64_t s = 0; s < 4; ++s) {
    for (std::uint64_t x1 = 0; x1 < 4; ++x1) {
      for (std::uint64_t x2 = 0; x2 < 4; ++x2) {
        for (std::uint64_t x3 = 0; x3 < 4; ++x3) {
          Rng rng = base.derive(case_index++);
          std::vector<SampleHandle> batch;
          batch.push_back(dcp::prepare({2, x1, s}, kNoNoise, rng));
          batch.push_back(dcp::prepare({2, x2, s}, kNoNoise, rng));
          batch.push_back(dcp::prepare({2, x3, s}, kNoNoise, rng));
          auto out = dcp::parity_solve_iteration(std::move(batch), kNoNoise, rng);
          if (out.status == IterationOutcome::Status::Solved) {
            CHECK(out.parity == static_cast<int>(s & 1));
          }
          CHECK(out.records.size() == 3);
        }
      }
    }
  }
}

TEST_CASE("all three iteration outcomes occur") {
  Rng rng(43);
  int solved = 0, none = 0, zero = 0;
  for (int i = 0; i < 500; ++i) {
    std::vector<SampleHandle> batch;
    batch.push_back(dcp::prepare({2, rng.uniform_below(4), 1}, kNoNoise, rng));
    batch.push_back(dcp::prepare({2, rng.uniform_below(4), 1}, kNoNoise, rng));
    auto out = dcp::parity_solve_iteration(std::move(batch), kNoNoise, rng);
    switch (out.status) {
      case IterationOutcome::Status::Solved: ++solved; break;
      case IterationOutcome::Status::NoCollision: ++none; break;
      case IterationOutcome::Status::CnotMeasuredZero: ++zero; break;
    }
  }
  CHECK(solved > 20);
  CHECK(none > 20);
  CHECK(zero > 20);
}

}  // TEST_SUITE
