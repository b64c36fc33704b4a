#include "doctest.h"

#include <cmath>
#include <algorithm>
#include <map>
#include <memory>
#include <set>

#include "hptdyn/egta.hpp"
#include "hptdyn/errors.hpp"
#include "hptdyn/payoff.hpp"
#include "hptdyn/wolfpack.hpp"
#include "support/fixtures.hpp"

using namespace hptdyn;

namespace {

// Emits the 1 vs 1 reference table's payoffs, optionally with Gaussian noise.
EpisodeSource table_source(const AsymmetricHpt& table, double sigma, std::uint64_t seed) {
  auto rng = std::make_shared<std::mt19937_64>(seed);
  return [table, sigma, rng](std::size_t index) -> std::optional<EpisodeRecord> {
    std::uniform_int_distribution<int> pick(0, 1);
    std::normal_distribution<double> noise(0.0, sigma);
    EpisodeRecord r;
    const int a = pick(*rng), b = pick(*rng);
    r.assignment = {std::vector<int>{a}, std::vector<int>{b}};
    CountRow x{a == 0 ? 1 : 0, a == 1 ? 1 : 0}, y{b == 0 ? 1 : 0, b == 1 ? 1 : 0};
    const auto& row = table.rows()[*table.find_row({x, y})];
    const double e1 = sigma > 0 ? noise(*rng) : 0.0, e2 = sigma > 0 ? noise(*rng) : 0.0;
    r.rewards = {std::vector<double>{row.payoffs[0][static_cast<std::size_t>(a)] + e1},
                 std::vector<double>{row.payoffs[1][static_cast<std::size_t>(b)] + e2}};
    r.episode_seed = index;
    return r;
  };
}

}  // namespace

TEST_CASE("policy assignment sampling") {
  std::mt19937_64 rng(1);
  const std::array<PopulationPolicies, 2> single{PopulationPolicies{1, {1}}, PopulationPolicies{2, {0}}};
  const auto a = sample_policy_assignment(single, rng);
  CHECK(a[0] == std::vector<int>{1});
  CHECK(a[1] == std::vector<int>{0, 0});

  const std::array<PopulationPolicies, 2> wolves{PopulationPolicies{1, {0, 1}}, PopulationPolicies{1, {0, 1}}};
  std::map<std::pair<int, int>, int> freq;
  for (int i = 0; i < 10000; ++i) {
    const auto s = sample_policy_assignment(wolves, rng);
    ++freq[{s[0][0], s[1][0]}];
  }
  REQUIRE(freq.size() == 4);
  for (const auto& [k, v] : freq) CHECK(std::abs(v / 10000.0 - 0.25) <= 0.02);

  const std::array<PopulationPolicies, 2> marines{PopulationPolicies{2, {0, 1}}, PopulationPolicies{1, {0, 1}}};
  HptEstimator cover({2, 1, 2}, {});
  std::set<std::size_t> rows;
  for (int i = 0; i < 200; ++i) {
    EpisodeRecord r;
    r.assignment = sample_policy_assignment(marines, rng);
    r.rewards = {std::vector<double>(2, 0.0), std::vector<double>(1, 0.0)};
    rows.insert(cover.row_of(r));
  }
  CHECK(rows.size() == 6);

  const std::array<PopulationPolicies, 2> empty{PopulationPolicies{1, {}}, PopulationPolicies{1, {0}}};
  CHECK_THROWS_AS(sample_policy_assignment(empty, rng), DomainError);
}

TEST_CASE("constant rewards are recovered exactly") {
  const auto wp = fixtures::wolfpack();
  EstimatorOptions opt;
  opt.min_visits = 20;
  opt.window = 5;
  const auto est = estimate_hpt(table_source(wp, 0.0, 3), {1, 1, 2}, opt, 10000);
  CHECK(est.converged);
  CHECK(est.complete());
  for (std::size_t j = 0; j < 4; ++j) {
    CHECK(est.visits[j] >= 20);
    CHECK(est.table.rows()[j].payoffs == wp.rows()[j].payoffs);
  }
}

TEST_CASE("noisy rewards converge near the table") {
  const auto wp = fixtures::wolfpack();
  const auto est = estimate_hpt(table_source(wp, 0.1, 7), {1, 1, 2}, {}, 200000);
  CHECK(est.converged);
  for (std::size_t j = 0; j < 4; ++j)
    for (std::size_t p = 0; p < 2; ++p)
      for (std::size_t l = 0; l < 2; ++l) CHECK(std::abs(est.table.rows()[j].payoffs[p][l] - wp.rows()[j].payoffs[p][l]) <= 0.02);
}

TEST_CASE("cell estimate is the sample mean") {
  const auto wp = fixtures::wolfpack();
  auto source = table_source(wp, 0.3, 13);
  HptEstimator est({1, 1, 2}, {});
  std::map<std::size_t, std::pair<double, int>> sums;  // row -> first-population sum, count
  for (std::size_t i = 0; i < 500; ++i) {
    const auto r = *source(i);
    est.add(r);
    auto& s = sums[est.row_of(r)];
    s.first += r.rewards[0][0];
    ++s.second;
  }
  const auto snap = est.snapshot();
  for (const auto& [row, s] : sums) {
    const auto& counts = snap.table.rows()[row].counts.first;
    const std::size_t l = counts[0] == 1 ? 0 : 1;
    CHECK(std::abs(snap.table.rows()[row].payoffs[0][l] - s.first / s.second) <= 1e-12);
  }
}

TEST_CASE("estimates do not depend on record order") {
  auto source = table_source(fixtures::wolfpack(), 0.2, 5);
  std::vector<EpisodeRecord> records;
  for (std::size_t i = 0; i < 400; ++i) records.push_back(*source(i));
  EstimatorOptions opt;
  opt.min_visits = 1000;  // never converge, use every record
  const auto a = estimate_from_records(records, {1, 1, 2}, opt);
  std::reverse(records.begin(), records.end());
  const auto b = estimate_from_records(records, {1, 1, 2}, opt);
  for (std::size_t j = 0; j < 4; ++j) CHECK(a.table.rows()[j].payoffs == b.table.rows()[j].payoffs);
}

TEST_CASE("window maximum of deltas shrinks") {
  auto source = table_source(fixtures::wolfpack(), 0.1, 23);
  HptEstimator est({1, 1, 2}, {100000, 50, 1e-9, false});
  auto window_max = [&] {
    const auto snap = est.snapshot();
    double m = 0.0;
    for (const auto& row : snap.history)
      for (const auto& pop : row)
        for (const auto& d : pop)
          for (double v : d) m = std::max(m, v);
    return m;
  };
  std::vector<double> maxima;
  std::size_t i = 0;
  for (int block = 0; block < 4; ++block) {
    for (int n = 0; n < 2000; ++n) est.add(*source(i++));
    maxima.push_back(window_max());
  }
  for (std::size_t b = 1; b < maxima.size(); ++b) CHECK(maxima[b] <= maxima[b - 1]);
}

TEST_CASE("empty budget leaves every row unestimated") {
  const auto est = estimate_hpt(table_source(fixtures::wolfpack(), 0.0, 1), {1, 1, 2}, {}, 0);
  CHECK_FALSE(est.complete());
  CHECK_FALSE(est.converged);
  for (bool u : est.unestimated) CHECK(u);
}

TEST_CASE("timeouts are counted or discarded") {
  EpisodeRecord r;
  r.assignment = {std::vector<int>{0}, std::vector<int>{1}};
  r.rewards = {std::vector<double>{0.0}, std::vector<double>{0.0}};
  r.timed_out = true;
  HptEstimator keep({1, 1, 2}, {});
  CHECK(keep.add(r));
  CHECK(keep.snapshot().timeouts_included == 1);
  EstimatorOptions opt;
  opt.discard_timeouts = true;
  HptEstimator drop({1, 1, 2}, opt);
  CHECK_FALSE(drop.add(r));
  const auto snap = drop.snapshot();
  CHECK(snap.timeouts_discarded == 1);
  CHECK(snap.episodes_applied == 0);
}

TEST_CASE("bad records are rejected") {
  HptEstimator est({1, 1, 2}, {});
  EpisodeRecord r;
  r.assignment = {std::vector<int>{3}, std::vector<int>{0}};
  r.rewards = {std::vector<double>{1.0}, std::vector<double>{1.0}};
  CHECK_THROWS_AS(est.add(r), DomainError);
  r.assignment = {std::vector<int>{0}, std::vector<int>{0}};
  r.rewards = {std::vector<double>{std::nan("")}, std::vector<double>{1.0}};
  CHECK_THROWS_AS(est.add(r), DomainError);
}

TEST_CASE("wolfpack pipeline yields a complete table") {
  const auto est = estimate_hpt(wolfpack_source({}), {1, 1, 2}, {}, 20000);
  CHECK(est.complete());
  CHECK(est.table.report().ok());
  CHECK(est.table.rows().size() == 4);
  CHECK(est.table.rows()[0].counts == PairCountRow{{1, 0}, {1, 0}});
  CHECK(est.table.rows()[3].counts == PairCountRow{{0, 1}, {0, 1}});
}
