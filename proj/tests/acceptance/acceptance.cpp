// One PASS/FAIL line per acceptance criterion. Exit status is non-zero if a
// gated criterion fails; informational ones are reported but not gated.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <memory>
#include <random>
#include <string>

#include "hptdyn/dynamics.hpp"
#include "hptdyn/egta.hpp"
#include "hptdyn/legacy.hpp"
#include "hptdyn/nfg.hpp"
#include "hptdyn/payoff.hpp"
#include "hptdyn/wolfpack.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace hptdyn;

namespace {

int gated_failures = 0;

void report(const char* name, bool pass, const std::string& detail, bool gated = true,
            std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now()) {
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%s %s%s: %s (%.2f s)\n", pass ? "PASS" : "FAIL", name, gated ? "" : " [informational]", detail.c_str(),
              secs);
  if (gated && !pass) ++gated_failures;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

using Clock = std::chrono::steady_clock;

void pd_golden() {
  const auto t0 = Clock::now();
  const auto pd = fixtures::pd();
  const auto f = expected_payoff_symmetric(pd, {0.5, 0.5});
  const auto g = legacy_expected_payoff(pd, {0.5, 0.5});
  const double e1 = std::max(std::abs(f[0] - 1.5), std::abs(f[1] - 3.0));
  const double e2 = std::max(std::abs(g.fitness[0] - 1.0), std::abs(g.fitness[1] - 11.0 / 3.0));
  report("pd-golden", e1 <= 1e-12 && e2 <= 1e-12,
         fmt("ours (%.12g, %.12g), legacy (%.12g, %.12g)", f[0], f[1], g.fitness[0], g.fitness[1]), true, t0);
}

void bos_golden() {
  const auto t0 = Clock::now();
  const auto bos = fixtures::bos();
  const StrategyProfile h{0.5, 0.5};
  const auto f = expected_payoff_asymmetric(bos, h, h);
  const auto pair = decompose_asymmetric(bos);
  const auto w = legacy_expected_payoff(pair.first, h), m = legacy_expected_payoff(pair.second, h);
  double err = 0.0;
  const double want[4] = {1.5, 1.0, 1.0, 1.5};
  const double got[4] = {f.first[0], f.first[1], f.second[0], f.second[1]};
  for (int i = 0; i < 4; ++i) err = std::max(err, std::abs(got[i] - want[i]));
  const double lwant[4] = {1.0, 2.0 / 3.0, 2.0 / 3.0, 1.0};
  const double lgot[4] = {w.fitness[0], w.fitness[1], m.fitness[0], m.fitness[1]};
  for (int i = 0; i < 4; ++i) err = std::max(err, std::abs(lgot[i] - lwant[i]));
  report("bos-golden", err <= 1e-12, fmt("max deviation %.3g", err), true, t0);
}

void oracle_equivalence() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(20240501);
  int cases = 0;
  double worst = 0.0;
  for (int m = 1; m <= 3; ++m)
    for (int n = 1; n <= 3; ++n)
      for (int k = 2; k <= 3; ++k)
        for (int rep = 0; rep < 30; ++rep) {
          const auto t = oracle::random_asymmetric(rng, m, n, k);
          const auto x = oracle::random_simplex(rng, k, 0.1), y = oracle::random_simplex(rng, k, 0.1);
          const auto f = expected_payoff_asymmetric(t, StrategyProfile(x), StrategyProfile(y));
          for (int i = 0; i < k; ++i) {
            worst = std::max(worst, std::abs(f.first[static_cast<std::size_t>(i)] - oracle::asymmetric_payoff(t, x, y, 0, i)));
            worst = std::max(worst, std::abs(f.second[static_cast<std::size_t>(i)] - oracle::asymmetric_payoff(t, x, y, 1, i)));
          }
          ++cases;
          if (m + n > 4 || rep % 3) continue;
          const int players = m + n;
          const auto s = oracle::random_symmetric(rng, players, k);
          const auto z = oracle::random_simplex(rng, k, 0.1);
          const auto g = expected_payoff_symmetric(s, StrategyProfile(z));
          for (int i = 0; i < k; ++i)
            worst = std::max(worst, std::abs(g[static_cast<std::size_t>(i)] - oracle::symmetric_payoff(s, z, i)));
          ++cases;
        }
  report("oracle-equivalence", cases >= 500 && worst <= 1e-9, fmt("%.0f random instances, max error %.3g", cases, worst),
         true, t0);
}

void nfg_round_trip() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(77);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int k = 2 + trial % 3;
    const auto a = oracle::random_matrix(rng, k, k);
    const auto t = nfg_to_hpt_symmetric(NormalFormGame::symmetric_matrix(a));
    const auto x = oracle::random_simplex(rng, k);
    const auto f = expected_payoff_symmetric(t, StrategyProfile(x));
    const auto ax = oracle::mat_vec(a, x);
    for (int i = 0; i < k; ++i) worst = std::max(worst, std::abs(f[static_cast<std::size_t>(i)] - ax[static_cast<std::size_t>(i)]));
  }
  for (int trial = 0; trial < 100; ++trial) {
    const int k = 2 + trial % 3;
    const auto a = oracle::random_matrix(rng, k, k), b = oracle::random_matrix(rng, k, k);
    const auto t = nfg_to_hpt_asymmetric(NormalFormGame::bimatrix(a, b), 1, 1);
    const auto x = oracle::random_simplex(rng, k), y = oracle::random_simplex(rng, k);
    const auto f = expected_payoff_asymmetric(t, StrategyProfile(x), StrategyProfile(y));
    const auto ay = oracle::mat_vec(a, y), xb = oracle::vec_mat(x, b);
    for (int i = 0; i < k; ++i) {
      worst = std::max(worst, std::abs(f.first[static_cast<std::size_t>(i)] - ay[static_cast<std::size_t>(i)]));
      worst = std::max(worst, std::abs(f.second[static_cast<std::size_t>(i)] - xb[static_cast<std::size_t>(i)]));
    }
  }
  report("nfg-round-trip", worst <= 1e-12, fmt("100 symmetric + 100 bimatrix games, max error %.3g", worst), true, t0);
}

void wolfpack_equilibria() {
  const auto t0 = Clock::now();
  const auto search = find_equilibria(make_replicator_system(fixtures::wolfpack()));
  bool a = false, b = false, mixed = false;
  double mx = -1, my = -1;
  std::string mixed_class = "none";
  for (const auto& e : search.equilibria) {
    const double x1 = e.state.first[0], y1 = (*e.state.second)[0];
    if (x1 == 0.0 && y1 == 1.0) a = e.classification == Stability::stable;
    if (x1 == 1.0 && y1 == 0.0) b = e.classification == Stability::stable;
    if (std::abs(x1 - 0.32) <= 0.02 && std::abs(y1 - 0.28) <= 0.02) {
      mixed = e.is_unstable();
      mx = x1;
      my = y1;
      mixed_class = to_string(e.classification);
    }
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  report("wolfpack-equilibria", a && b && mixed && secs < 10.0,
         fmt("(0,1) stable %.0f, (1,0) stable %.0f, mixed at (%.4f, %.4f)", a, b, mx, my) + " " + mixed_class, true, t0);
}

void starcraft_absorption() {
  const auto t0 = Clock::now();
  const auto sys = make_replicator_system(fixtures::starcraft());
  double worst = 0.0;
  int runs = 0;
  for (double x1 : {0.1, 0.3, 0.5, 0.7, 0.9})
    for (double y1 : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      const JointState start{StrategyProfile{x1, 1 - x1}, StrategyProfile{y1, 1 - y1}};
      const auto end = integrate_trajectory(sys, start, 200.0, 0.01).samples.back().state;
      worst = std::max({worst, std::abs(end.first[0] - 1.0), std::abs((*end.second)[0] - 1.0)});
      ++runs;
    }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  report("starcraft-absorption", worst < 1e-2 && secs < 30.0,
         fmt("%.0f trajectories, max distance from (1,1) %.3g", runs, worst), true, t0);
}

void legacy_wolfpack() {
  const auto t0 = Clock::now();
  const auto search = find_equilibria(make_replicator_system(fixtures::wolfpack(), PayoffMethod::legacy));
  const Equilibrium* best = nullptr;
  double best_d = 1e9;
  for (const auto& e : search.equilibria) {
    const double x1 = e.state.first[0], y1 = (*e.state.second)[0];
    if (x1 <= 0 || x1 >= 1 || y1 <= 0 || y1 >= 1) continue;
    const double d = std::max(std::abs(x1 - 0.07), std::abs(y1 - 0.07));
    if (d < best_d) {
      best_d = d;
      best = &e;
    }
  }
  if (!best) {
    report("legacy-wolfpack", false, "no interior rest point under the legacy formulas", false, t0);
    return;
  }
  const bool located = best_d <= 0.03;
  const bool attractor = best->classification == Stability::stable;
  std::string detail = fmt("interior rest point at (%.4f, %.4f), classified ", best->state.first[0], (*best->state.second)[0]) +
                       to_string(best->classification);
  if (located && !attractor) detail += "; deviation: location matches but it is not an attractor";
  report("legacy-wolfpack", located && attractor, detail, false, t0);
}

void dynamics_properties() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(99);
  const std::vector<ReplicatorSystem> systems{
      make_replicator_system(fixtures::pd()), make_replicator_system(fixtures::bos()),
      make_replicator_system(fixtures::wolfpack()), make_replicator_system(fixtures::starcraft())};
  double tangency = 0.0, drift = 0.0, halving = 0.0;
  bool faces = true;
  for (const auto& sys : systems) {
    for (int trial = 0; trial < 500; ++trial) {
      std::vector<double> s;
      for (int p = 0; p < sys.populations(); ++p) {
        const auto w = oracle::random_simplex(rng, sys.strategies(p), 0.2);
        s.insert(s.end(), w.begin(), w.end());
      }
      const auto v = sys.velocity(s);
      for (int p = 0; p < sys.populations(); ++p) {
        double sum = 0.0;
        for (int i = 0; i < sys.strategies(p); ++i) sum += v[sys.offset(p) + static_cast<std::size_t>(i)];
        tangency = std::max(tangency, std::abs(sum));
      }
    }
    // Interior start for drift and step halving, a start on a face for invariance.
    std::vector<double> interior, face;
    for (int p = 0; p < sys.populations(); ++p) {
      const double a = p == 0 ? 0.35 : 0.6;
      interior.insert(interior.end(), {a, 1 - a});
      face.insert(face.end(), {p == 0 ? 0.0 : 0.5, p == 0 ? 1.0 : 0.5});
    }
    const auto start = sys.unflatten(interior);
    const auto t = integrate_trajectory(sys, start, 200.0, 0.01);
    drift = std::max(drift, t.max_simplex_drift);
    const auto coarse = integrate_trajectory(sys, start, 50.0, 0.02).samples.back().state.flat();
    const auto fine = integrate_trajectory(sys, start, 50.0, 0.01).samples.back().state.flat();
    for (std::size_t i = 0; i < fine.size(); ++i) halving = std::max(halving, std::abs(coarse[i] - fine[i]));
    const auto f = integrate_trajectory(sys, sys.unflatten(face), 200.0, 0.01);
    for (const auto& sample : f.samples)
      if (sample.state.first[0] != 0.0) faces = false;
  }
  report("dynamics-properties", tangency <= 1e-12 && faces && drift < 1e-9 && halving < 1e-6,
         fmt("max |sum v| %.3g, max drift %.3g, step-halving gap %.3g, faces kept %.0f", tangency, drift, halving, faces),
         true, t0);
}

void estimation() {
  const auto t0 = Clock::now();
  const auto wp = fixtures::wolfpack();
  auto rng = std::make_shared<std::mt19937_64>(4242);
  EpisodeSource noisy = [&wp, rng](std::size_t index) -> std::optional<EpisodeRecord> {
    std::uniform_int_distribution<int> pick(0, 1);
    std::normal_distribution<double> noise(0.0, 0.1);
    const int a = pick(*rng), b = pick(*rng);
    const CountRow x{a == 0 ? 1 : 0, a == 1 ? 1 : 0}, y{b == 0 ? 1 : 0, b == 1 ? 1 : 0};
    const auto& row = wp.rows()[*wp.find_row({x, y})];
    EpisodeRecord r;
    r.assignment = {std::vector<int>{a}, std::vector<int>{b}};
    r.rewards = {std::vector<double>{row.payoffs[0][static_cast<std::size_t>(a)] + noise(*rng)},
                 std::vector<double>{row.payoffs[1][static_cast<std::size_t>(b)] + noise(*rng)}};
    r.episode_seed = index;
    return r;
  };
  const auto est = estimate_hpt(noisy, {1, 1, 2}, {}, 1000000);
  double worst = 0.0;
  for (std::size_t j = 0; j < 4; ++j)
    for (std::size_t p = 0; p < 2; ++p)
      for (std::size_t l = 0; l < 2; ++l)
        worst = std::max(worst, std::abs(est.table.rows()[j].payoffs[p][l] - wp.rows()[j].payoffs[p][l]));

  const auto t1 = Clock::now();
  const auto sim = estimate_hpt(wolfpack_source({}), {1, 1, 2}, {}, 20000);
  const double sim_secs = std::chrono::duration<double>(Clock::now() - t1).count();
  const bool sim_ok = sim.complete() && sim.table.report().ok() && sim.table.rows().size() == 4 &&
                      sim.episodes_applied <= 20000 && sim_secs < 60.0;
  report("estimation", est.converged && worst <= 0.02 && sim_ok,
         fmt("synthetic: %.0f episodes, max cell error %.4f; simulator: %.0f episodes, complete %.0f",
             static_cast<double>(est.episodes_applied), worst, static_cast<double>(sim.episodes_applied), sim.complete()),
         true, t0);
}

}  // namespace

int main() {
  pd_golden();
  bos_golden();
  oracle_equivalence();
  nfg_round_trip();
  wolfpack_equilibria();
  starcraft_absorption();
  legacy_wolfpack();
  dynamics_properties();
  estimation();
  std::printf("%s: %d gated criteria failed\n", gated_failures ? "FAIL" : "PASS", gated_failures);
  return gated_failures ? 1 : 0;
}
