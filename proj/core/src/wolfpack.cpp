#include "hptdyn/wolfpack.hpp"

#include <memory>
#include <optional>
#include <random>

#include "hptdyn/errors.hpp"

namespace hptdyn {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

GridCell greedy_step(GridCell from, GridCell target) {
  if (from.row != target.row)
    from.row += from.row < target.row ? 1 : -1;
  else if (from.col != target.col)
    from.col += from.col < target.col ? 1 : -1;
  return from;
}

}  // namespace

void WolfpackConfig::validate() const {
  if (grid_size < 4) throw DomainError("wolfpack grid_size must be at least 4");
  if (capture_radius < 1) throw DomainError("wolfpack capture_radius must be at least 1");
  if (team_threshold < 1) throw DomainError("wolfpack team_threshold must be at least 1");
  if (!(r_lone >= 0.0) || !(r_team >= r_lone)) throw DomainError("wolfpack rewards need r_team >= r_lone >= 0");
  if (max_steps < 0) throw DomainError("wolfpack max_steps must be non-negative");
}

WolfpackLayout default_layout(const WolfpackConfig& config) {
  const int g = config.grid_size;
  return {{g / 2, g / 2}, {0, 0}, {g - 1, g - 1}};
}

EpisodeRecord simulate_wolfpack_episode(const WolfpackConfig& config, std::array<WolfStrategy, 2> strategies,
                                        std::uint64_t seed) {
  return simulate_wolfpack_episode(config, strategies, seed, default_layout(config));
}

EpisodeRecord simulate_wolfpack_episode(const WolfpackConfig& config, std::array<WolfStrategy, 2> strategies,
                                        std::uint64_t seed, const WolfpackLayout& start) {
  config.validate();
  EpisodeRecord record;
  record.episode_seed = seed;
  record.assignment = {std::vector<int>{static_cast<int>(strategies[0])}, std::vector<int>{static_cast<int>(strategies[1])}};
  record.rewards = {std::vector<double>{0.0}, std::vector<double>{0.0}};

  GridCell sheep = start.sheep;
  std::array<GridCell, 2> wolves{start.wolf1, start.wolf2};
  const int g = config.grid_size;
  for (GridCell c : {sheep, wolves[0], wolves[1]})
    if (c.row < 0 || c.row >= g || c.col < 0 || c.col >= g) throw DomainError("wolfpack layout lies outside the grid");

  auto resolve_capture = [&]() {
    const std::array<int, 2> d{manhattan(wolves[0], sheep), manhattan(wolves[1], sheep)};
    const bool first = d[0] <= config.capture_radius;
    const bool second = d[1] <= config.capture_radius;
    if (!first && !second) return false;
    if (d[0] <= config.team_threshold && d[1] <= config.team_threshold) {
      record.rewards = {std::vector<double>{config.r_team}, std::vector<double>{config.r_team}};
    } else {
      record.rewards = {std::vector<double>{first ? config.r_lone : 0.0},
                        std::vector<double>{first ? 0.0 : config.r_lone}};
    }
    return true;
  };

  if (resolve_capture()) return record;

  std::mt19937_64 rng(splitmix64(seed));
  std::uniform_int_distribution<int> action(0, 4);
  for (int step = 0; step < config.max_steps; ++step) {
    GridCell next = sheep;
    switch (action(rng)) {
      case 1: --next.row; break;
      case 2: ++next.row; break;
      case 3: --next.col; break;
      case 4: ++next.col; break;
      default: break;
    }
    if (next.row >= 0 && next.row < g && next.col >= 0 && next.col < g) sheep = next;
    if (resolve_capture()) return record;

    for (std::size_t w = 0; w < 2; ++w) {
      const int own = manhattan(wolves[w], sheep);
      const int partner = manhattan(wolves[1 - w], sheep);
      const bool wait = strategies[w] == WolfStrategy::cooperative && own <= config.team_threshold &&
                        partner > config.team_threshold;
      if (!wait) wolves[w] = greedy_step(wolves[w], sheep);
      if (resolve_capture()) return record;
    }
  }
  record.timed_out = true;
  return record;
}

EpisodeSource wolfpack_source(const WolfpackConfig& config) {
  config.validate();
  auto rng = std::make_shared<std::mt19937_64>(config.rng_seed);
  const std::uint64_t base = splitmix64(config.rng_seed) >> 2;
  const std::array<PopulationPolicies, 2> policies{PopulationPolicies{1, {0, 1}}, PopulationPolicies{1, {0, 1}}};
  return [config, rng, base, policies](std::size_t index) -> std::optional<EpisodeRecord> {
    const auto a = sample_policy_assignment(policies, *rng);
    return simulate_wolfpack_episode(config, {static_cast<WolfStrategy>(a[0][0]), static_cast<WolfStrategy>(a[1][0])},
                                     base + index);
  };
}

}  // namespace hptdyn
