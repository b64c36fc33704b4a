#pragma once

#include <array>
#include <cstdint>

#include "hptdyn/egta.hpp"

namespace hptdyn {

// Strategy indices as they appear in the payoff table.
enum class WolfStrategy : int { cooperative = 0, defective = 1 };

struct WolfpackConfig {
  int grid_size = 10;
  int capture_radius = 1;   // Manhattan distance at which a wolf catches the sheep
  int team_threshold = 6;   // both wolves within this distance at capture -> team reward
  double r_lone = 1.0;
  double r_team = 1.5;
  int max_steps = 200;
  std::uint64_t rng_seed = 1;

  // Throws DomainError when an invariant is violated.
  void validate() const;
};

struct GridCell {
  int row = 0;
  int col = 0;
  friend bool operator==(const GridCell&, const GridCell&) = default;
};

inline int manhattan(GridCell a, GridCell b) {
  return (a.row > b.row ? a.row - b.row : b.row - a.row) + (a.col > b.col ? a.col - b.col : b.col - a.col);
}

struct WolfpackLayout {
  GridCell sheep;
  GridCell wolf1;
  GridCell wolf2;
};

// Sheep at the centre, wolves in opposite corners.
WolfpackLayout default_layout(const WolfpackConfig& config);

/// Runs one episode. Each step the sheep takes a uniform random action from
/// {stay, up, down, left, right} (walls block), then wolf 1 and wolf 2 move by
/// their scripted strategy; capture is checked initially and after every
/// move. Defective wolves step greedily toward the sheep (rows before
/// columns). Cooperative wolves do the same but hold position once they are
/// within the team threshold while their partner is not.
EpisodeRecord simulate_wolfpack_episode(const WolfpackConfig& config, std::array<WolfStrategy, 2> strategies,
                                        std::uint64_t seed);
EpisodeRecord simulate_wolfpack_episode(const WolfpackConfig& config, std::array<WolfStrategy, 2> strategies,
                                        std::uint64_t seed, const WolfpackLayout& start);

/// Episode source for estimate_hpt: strategies drawn uniformly per wolf from
/// an RNG seeded with config.rng_seed, episode seeds increasing from a value
/// derived from the same seed.
EpisodeSource wolfpack_source(const WolfpackConfig& config);

}  // namespace hptdyn
