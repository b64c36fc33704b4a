#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "hptdyn/table.hpp"

namespace hptdyn {

/// One simulated episode: which strategy every member of each population
/// played and the reward each of them received.
struct EpisodeRecord {
  std::array<std::vector<int>, 2> assignment;
  std::array<std::vector<double>, 2> rewards;
  std::uint64_t episode_seed = 0;
  bool timed_out = false;
};

struct PopulationPolicies {
  int players = 1;
  std::vector<int> strategies;  // strategy indices available to every member
};

// Independent uniform draw of a strategy for every member of both populations.
std::array<std::vector<int>, 2> sample_policy_assignment(const std::array<PopulationPolicies, 2>& policies,
                                                         std::mt19937_64& rng);

struct HptShape {
  int first_players = 1;
  int second_players = 1;
  int strategies = 2;
};

struct EstimatorOptions {
  int min_visits = 100;   // per row before convergence can be declared
  int window = 50;        // updates over which a cell must stay within tolerance
  double tolerance = 1e-3;
  bool discard_timeouts = false;
};

/// Running per-cell means of an asymmetric payoff table.
struct HptEstimate {
  AsymmetricHpt table;
  std::vector<std::size_t> visits;  // episodes mapped to each row
  std::vector<bool> unestimated;    // rows that never received an episode
  // Recent |delta mean| per cell, indexed [row][population][strategy].
  std::vector<std::array<std::vector<std::deque<double>>, 2>> history;
  bool converged = false;
  std::size_t episodes_applied = 0;
  std::size_t timeouts_included = 0;
  std::size_t timeouts_discarded = 0;

  bool complete() const;
};

/// Incremental estimator. Each cell keeps a running mean updated as
/// mean += (r - mean) / count, so a constant reward stream is reproduced
/// exactly and the estimate tracks the sample mean to rounding.
class HptEstimator {
 public:
  HptEstimator(HptShape shape, EstimatorOptions options);

  // Returns false when the record was a discarded timeout. Throws DomainError
  // for records that do not fit the shape.
  bool add(const EpisodeRecord& record);
  bool converged() const;
  HptEstimate snapshot() const;
  std::size_t row_of(const EpisodeRecord& record) const;

 private:
  struct Cell {
    double mean = 0.0;
    std::size_t count = 0;
    std::deque<double> deltas;
  };

  HptShape shape_;
  EstimatorOptions options_;
  std::vector<PairCountRow> rows_;
  std::vector<std::size_t> visits_;
  std::vector<std::array<std::vector<Cell>, 2>> cells_;
  std::size_t applied_ = 0;
  std::size_t timeouts_included_ = 0;
  std::size_t timeouts_discarded_ = 0;
};

// Produces the record for episode `index`, or nothing when exhausted.
using EpisodeSource = std::function<std::optional<EpisodeRecord>(std::size_t index)>;

/// Pulls episodes from `source` until the estimate converges or `budget`
/// episodes have been drawn. Records from the source must arrive in
/// increasing seed order.
HptEstimate estimate_hpt(const EpisodeSource& source, HptShape shape, const EstimatorOptions& options,
                         std::size_t budget, std::vector<EpisodeRecord>* log = nullptr);

// Applies stored records sorted by episode seed, stopping at convergence like
// estimate_hpt does.
HptEstimate estimate_from_records(std::vector<EpisodeRecord> records, HptShape shape, const EstimatorOptions& options);

}  // namespace hptdyn
