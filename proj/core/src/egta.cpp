#include "hptdyn/egta.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "hptdyn/errors.hpp"

namespace hptdyn {

std::array<std::vector<int>, 2> sample_policy_assignment(const std::array<PopulationPolicies, 2>& policies,
                                                         std::mt19937_64& rng) {
  std::array<std::vector<int>, 2> out;
  for (std::size_t p = 0; p < 2; ++p) {
    const auto& pop = policies[p];
    if (pop.strategies.empty() || pop.players < 1) throw DomainError("every population needs players and strategies");
    std::uniform_int_distribution<std::size_t> pick(0, pop.strategies.size() - 1);
    for (int q = 0; q < pop.players; ++q) out[p].push_back(pop.strategies[pick(rng)]);
  }
  return out;
}

bool HptEstimate::complete() const {
  return std::none_of(unestimated.begin(), unestimated.end(), [](bool b) { return b; });
}

HptEstimator::HptEstimator(HptShape shape, EstimatorOptions options)
    : shape_(shape), options_(options), rows_(enumerate_rows_asymmetric(shape.first_players, shape.second_players, shape.strategies)) {
  if (options_.window < 1 || options_.min_visits < 0 || !(options_.tolerance > 0.0))
    throw DomainError("estimator needs window >= 1, min_visits >= 0 and a positive tolerance");
  visits_.assign(rows_.size(), 0);
  cells_.resize(rows_.size());
  for (auto& row : cells_)
    for (auto& pop : row) pop.resize(static_cast<std::size_t>(shape_.strategies));
}

std::size_t HptEstimator::row_of(const EpisodeRecord& record) const {
  const std::array<int, 2> sizes{shape_.first_players, shape_.second_players};
  PairCountRow key{CountRow(static_cast<std::size_t>(shape_.strategies), 0),
                   CountRow(static_cast<std::size_t>(shape_.strategies), 0)};
  for (std::size_t p = 0; p < 2; ++p) {
    if (record.assignment[p].size() != static_cast<std::size_t>(sizes[p]) ||
        record.rewards[p].size() != record.assignment[p].size())
      throw DomainError("episode " + std::to_string(record.episode_seed) + " does not match the population sizes");
    for (int s : record.assignment[p]) {
      if (s < 0 || s >= shape_.strategies)
        throw DomainError("episode " + std::to_string(record.episode_seed) + " uses an unknown strategy");
      ++(p == 0 ? key.first : key.second)[static_cast<std::size_t>(s)];
    }
  }
  const auto it = std::find(rows_.begin(), rows_.end(), key);
  return static_cast<std::size_t>(it - rows_.begin());
}

bool HptEstimator::add(const EpisodeRecord& record) {
  const std::size_t row = row_of(record);
  for (const auto& pop : record.rewards)
    for (double r : pop)
      if (!std::isfinite(r)) throw DomainError("episode " + std::to_string(record.episode_seed) + " has a non-finite reward");
  if (record.timed_out) {
    if (options_.discard_timeouts) {
      ++timeouts_discarded_;
      return false;
    }
    ++timeouts_included_;
  }
  ++visits_[row];
  ++applied_;
  for (std::size_t p = 0; p < 2; ++p) {
    for (std::size_t q = 0; q < record.assignment[p].size(); ++q) {
      Cell& cell = cells_[row][p][static_cast<std::size_t>(record.assignment[p][q])];
      const double before = cell.mean;
      ++cell.count;
      cell.mean += (record.rewards[p][q] - cell.mean) / static_cast<double>(cell.count);
      if (cell.count > 1) {
        cell.deltas.push_back(std::abs(cell.mean - before));
        if (cell.deltas.size() > static_cast<std::size_t>(options_.window)) cell.deltas.pop_front();
      }
    }
  }
  return true;
}

bool HptEstimator::converged() const {
  for (std::size_t j = 0; j < rows_.size(); ++j) {
    if (visits_[j] < static_cast<std::size_t>(std::max(1, options_.min_visits))) return false;
    for (std::size_t p = 0; p < 2; ++p) {
      const CountRow& own = p == 0 ? rows_[j].first : rows_[j].second;
      for (std::size_t s = 0; s < own.size(); ++s) {
        if (own[s] == 0) continue;
        const auto& d = cells_[j][p][s].deltas;
        if (d.size() < static_cast<std::size_t>(options_.window)) return false;
        if (*std::max_element(d.begin(), d.end()) >= options_.tolerance) return false;
      }
    }
  }
  return true;
}

HptEstimate HptEstimator::snapshot() const {
  std::vector<AsymmetricRow> rows;
  std::vector<bool> unestimated;
  std::vector<std::array<std::vector<std::deque<double>>, 2>> history(rows_.size());
  for (std::size_t j = 0; j < rows_.size(); ++j) {
    AsymmetricRow row{rows_[j], {}};
    for (std::size_t p = 0; p < 2; ++p) {
      const CountRow& own = p == 0 ? rows_[j].first : rows_[j].second;
      auto& u = row.payoffs[p];
      u.assign(own.size(), 0.0);
      for (std::size_t s = 0; s < own.size(); ++s) {
        const Cell& cell = cells_[j][p][s];
        if (own[s] > 0 && cell.count > 0) u[s] = cell.mean;
        history[j][p].push_back(cell.deltas);
      }
    }
    rows.push_back(std::move(row));
    unestimated.push_back(visits_[j] == 0);
  }
  return HptEstimate{AsymmetricHpt(shape_.first_players, shape_.second_players, shape_.strategies, std::move(rows)),
                     visits_,
                     std::move(unestimated),
                     std::move(history),
                     converged(),
                     applied_,
                     timeouts_included_,
                     timeouts_discarded_};
}

HptEstimate estimate_hpt(const EpisodeSource& source, HptShape shape, const EstimatorOptions& options,
                         std::size_t budget, std::vector<EpisodeRecord>* log) {
  HptEstimator estimator(shape, options);
  for (std::size_t i = 0; i < budget; ++i) {
    auto record = source(i);
    if (!record) break;
    estimator.add(*record);
    if (log) log->push_back(std::move(*record));
    if (estimator.converged()) break;
  }
  return estimator.snapshot();
}

HptEstimate estimate_from_records(std::vector<EpisodeRecord> records, HptShape shape, const EstimatorOptions& options) {
  std::stable_sort(records.begin(), records.end(),
                   [](const EpisodeRecord& a, const EpisodeRecord& b) { return a.episode_seed < b.episode_seed; });
  HptEstimator estimator(shape, options);
  for (const auto& r : records) {
    estimator.add(r);
    if (estimator.converged()) break;
  }
  return estimator.snapshot();
}

}  // namespace hptdyn
