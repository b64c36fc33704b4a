#include "hptdyn/legacy.hpp"

#include <cmath>
#include <string>

#include "hptdyn/combinatorics.hpp"
#include "hptdyn/errors.hpp"

namespace hptdyn {

bool LegacyPayoff::any_degenerate() const {
  for (bool d : degenerate)
    if (d) return true;
  return false;
}

namespace {

bool legacy_fitness_impl(const SymmetricHpt& table, std::span<const double> x, std::span<double> out,
                         std::vector<bool>* flags) {
  const auto k = static_cast<std::size_t>(table.strategies());
  std::vector<double> prob;
  prob.reserve(table.row_count());
  for (const auto& row : table.rows()) {
    double p = static_cast<double>(multinomial(row.counts, table.players()));
    for (std::size_t l = 0; l < k; ++l) p *= ipow(x[l], row.counts[l]);
    prob.push_back(p);
  }
  bool degenerate = false;
  for (std::size_t i = 0; i < k; ++i) {
    double numerator = 0.0;
    for (std::size_t j = 0; j < table.row_count(); ++j) numerator += prob[j] * table.rows()[j].payoffs[i];
    const double denominator = 1.0 - ipow(1.0 - x[i], table.players());
    if (denominator == 0.0) {
      out[i] = 0.0;
      degenerate = true;
      if (flags) (*flags)[i] = true;
    } else {
      out[i] = numerator / denominator;
    }
  }
  return degenerate;
}

}  // namespace

bool legacy_fitness(const SymmetricHpt& table, std::span<const double> x, std::span<double> out) {
  return legacy_fitness_impl(table, x, out, nullptr);
}

LegacyPayoff legacy_expected_payoff(const SymmetricHpt& table, const StrategyProfile& x) {
  table.require_valid();
  if (x.size() != static_cast<std::size_t>(table.strategies()))
    throw DomainError("profile size does not match the table's strategy count");
  const auto k = static_cast<std::size_t>(table.strategies());
  std::vector<double> f(k);
  std::vector<bool> flags(k, false);
  legacy_fitness_impl(table, x.weights(), f, &flags);
  return {PayoffVector(std::move(f)), std::move(flags)};
}

DecomposedPair decompose_asymmetric(const AsymmetricHpt& table) {
  table.require_valid();
  if (table.first_players() != 1 || table.second_players() != 1)
    throw UnsupportedShapeError("decomposition into symmetric tables is only defined for 1 vs 1 games; got " +
                                std::to_string(table.first_players()) + " vs " +
                                std::to_string(table.second_players()));
  const int k = table.strategies();
  const auto ku = static_cast<std::size_t>(k);
  auto build = [&](int p) {
    std::vector<SymmetricRow> rows;
    for (auto& counts : enumerate_rows_symmetric(2, k)) rows.push_back({std::move(counts), std::vector<double>(ku, 0.0)});
    for (const auto& src : table.rows()) {
      std::size_t a = 0, b = 0;
      for (std::size_t l = 0; l < ku; ++l) {
        if (src.counts.first[l] == 1) a = l;
        if (src.counts.second[l] == 1) b = l;
      }
      const std::size_t own = p == 0 ? a : b;
      CountRow combined(ku, 0);
      ++combined[a];
      ++combined[b];
      for (auto& row : rows)
        if (row.counts == combined) row.payoffs[own] = src.payoffs[static_cast<std::size_t>(p)][own];
    }
    return SymmetricHpt(2, k, std::move(rows));
  };
  return {build(0), build(1)};
}

std::vector<ComparisonEntry> legacy_error_report(const SymmetricHpt& table, std::span<const StrategyProfile> profiles) {
  std::vector<ComparisonEntry> out;
  for (const auto& x : profiles) {
    ComparisonEntry e;
    e.profiles = {x};
    auto corrected = expected_payoff_symmetric(table, x);
    auto legacy = legacy_expected_payoff(table, x);
    std::vector<double> err(corrected.size());
    for (std::size_t i = 0; i < err.size(); ++i) err[i] = std::abs(corrected[i] - legacy.fitness[i]);
    e.corrected = {std::move(corrected)};
    e.degenerate = legacy.any_degenerate();
    e.legacy = {std::move(legacy.fitness)};
    e.abs_error = {std::move(err)};
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<ComparisonEntry> legacy_error_report(const AsymmetricHpt& table,
                                                 std::span<const std::pair<StrategyProfile, StrategyProfile>> profiles) {
  const auto pair = decompose_asymmetric(table);
  std::vector<ComparisonEntry> out;
  for (const auto& [x, y] : profiles) {
    ComparisonEntry e;
    e.profiles = {x, y};
    auto corrected = expected_payoff_asymmetric(table, x, y);
    // Each population's decomposed table is evaluated at the opponent's profile.
    auto first = legacy_expected_payoff(pair.first, y);
    auto second = legacy_expected_payoff(pair.second, x);
    e.degenerate = first.any_degenerate() || second.any_degenerate();
    auto diff = [](const PayoffVector& a, const PayoffVector& b) {
      std::vector<double> d(a.size());
      for (std::size_t i = 0; i < d.size(); ++i) d[i] = std::abs(a[i] - b[i]);
      return d;
    };
    e.abs_error = {diff(corrected.first, first.fitness), diff(corrected.second, second.fitness)};
    e.corrected = {std::move(corrected.first), std::move(corrected.second)};
    e.legacy = {std::move(first.fitness), std::move(second.fitness)};
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace hptdyn
