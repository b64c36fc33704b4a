#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hptdyn/combinatorics.hpp"

namespace hptdyn {

struct Violation {
  std::optional<std::size_t> row;  // absent for table-level problems
  std::string kind;                // "shape", "missing-composition", "zero-support", ...
  std::string message;
};

/// Result of checking a payoff table against its structural invariants.
/// Violations make a table unusable; notes are informational (e.g. padded
/// strategies).
struct ValidationReport {
  std::vector<Violation> violations;
  std::vector<std::string> notes;

  bool ok() const { return violations.empty(); }
  std::string to_string() const;
};

struct SymmetricRow {
  CountRow counts;
  std::vector<double> payoffs;  // U_j, one entry per strategy

  friend bool operator==(const SymmetricRow&, const SymmetricRow&) = default;
};

/// Heuristic payoff table of an n-player k-strategy symmetric game. Rows may
/// be stored in any order; construction never throws on bad content, the
/// problems are recorded in report() instead.
class SymmetricHpt {
 public:
  SymmetricHpt(int players, int strategies, std::vector<SymmetricRow> rows);

  // Builds a table over the canonical row order with payoffs from `payoff(counts, i)`
  // for supported cells and exact zeros elsewhere.
  template <typename PayoffFn>
  static SymmetricHpt from_function(int players, int strategies, PayoffFn&& payoff) {
    std::vector<SymmetricRow> rows;
    for (auto& counts : enumerate_rows_symmetric(players, strategies)) {
      std::vector<double> u(static_cast<std::size_t>(strategies), 0.0);
      for (int i = 0; i < strategies; ++i)
        if (counts[static_cast<std::size_t>(i)] > 0) u[static_cast<std::size_t>(i)] = payoff(counts, i);
      rows.push_back({std::move(counts), std::move(u)});
    }
    return SymmetricHpt(players, strategies, std::move(rows));
  }

  int players() const { return players_; }
  int strategies() const { return strategies_; }
  const std::vector<SymmetricRow>& rows() const { return rows_; }
  std::size_t row_count() const { return rows_.size(); }

  const ValidationReport& report() const { return report_; }
  bool valid() const { return report_.ok(); }
  // Throws InvalidTableError carrying the report text.
  void require_valid() const;

  std::optional<std::size_t> find_row(const CountRow& counts) const;

 private:
  int players_;
  int strategies_;
  std::vector<SymmetricRow> rows_;
  ValidationReport report_;
};

struct AsymmetricRow {
  PairCountRow counts;
  std::array<std::vector<double>, 2> payoffs;  // U^(1)_j and U^(2)_j

  friend bool operator==(const AsymmetricRow&, const AsymmetricRow&) = default;
};

/// Heuristic payoff table of a two-population game with m players in the first
/// population and n in the second, both choosing among k strategies. A
/// population with fewer real strategies is padded with never-played ones;
/// `padding(p)` counts those trailing columns.
class AsymmetricHpt {
 public:
  AsymmetricHpt(int first_players, int second_players, int strategies,
                std::vector<AsymmetricRow> rows, std::array<int, 2> padding = {0, 0});

  template <typename PayoffFn>
  static AsymmetricHpt from_function(int m, int n, int strategies, PayoffFn&& payoff) {
    std::vector<AsymmetricRow> rows;
    for (auto& counts : enumerate_rows_asymmetric(m, n, strategies)) {
      AsymmetricRow row{std::move(counts), {}};
      for (int p = 0; p < 2; ++p) {
        const CountRow& own = p == 0 ? row.counts.first : row.counts.second;
        auto& u = row.payoffs[static_cast<std::size_t>(p)];
        u.assign(static_cast<std::size_t>(strategies), 0.0);
        for (int i = 0; i < strategies; ++i)
          if (own[static_cast<std::size_t>(i)] > 0) u[static_cast<std::size_t>(i)] = payoff(row.counts, p, i);
      }
      rows.push_back(std::move(row));
    }
    return AsymmetricHpt(m, n, strategies, std::move(rows));
  }

  int players(int population) const { return population == 0 ? first_players_ : second_players_; }
  int first_players() const { return first_players_; }
  int second_players() const { return second_players_; }
  int strategies() const { return strategies_; }
  int padding(int population) const { return padding_[static_cast<std::size_t>(population)]; }
  const std::vector<AsymmetricRow>& rows() const { return rows_; }
  std::size_t row_count() const { return rows_.size(); }

  const ValidationReport& report() const { return report_; }
  bool valid() const { return report_.ok(); }
  void require_valid() const;

  std::optional<std::size_t> find_row(const PairCountRow& counts) const;

 private:
  int first_players_;
  int second_players_;
  int strategies_;
  std::array<int, 2> padding_;
  std::vector<AsymmetricRow> rows_;
  ValidationReport report_;
};

ValidationReport validate_hpt(const SymmetricHpt& table);
ValidationReport validate_hpt(const AsymmetricHpt& table);

std::string format_counts(const CountRow& counts);

}  // namespace hptdyn
