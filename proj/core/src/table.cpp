#include "hptdyn/table.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "hptdyn/errors.hpp"

namespace hptdyn {

namespace {

bool counts_well_formed(const CountRow& counts, int k, int players) {
  if (counts.size() != static_cast<std::size_t>(k)) return false;
  long long sum = 0;
  for (int c : counts) {
    if (c < 0) return false;
    sum += c;
  }
  return sum == players;
}

void check_counts(ValidationReport& report, std::size_t j, const CountRow& counts, int k, int players,
                  const std::string& who) {
  if (counts.size() != static_cast<std::size_t>(k)) {
    report.violations.push_back({j, "shape",
                                 "row " + std::to_string(j) + ": " + who + "counts have " +
                                     std::to_string(counts.size()) + " entries, expected " + std::to_string(k)});
    return;
  }
  long long sum = 0;
  for (int c : counts) {
    if (c < 0)
      report.violations.push_back({j, "negative-count", "row " + std::to_string(j) + ": negative " + who + "count"});
    sum += c;
  }
  if (sum != players)
    report.violations.push_back({j, "count-sum",
                                 "row " + std::to_string(j) + ": " + who + "counts sum to " + std::to_string(sum) +
                                     ", expected " + std::to_string(players)});
}

void check_payoffs(ValidationReport& report, std::size_t j, const CountRow& counts, const std::vector<double>& u, int k,
                   const std::string& who) {
  if (u.size() != static_cast<std::size_t>(k)) {
    report.violations.push_back({j, "shape",
                                 "row " + std::to_string(j) + ": " + who + "payoffs have " + std::to_string(u.size()) +
                                     " entries, expected " + std::to_string(k)});
    return;
  }
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!std::isfinite(u[i]))
      report.violations.push_back({j, "non-finite",
                                   "row " + std::to_string(j) + ": " + who + "payoff " + std::to_string(i + 1) +
                                       " is not finite"});
    else if (i < counts.size() && counts[i] == 0 && u[i] != 0.0)
      report.violations.push_back({j, "zero-support",
                                   "row " + std::to_string(j) + ": " + who + "payoff for strategy " +
                                       std::to_string(i + 1) + " is non-zero but no player uses it"});
  }
}

template <typename Key>
void check_completeness(ValidationReport& report, const std::vector<Key>& present_rows, std::vector<Key> expected,
                        const std::function<std::string(const Key&)>& describe) {
  std::map<Key, std::size_t> seen;
  for (std::size_t j = 0; j < present_rows.size(); ++j) {
    auto [it, fresh] = seen.emplace(present_rows[j], j);
    if (!fresh)
      report.violations.push_back({j, "duplicate-row",
                                   "row " + std::to_string(j) + ": duplicate composition " + describe(present_rows[j]) +
                                       " (first seen at row " + std::to_string(it->second) + ")"});
  }
  for (const auto& key : expected)
    if (!seen.contains(key))
      report.violations.push_back({std::nullopt, "missing-composition", "missing composition " + describe(key)});
}

}  // namespace

std::string format_counts(const CountRow& counts) {
  std::string out = "(";
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(counts[i]);
  }
  return out + ")";
}

std::string ValidationReport::to_string() const {
  std::ostringstream os;
  if (violations.empty()) os << "valid\n";
  for (const auto& v : violations) os << v.kind << ": " << v.message << "\n";
  for (const auto& n : notes) os << "note: " << n << "\n";
  return os.str();
}

// ---- symmetric ----

SymmetricHpt::SymmetricHpt(int players, int strategies, std::vector<SymmetricRow> rows)
    : players_(players), strategies_(strategies), rows_(std::move(rows)) {
  report_ = validate_hpt(*this);
}

void SymmetricHpt::require_valid() const {
  if (!valid()) throw InvalidTableError("invalid symmetric payoff table:\n" + report_.to_string());
}

std::optional<std::size_t> SymmetricHpt::find_row(const CountRow& counts) const {
  for (std::size_t j = 0; j < rows_.size(); ++j)
    if (rows_[j].counts == counts) return j;
  return std::nullopt;
}

ValidationReport validate_hpt(const SymmetricHpt& table) {
  ValidationReport report;
  const int n = table.players();
  const int k = table.strategies();
  if (n < 2) report.violations.push_back({std::nullopt, "shape", "symmetric table needs at least 2 players"});
  if (k < 2) report.violations.push_back({std::nullopt, "shape", "table needs at least 2 strategies"});
  if (!report.ok()) return report;

  std::vector<CountRow> keys;
  for (std::size_t j = 0; j < table.rows().size(); ++j) {
    const auto& row = table.rows()[j];
    check_counts(report, j, row.counts, k, n, "");
    check_payoffs(report, j, row.counts, row.payoffs, k, "");
    if (counts_well_formed(row.counts, k, n)) keys.push_back(row.counts);
  }
  const std::uint64_t expected = composition_count(n, k);
  if (table.rows().size() != expected)
    report.violations.push_back({std::nullopt, "row-count",
                                 "table has " + std::to_string(table.rows().size()) + " rows, expected " +
                                     std::to_string(expected)});
  check_completeness<CountRow>(report, keys, enumerate_rows_symmetric(n, k),
                               [](const CountRow& c) { return format_counts(c); });
  return report;
}

// ---- asymmetric ----

AsymmetricHpt::AsymmetricHpt(int first_players, int second_players, int strategies, std::vector<AsymmetricRow> rows,
                             std::array<int, 2> padding)
    : first_players_(first_players),
      second_players_(second_players),
      strategies_(strategies),
      padding_(padding),
      rows_(std::move(rows)) {
  report_ = validate_hpt(*this);
}

void AsymmetricHpt::require_valid() const {
  if (!valid()) throw InvalidTableError("invalid asymmetric payoff table:\n" + report_.to_string());
}

std::optional<std::size_t> AsymmetricHpt::find_row(const PairCountRow& counts) const {
  for (std::size_t j = 0; j < rows_.size(); ++j)
    if (rows_[j].counts == counts) return j;
  return std::nullopt;
}

namespace {

std::string format_pairs(const PairCountRow& r) {
  std::string out = "(";
  for (std::size_t l = 0; l < r.first.size(); ++l) {
    if (l) out += ",";
    out += "(" + std::to_string(r.first[l]) + "," + std::to_string(l < r.second.size() ? r.second[l] : 0) + ")";
  }
  return out + ")";
}

}  // namespace

ValidationReport validate_hpt(const AsymmetricHpt& table) {
  ValidationReport report;
  const int m = table.first_players();
  const int n = table.second_players();
  const int k = table.strategies();
  if (m < 1 || n < 1) report.violations.push_back({std::nullopt, "shape", "each population needs at least 1 player"});
  if (k < 2) report.violations.push_back({std::nullopt, "shape", "table needs at least 2 strategies"});
  for (int p = 0; p < 2; ++p)
    if (table.padding(p) < 0 || table.padding(p) >= k)
      report.violations.push_back({std::nullopt, "shape", "population " + std::to_string(p + 1) +
                                                              " has an invalid number of padded strategies"});
  if (!report.ok()) return report;

  std::vector<PairCountRow> keys;
  for (std::size_t j = 0; j < table.rows().size(); ++j) {
    const auto& row = table.rows()[j];
    check_counts(report, j, row.counts.first, k, m, "population 1 ");
    check_counts(report, j, row.counts.second, k, n, "population 2 ");
    check_payoffs(report, j, row.counts.first, row.payoffs[0], k, "population 1 ");
    check_payoffs(report, j, row.counts.second, row.payoffs[1], k, "population 2 ");
    if (counts_well_formed(row.counts.first, k, m) && counts_well_formed(row.counts.second, k, n))
      keys.push_back(row.counts);
  }
  const std::uint64_t expected = composition_count(m, k) * composition_count(n, k);
  if (table.rows().size() != expected)
    report.violations.push_back({std::nullopt, "row-count",
                                 "table has " + std::to_string(table.rows().size()) + " rows, expected " +
                                     std::to_string(expected)});
  check_completeness<PairCountRow>(report, keys, enumerate_rows_asymmetric(m, n, k), format_pairs);

  for (int p = 0; p < 2; ++p)
    for (int s = k - table.padding(p); s < k; ++s)
      report.notes.push_back("population " + std::to_string(p + 1) + " strategy " + std::to_string(s + 1) +
                             " is padding (never played, payoff 0)");
  return report;
}

}  // namespace hptdyn
