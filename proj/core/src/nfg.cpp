#include "hptdyn/nfg.hpp"

#include <cmath>
#include <map>
#include <sstream>

namespace hptdyn {

namespace {

constexpr std::size_t kOracleLimit = 10'000'000;

bool same_payoff(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::max(std::abs(a), std::abs(b))); }

std::string join(const std::vector<int>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i] + 1);
  return out + ")";
}

// Odometer over assignments of `players` players to `k` strategies.
bool advance(std::vector<int>& a, int k) {
  for (std::size_t q = a.size(); q-- > 0;) {
    if (++a[q] < k) return true;
    a[q] = 0;
  }
  return false;
}

std::size_t checked_power(int base, int exponent) {
  std::size_t out = 1;
  for (int e = 0; e < exponent; ++e) {
    out *= static_cast<std::size_t>(base);
    if (out > kOracleLimit) throw CapacityError("brute-force enumeration exceeds 10^7 assignments");
  }
  return out;
}

}  // namespace

NormalFormGame::NormalFormGame(std::vector<int> strategy_counts, std::vector<std::vector<double>> payoffs)
    : strategy_counts_(std::move(strategy_counts)), payoffs_(std::move(payoffs)) {
  if (strategy_counts_.empty()) throw DomainError("game needs at least one player");
  std::size_t total = 1;
  for (int k : strategy_counts_) {
    if (k < 1) throw DomainError("every player needs at least one strategy");
    total *= static_cast<std::size_t>(k);
    if (total > kOracleLimit) throw CapacityError("payoff tensor exceeds 10^7 entries");
  }
  if (payoffs_.size() != total)
    throw DomainError("payoff tensor has " + std::to_string(payoffs_.size()) + " entries, expected " +
                      std::to_string(total));
  for (const auto& r : payoffs_) {
    if (r.size() != strategy_counts_.size()) throw DomainError("every tensor entry needs one reward per player");
    for (double v : r)
      if (!std::isfinite(v)) throw DomainError("payoff tensor contains a non-finite reward");
  }
}

NormalFormGame NormalFormGame::bimatrix(const std::vector<std::vector<double>>& a,
                                        const std::vector<std::vector<double>>& b) {
  if (a.empty() || a.size() != b.size()) throw DomainError("bimatrix shapes differ");
  const std::size_t cols = a[0].size();
  std::vector<std::vector<double>> payoffs;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != cols || b[i].size() != cols) throw DomainError("bimatrix rows have different lengths");
    for (std::size_t j = 0; j < cols; ++j) payoffs.push_back({a[i][j], b[i][j]});
  }
  return NormalFormGame({static_cast<int>(a.size()), static_cast<int>(cols)}, std::move(payoffs));
}

NormalFormGame NormalFormGame::symmetric_matrix(const std::vector<std::vector<double>>& a) {
  std::vector<std::vector<double>> at(a.size(), std::vector<double>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != a.size()) throw DomainError("symmetric game matrix must be square");
    for (std::size_t j = 0; j < a.size(); ++j) at[i][j] = a[j][i];
  }
  return bimatrix(a, at);
}

std::size_t NormalFormGame::flat_index(std::span<const int> assignment) const {
  if (assignment.size() != strategy_counts_.size()) throw DomainError("assignment length differs from player count");
  std::size_t idx = 0;
  for (std::size_t q = 0; q < assignment.size(); ++q) {
    if (assignment[q] < 0 || assignment[q] >= strategy_counts_[q]) throw DomainError("strategy index out of range");
    idx = idx * static_cast<std::size_t>(strategy_counts_[q]) + static_cast<std::size_t>(assignment[q]);
  }
  return idx;
}

std::vector<int> NormalFormGame::assignment(std::size_t flat_index) const {
  std::vector<int> a(strategy_counts_.size());
  for (std::size_t q = a.size(); q-- > 0;) {
    a[q] = static_cast<int>(flat_index % static_cast<std::size_t>(strategy_counts_[q]));
    flat_index /= static_cast<std::size_t>(strategy_counts_[q]);
  }
  return a;
}

double NormalFormGame::reward(std::span<const int> assignment, int player) const {
  return payoffs_[flat_index(assignment)][static_cast<std::size_t>(player)];
}

std::string SymmetryWitness::describe() const {
  std::ostringstream os;
  os << "player " << player_a + 1 << " under assignment " << join(assignment_a) << " receives " << payoff_a
     << " but interchangeable player " << player_b + 1 << " under assignment " << join(assignment_b) << " receives "
     << payoff_b;
  return os.str();
}

SymmetryViolation::SymmetryViolation(SymmetryWitness witness)
    : DomainError("game is not symmetric: " + witness.describe()), witness_(std::move(witness)) {}

namespace {

// Key of an interchangeability class: (population, own strategy, counts of population 1, counts of population 2).
struct CellKey {
  int population;
  int strategy;
  CountRow first;
  CountRow second;
  auto operator<=>(const CellKey&) const = default;
};

struct CellValue {
  double sum = 0.0;
  std::size_t samples = 0;
  std::vector<int> assignment;
  int player = 0;
  double payoff = 0.0;
};

// Groups every (assignment, player) by its interchangeability class and
// checks that each class carries a single payoff.
std::map<CellKey, CellValue> collect_cells(const NormalFormGame& game, int m, int k) {
  std::map<CellKey, CellValue> cells;
  const auto ku = static_cast<std::size_t>(k);
  for (std::size_t idx = 0; idx < game.assignment_count(); ++idx) {
    const auto a = game.assignment(idx);
    CountRow first(ku, 0), second(ku, 0);
    for (int q = 0; q < game.players(); ++q) ++(q < m ? first : second)[static_cast<std::size_t>(a[static_cast<std::size_t>(q)])];
    for (int q = 0; q < game.players(); ++q) {
      const double u = game.rewards(idx)[static_cast<std::size_t>(q)];
      CellKey key{q < m ? 0 : 1, a[static_cast<std::size_t>(q)], first, second};
      auto [it, fresh] = cells.try_emplace(std::move(key));
      auto& cell = it->second;
      if (fresh) {
        cell.assignment = a;
        cell.player = q;
        cell.payoff = u;
      } else if (!same_payoff(cell.payoff, u)) {
        throw SymmetryViolation({cell.assignment, cell.player, a, q, cell.payoff, u});
      }
      cell.sum += u;
      ++cell.samples;
    }
  }
  return cells;
}

}  // namespace

SymmetricHpt nfg_to_hpt_symmetric(const NormalFormGame& game) {
  const int n = game.players();
  const int k = game.strategy_counts()[0];
  for (int kq : game.strategy_counts())
    if (kq != k) throw DomainError("symmetric games need the same strategy set for every player");
  const auto cells = collect_cells(game, n, k);
  return SymmetricHpt::from_function(n, k, [&](const CountRow& counts, int i) {
    const auto& c = cells.at(CellKey{0, i, counts, CountRow(static_cast<std::size_t>(k), 0)});
    return c.sum / static_cast<double>(c.samples);
  });
}

AsymmetricHpt nfg_to_hpt_asymmetric(const NormalFormGame& game, int m, int n) {
  if (m < 1 || n < 1 || m + n != game.players())
    throw DomainError("population split " + std::to_string(m) + "," + std::to_string(n) + " does not match " +
                      std::to_string(game.players()) + " players");
  const auto& ks = game.strategy_counts();
  std::array<int, 2> real{ks[0], ks[static_cast<std::size_t>(m)]};
  for (int q = 0; q < game.players(); ++q)
    if (ks[static_cast<std::size_t>(q)] != real[q < m ? 0 : 1])
      throw DomainError("players of one population must share a strategy set");
  const int k = std::max(real[0], real[1]);
  const auto cells = collect_cells(game, m, k);
  std::vector<AsymmetricRow> rows;
  for (auto& counts : enumerate_rows_asymmetric(m, n, k)) {
    AsymmetricRow row{std::move(counts), {std::vector<double>(static_cast<std::size_t>(k), 0.0),
                                          std::vector<double>(static_cast<std::size_t>(k), 0.0)}};
    for (int p = 0; p < 2; ++p) {
      const CountRow& own = p == 0 ? row.counts.first : row.counts.second;
      for (int i = 0; i < k; ++i) {
        if (own[static_cast<std::size_t>(i)] == 0) continue;
        auto it = cells.find(CellKey{p, i, row.counts.first, row.counts.second});
        if (it != cells.end()) row.payoffs[static_cast<std::size_t>(p)][static_cast<std::size_t>(i)] = it->second.sum / static_cast<double>(it->second.samples);
      }
    }
    rows.push_back(std::move(row));
  }
  return AsymmetricHpt(m, n, k, std::move(rows), {k - real[0], k - real[1]});
}

double brute_force_expected_payoff(const SymmetricHpt& table, const StrategyProfile& x, std::size_t i) {
  table.require_valid();
  const int k = table.strategies();
  if (x.size() != static_cast<std::size_t>(k) || i >= x.size()) throw DomainError("profile or strategy out of range");
  checked_power(k, table.players() - 1);

  std::map<CountRow, std::size_t> index;
  for (std::size_t j = 0; j < table.row_count(); ++j) index.emplace(table.rows()[j].counts, j);

  double total = 0.0;
  std::vector<int> co(static_cast<std::size_t>(table.players() - 1), 0);
  do {
    double prob = 1.0;
    CountRow counts(static_cast<std::size_t>(k), 0);
    ++counts[i];
    for (int s : co) {
      prob *= x[static_cast<std::size_t>(s)];
      ++counts[static_cast<std::size_t>(s)];
    }
    total += prob * table.rows()[index.at(counts)].payoffs[i];
  } while (advance(co, k));
  return total;
}

double brute_force_expected_payoff(const AsymmetricHpt& table, const StrategyProfile& x, const StrategyProfile& y,
                                   std::size_t i, Population p) {
  table.require_valid();
  const int k = table.strategies();
  const auto ku = static_cast<std::size_t>(k);
  if (x.size() != ku || y.size() != ku || i >= ku) throw DomainError("profile or strategy out of range");
  const int focal = index_of(p);
  const int own_co = table.players(focal) - 1;
  const int other = table.players(1 - focal);
  checked_power(k, own_co + other);

  std::map<PairCountRow, std::size_t> index;
  for (std::size_t j = 0; j < table.row_count(); ++j) index.emplace(table.rows()[j].counts, j);

  const StrategyProfile& own_profile = focal == 0 ? x : y;
  const StrategyProfile& other_profile = focal == 0 ? y : x;
  double total = 0.0;
  // First own_co entries: focal population co-players; remaining: the other population.
  std::vector<int> co(static_cast<std::size_t>(own_co + other), 0);
  do {
    double prob = 1.0;
    CountRow own(ku, 0), opp(ku, 0);
    ++own[i];
    for (std::size_t q = 0; q < co.size(); ++q) {
      const auto s = static_cast<std::size_t>(co[q]);
      if (q < static_cast<std::size_t>(own_co)) {
        prob *= own_profile[s];
        ++own[s];
      } else {
        prob *= other_profile[s];
        ++opp[s];
      }
    }
    const PairCountRow key = focal == 0 ? PairCountRow{own, opp} : PairCountRow{opp, own};
    total += prob * table.rows()[index.at(key)].payoffs[static_cast<std::size_t>(focal)][i];
  } while (advance(co, k));
  return total;
}

double tensor_expected_payoff(const NormalFormGame& game, int player, int strategy,
                              std::span<const StrategyProfile> mixed) {
  if (mixed.size() != static_cast<std::size_t>(game.players())) throw DomainError("need one mixed strategy per player");
  double total = 0.0;
  for (std::size_t idx = 0; idx < game.assignment_count(); ++idx) {
    const auto a = game.assignment(idx);
    if (a[static_cast<std::size_t>(player)] != strategy) continue;
    double prob = 1.0;
    for (int q = 0; q < game.players(); ++q)
      if (q != player) prob *= mixed[static_cast<std::size_t>(q)][static_cast<std::size_t>(a[static_cast<std::size_t>(q)])];
    total += prob * game.rewards(idx)[static_cast<std::size_t>(player)];
  }
  return total;
}

}  // namespace hptdyn
