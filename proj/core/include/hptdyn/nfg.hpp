#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hptdyn/errors.hpp"
#include "hptdyn/payoff.hpp"
#include "hptdyn/profile.hpp"
#include "hptdyn/table.hpp"

namespace hptdyn {

/// Normal-form game with a complete payoff tensor. Joint assignments are
/// indexed in mixed radix with the last player varying fastest.
class NormalFormGame {
 public:
  // payoffs[a][p]: reward of player p under the joint assignment with flat index a.
  NormalFormGame(std::vector<int> strategy_counts, std::vector<std::vector<double>> payoffs);

  // Two players: player 1 receives A[i][j], player 2 receives B[i][j].
  static NormalFormGame bimatrix(const std::vector<std::vector<double>>& a, const std::vector<std::vector<double>>& b);
  // Two-player symmetric game with row-player matrix A (so B = A^T).
  static NormalFormGame symmetric_matrix(const std::vector<std::vector<double>>& a);

  int players() const { return static_cast<int>(strategy_counts_.size()); }
  const std::vector<int>& strategy_counts() const { return strategy_counts_; }
  std::size_t assignment_count() const { return payoffs_.size(); }

  std::size_t flat_index(std::span<const int> assignment) const;
  std::vector<int> assignment(std::size_t flat_index) const;
  const std::vector<double>& rewards(std::size_t flat_index) const { return payoffs_[flat_index]; }
  double reward(std::span<const int> assignment, int player) const;

 private:
  std::vector<int> strategy_counts_;
  std::vector<std::vector<double>> payoffs_;
};

/// Two (assignment, player) pairs that should be interchangeable but receive
/// different payoffs.
struct SymmetryWitness {
  std::vector<int> assignment_a;
  int player_a = 0;
  std::vector<int> assignment_b;
  int player_b = 0;
  double payoff_a = 0.0;
  double payoff_b = 0.0;

  std::string describe() const;
};

class SymmetryViolation : public DomainError {
 public:
  explicit SymmetryViolation(SymmetryWitness witness);
  const SymmetryWitness& witness() const { return witness_; }

 private:
  SymmetryWitness witness_;
};

/// Compress a symmetric game into its heuristic payoff table. Every pair of
/// assignments with the same strategy counts is compared exactly, which
/// covers all player permutations. Throws SymmetryViolation with a witness.
SymmetricHpt nfg_to_hpt_symmetric(const NormalFormGame& game);

/// Players 0..m-1 form the first population and m..m+n-1 the second. Players
/// must be interchangeable within their population; strategy sets of
/// different size are padded with never-played strategies.
AsymmetricHpt nfg_to_hpt_asymmetric(const NormalFormGame& game, int m, int n);

// Independent oracle: enumerates every pure assignment of the focal player's
// co-players, weights it by the product of draw probabilities and looks up the
// resulting row by counting. No combinatorial coefficients are involved.
// Throws CapacityError beyond 10^7 assignments.
double brute_force_expected_payoff(const SymmetricHpt& table, const StrategyProfile& x, std::size_t i);
double brute_force_expected_payoff(const AsymmetricHpt& table, const StrategyProfile& x, const StrategyProfile& y,
                                   std::size_t i, Population p);

// Direct tensor contraction: expected reward of `player` on pure `strategy`
// when every other player q draws from mixed[q].
double tensor_expected_payoff(const NormalFormGame& game, int player, int strategy,
                              std::span<const StrategyProfile> mixed);

}  // namespace hptdyn
