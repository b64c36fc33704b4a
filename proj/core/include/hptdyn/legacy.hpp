#pragma once

// Earlier heuristic-payoff-table formulas, kept only so their error against
// the corrected expected payoffs can be measured. They weight rows by the
// unconditional probability of the whole composition and renormalize by the
// chance that at least one of the n players uses strategy i.

#include <span>
#include <vector>

#include "hptdyn/payoff.hpp"
#include "hptdyn/profile.hpp"
#include "hptdyn/table.hpp"

namespace hptdyn {

struct LegacyPayoff {
  PayoffVector fitness;
  // degenerate[i] is set when 1 - (1 - x_i)^n == 0; fitness[i] is then 0.
  std::vector<bool> degenerate;

  bool any_degenerate() const;
};

// P(N_j | x) = multinomial(N_j) prod_l x_l^{N_jl}
// f_i(x) = sum_j P(N_j | x) U_ji / (1 - (1 - x_i)^n)
LegacyPayoff legacy_expected_payoff(const SymmetricHpt& table, const StrategyProfile& x);

// Unchecked kernel; returns true if some component hit a zero denominator.
bool legacy_fitness(const SymmetricHpt& table, std::span<const double> x, std::span<double> out);

/// The two symmetric 2-player tables the earlier method derives from a 1v1
/// asymmetric table: one per population, each carrying that population's
/// payoffs. A row where the populations play a and b maps to the composition
/// e_a + e_b.
struct DecomposedPair {
  SymmetricHpt first;
  SymmetricHpt second;
};

// Throws UnsupportedShapeError unless both populations have one player.
DecomposedPair decompose_asymmetric(const AsymmetricHpt& table);

struct ComparisonEntry {
  std::vector<StrategyProfile> profiles;  // x, or (x, y)
  std::vector<PayoffVector> corrected;    // one vector per population
  std::vector<PayoffVector> legacy;
  std::vector<std::vector<double>> abs_error;
  bool degenerate = false;
};

std::vector<ComparisonEntry> legacy_error_report(const SymmetricHpt& table, std::span<const StrategyProfile> profiles);

// Each element of `profiles` is an (x, y) pair. 1v1 tables only.
std::vector<ComparisonEntry> legacy_error_report(const AsymmetricHpt& table,
                                                 std::span<const std::pair<StrategyProfile, StrategyProfile>> profiles);

}  // namespace hptdyn
