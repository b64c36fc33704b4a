#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace hptdyn {

// Player counts per strategy; one row of the N matrix of a payoff table.
using CountRow = std::vector<int>;

// Binomial coefficient C(n, r); CapacityError if it does not fit in 64 bits.
std::uint64_t binomial(int n, int r);

// total! / (c_1! ... c_k!). Throws DomainError if counts are negative or do
// not sum to total, CapacityError on 64-bit overflow.
std::uint64_t multinomial(std::span<const int> counts, int total);

// (total-1)! / (c_1! ... (c_i - 1)! ... c_k!): the number of ways to arrange
// the co-players of a focal player on strategy i. Requires counts[i] >= 1.
std::uint64_t variant_combination(std::span<const int> counts, std::size_t i, int total);

// Number of compositions of n into k non-negative parts, C(n+k-1, k-1).
std::uint64_t composition_count(int n, int k);

/// All compositions of n players over k strategies in reverse-lexicographic
/// order, from (n,0,...,0) down to (0,...,0,n).
std::vector<CountRow> enumerate_rows_symmetric(int n, int k);

// Pair-count row of a two-population table: counts[0] for the first
// population, counts[1] for the second, each of length k.
struct PairCountRow {
  CountRow first;
  CountRow second;

  friend bool operator==(const PairCountRow&, const PairCountRow&) = default;
  friend auto operator<=>(const PairCountRow&, const PairCountRow&) = default;
};

/// Cartesian product of the first population's compositions (outer loop) and
/// the second population's (inner loop), both reverse-lexicographic.
std::vector<PairCountRow> enumerate_rows_asymmetric(int m, int n, int k);

}  // namespace hptdyn
