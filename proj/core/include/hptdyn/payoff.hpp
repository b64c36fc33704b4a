#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "hptdyn/profile.hpp"
#include "hptdyn/table.hpp"

namespace hptdyn {

enum class Population { first = 0, second = 1 };

constexpr int index_of(Population p) { return p == Population::first ? 0 : 1; }

/// Expected payoff of each pure strategy against the current population
/// state, in game reward units.
class PayoffVector {
 public:
  PayoffVector() = default;
  explicit PayoffVector(std::vector<double> values);
  PayoffVector(std::initializer_list<double> values) : PayoffVector(std::vector<double>(values)) {}

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const { return values_; }
  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

 private:
  std::vector<double> values_;
};

struct AsymmetricPayoff {
  PayoffVector first;
  PayoffVector second;
};

/// P(N_j | x, i): probability that the focal player on strategy i, together
/// with n-1 co-players drawn from x, forms row j. Zero when row j has nobody
/// on i. The focal player's own factor is removed by lowering the exponent of
/// x_i, so the result is defined on the whole simplex.
double row_probability_symmetric(const SymmetricHpt& table, std::size_t row, const StrategyProfile& x, std::size_t i);

// f_i(x) = sum_j P(N_j | x, i) U_ji for every strategy i.
PayoffVector expected_payoff_symmetric(const SymmetricHpt& table, const StrategyProfile& x);

/// P^(p)(N_j | x, y, i) for a focal player of population p on strategy i; the
/// focal population's co-players follow its own profile and every player of
/// the other population is drawn from the other profile.
double row_probability_asymmetric(const AsymmetricHpt& table, std::size_t row, const StrategyProfile& x,
                                  const StrategyProfile& y, std::size_t i, Population p);

AsymmetricPayoff expected_payoff_asymmetric(const AsymmetricHpt& table, const StrategyProfile& x,
                                            const StrategyProfile& y);

// Unchecked kernels used by the dynamics. Inputs need not lie on the simplex
// (finite-difference Jacobians step slightly outside it); the table must be
// valid and the spans sized to table.strategies().
void symmetric_fitness(const SymmetricHpt& table, std::span<const double> x, std::span<double> out);
void asymmetric_fitness(const AsymmetricHpt& table, std::span<const double> x, std::span<const double> y,
                        std::span<double> first_out, std::span<double> second_out);

// Integer power by repeated multiplication; exact for small exponents and
// well-defined for negative bases.
inline double ipow(double base, int exponent) {
  double out = 1.0;
  for (int e = 0; e < exponent; ++e) out *= base;
  return out;
}

}  // namespace hptdyn
