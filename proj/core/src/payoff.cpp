#include "hptdyn/payoff.hpp"

#include <cmath>
#include <string>

#include "hptdyn/combinatorics.hpp"
#include "hptdyn/errors.hpp"

namespace hptdyn {

namespace {

// prod_l x_l^{N_l}, with the focal strategy's exponent lowered by one when
// `focal` is in range.
double monomial(std::span<const double> x, const CountRow& counts, std::size_t focal) {
  double out = 1.0;
  for (std::size_t l = 0; l < counts.size(); ++l) out *= ipow(x[l], l == focal ? counts[l] - 1 : counts[l]);
  return out;
}

constexpr std::size_t kNoFocal = static_cast<std::size_t>(-1);

void check_profile_size(const StrategyProfile& x, int k, const char* which) {
  if (x.size() != static_cast<std::size_t>(k))
    throw DomainError(std::string(which) + " has " + std::to_string(x.size()) + " weights, table has " +
                      std::to_string(k) + " strategies");
}

double symmetric_probability(const SymmetricHpt& table, const SymmetricRow& row, std::span<const double> x,
                             std::size_t i) {
  if (row.counts[i] == 0) return 0.0;
  const auto coeff = static_cast<double>(variant_combination(row.counts, i, table.players()));
  return coeff * monomial(x, row.counts, i);
}

double asymmetric_probability(const AsymmetricHpt& table, const AsymmetricRow& row, std::span<const double> x,
                              std::span<const double> y, std::size_t i, int p) {
  const CountRow& focal_counts = p == 0 ? row.counts.first : row.counts.second;
  const CountRow& other_counts = p == 0 ? row.counts.second : row.counts.first;
  if (focal_counts[i] == 0) return 0.0;
  const int focal_total = table.players(p);
  const int other_total = table.players(1 - p);
  const auto coeff = static_cast<double>(variant_combination(focal_counts, i, focal_total)) *
                     static_cast<double>(multinomial(other_counts, other_total));
  std::span<const double> focal_x = p == 0 ? x : y;
  std::span<const double> other_x = p == 0 ? y : x;
  return coeff * monomial(focal_x, focal_counts, i) * monomial(other_x, other_counts, kNoFocal);
}

}  // namespace

PayoffVector::PayoffVector(std::vector<double> values) : values_(std::move(values)) {
  for (double v : values_)
    if (!std::isfinite(v)) throw DomainError("payoff vector entries must be finite");
}

double row_probability_symmetric(const SymmetricHpt& table, std::size_t row, const StrategyProfile& x, std::size_t i) {
  table.require_valid();
  check_profile_size(x, table.strategies(), "profile");
  if (row >= table.row_count()) throw DomainError("row index out of range");
  if (i >= static_cast<std::size_t>(table.strategies())) throw DomainError("strategy index out of range");
  return symmetric_probability(table, table.rows()[row], x.weights(), i);
}

void symmetric_fitness(const SymmetricHpt& table, std::span<const double> x, std::span<double> out) {
  const auto k = static_cast<std::size_t>(table.strategies());
  for (std::size_t i = 0; i < k; ++i) {
    double f = 0.0;
    for (const auto& row : table.rows())
      if (row.counts[i] > 0) f += symmetric_probability(table, row, x, i) * row.payoffs[i];
    out[i] = f;
  }
}

PayoffVector expected_payoff_symmetric(const SymmetricHpt& table, const StrategyProfile& x) {
  table.require_valid();
  check_profile_size(x, table.strategies(), "profile");
  std::vector<double> f(static_cast<std::size_t>(table.strategies()));
  symmetric_fitness(table, x.weights(), f);
  return PayoffVector(std::move(f));
}

double row_probability_asymmetric(const AsymmetricHpt& table, std::size_t row, const StrategyProfile& x,
                                  const StrategyProfile& y, std::size_t i, Population p) {
  table.require_valid();
  check_profile_size(x, table.strategies(), "first profile");
  check_profile_size(y, table.strategies(), "second profile");
  if (row >= table.row_count()) throw DomainError("row index out of range");
  if (i >= static_cast<std::size_t>(table.strategies())) throw DomainError("strategy index out of range");
  return asymmetric_probability(table, table.rows()[row], x.weights(), y.weights(), i, index_of(p));
}

void asymmetric_fitness(const AsymmetricHpt& table, std::span<const double> x, std::span<const double> y,
                        std::span<double> first_out, std::span<double> second_out) {
  const auto k = static_cast<std::size_t>(table.strategies());
  for (int p = 0; p < 2; ++p) {
    std::span<double> out = p == 0 ? first_out : second_out;
    for (std::size_t i = 0; i < k; ++i) {
      double f = 0.0;
      for (const auto& row : table.rows()) {
        const CountRow& own = p == 0 ? row.counts.first : row.counts.second;
        if (own[i] > 0) f += asymmetric_probability(table, row, x, y, i, p) * row.payoffs[static_cast<std::size_t>(p)][i];
      }
      out[i] = f;
    }
  }
}

AsymmetricPayoff expected_payoff_asymmetric(const AsymmetricHpt& table, const StrategyProfile& x,
                                            const StrategyProfile& y) {
  table.require_valid();
  check_profile_size(x, table.strategies(), "first profile");
  check_profile_size(y, table.strategies(), "second profile");
  const auto k = static_cast<std::size_t>(table.strategies());
  std::vector<double> f1(k), f2(k);
  asymmetric_fitness(table, x.weights(), y.weights(), f1, f2);
  return {PayoffVector(std::move(f1)), PayoffVector(std::move(f2))};
}

}  // namespace hptdyn
