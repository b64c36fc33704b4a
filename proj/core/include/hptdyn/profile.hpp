#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace hptdyn {

/// A point on the probability simplex over k strategies (a mixed strategy or
/// population share vector).
class StrategyProfile {
 public:
  static constexpr double kSumTolerance = 1e-12;

  // Throws DomainError unless every weight is in [0,1] and the weights sum to
  // 1 within kSumTolerance.
  explicit StrategyProfile(std::vector<double> weights);
  StrategyProfile(std::initializer_list<double> weights);

  // Accepts weights within `tolerance` of the simplex, clips negatives that
  // are within tolerance and renormalizes. Used for user input and for
  // states leaving an integrator.
  static StrategyProfile normalized(std::vector<double> weights, double tolerance);

  // The pure profile e_i.
  static StrategyProfile vertex(std::size_t k, std::size_t i);
  static StrategyProfile uniform(std::size_t k);

  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }
  std::span<const double> weights() const { return weights_; }
  auto begin() const { return weights_.begin(); }
  auto end() const { return weights_.end(); }

  friend bool operator==(const StrategyProfile&, const StrategyProfile&) = default;

 private:
  std::vector<double> weights_;
};

}  // namespace hptdyn
