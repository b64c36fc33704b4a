#include "hptdyn/profile.hpp"

#include <cmath>
#include <string>

#include "hptdyn/errors.hpp"

namespace hptdyn {

namespace {

void check_simplex(const std::vector<double>& w, double tolerance) {
  if (w.empty()) throw DomainError("strategy profile must have at least one weight");
  double sum = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!std::isfinite(w[i]) || w[i] < -tolerance || w[i] > 1.0 + tolerance)
      throw DomainError("profile weight " + std::to_string(i) + " outside [0, 1]");
    sum += w[i];
  }
  if (std::abs(sum - 1.0) > tolerance)
    throw DomainError("profile weights sum to " + std::to_string(sum) + ", not 1");
}

}  // namespace

StrategyProfile::StrategyProfile(std::vector<double> weights) : weights_(std::move(weights)) {
  check_simplex(weights_, kSumTolerance);
  for (double w : weights_)
    if (w < 0.0 || w > 1.0) throw DomainError("profile weight outside [0, 1]");
}

StrategyProfile::StrategyProfile(std::initializer_list<double> weights)
    : StrategyProfile(std::vector<double>(weights)) {}

StrategyProfile StrategyProfile::normalized(std::vector<double> weights, double tolerance) {
  check_simplex(weights, tolerance);
  double sum = 0.0;
  for (double& w : weights) {
    if (w < 0.0) w = 0.0;
    sum += w;
  }
  if (sum != 1.0)
    for (double& w : weights) w /= sum;
  for (double& w : weights)
    if (w > 1.0) w = 1.0;
  return StrategyProfile(std::move(weights));
}

StrategyProfile StrategyProfile::vertex(std::size_t k, std::size_t i) {
  if (i >= k) throw DomainError("vertex index out of range");
  std::vector<double> w(k, 0.0);
  w[i] = 1.0;
  return StrategyProfile(std::move(w));
}

StrategyProfile StrategyProfile::uniform(std::size_t k) {
  if (k == 0) throw DomainError("uniform profile over zero strategies");
  return normalized(std::vector<double>(k, 1.0 / static_cast<double>(k)), 1e-9);
}

}  // namespace hptdyn
