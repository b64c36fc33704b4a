#include "hptdyn/dynamics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "hptdyn/combinatorics.hpp"
#include "hptdyn/errors.hpp"
#include "hptdyn/legacy.hpp"

namespace hptdyn {

std::vector<double> JointState::flat() const {
  std::vector<double> out(first.begin(), first.end());
  if (second) out.insert(out.end(), second->begin(), second->end());
  return out;
}

ReplicatorSystem::ReplicatorSystem(std::vector<int> strategies, FitnessFn fitness)
    : strategies_(std::move(strategies)), dimension_(0), fitness_(std::move(fitness)) {
  if (strategies_.empty() || strategies_.size() > 2) throw UnsupportedShapeError("replicator system needs 1 or 2 populations");
  for (int k : strategies_) {
    if (k < 1) throw DomainError("population needs at least one strategy");
    dimension_ += static_cast<std::size_t>(k);
  }
}

void ReplicatorSystem::velocity(std::span<const double> state, std::span<double> out) const {
  fitness_(state, out);
  for (int p = 0; p < populations(); ++p) {
    const std::size_t lo = offset(p);
    const std::size_t hi = lo + static_cast<std::size_t>(strategies(p));
    double mean = 0.0;
    for (std::size_t i = lo; i < hi; ++i) mean += state[i] * out[i];
    for (std::size_t i = lo; i < hi; ++i) out[i] = (out[i] - mean) * state[i];
  }
}

std::vector<double> ReplicatorSystem::velocity(std::span<const double> state) const {
  std::vector<double> out(dimension_);
  velocity(state, out);
  return out;
}

JointState ReplicatorSystem::unflatten(std::span<const double> state, double tolerance) const {
  auto slice = [&](int p) {
    auto lo = state.begin() + static_cast<std::ptrdiff_t>(offset(p));
    return StrategyProfile::normalized(std::vector<double>(lo, lo + strategies(p)), tolerance);
  };
  if (populations() == 1) return {slice(0), std::nullopt};
  return {slice(0), slice(1)};
}

std::vector<double> ReplicatorSystem::flatten(const JointState& state) const {
  if (static_cast<int>(state.populations()) != populations())
    throw DomainError("state has " + std::to_string(state.populations()) + " populations, system has " +
                      std::to_string(populations()));
  for (int p = 0; p < populations(); ++p)
    if (state.population(p).size() != static_cast<std::size_t>(strategies(p)))
      throw DomainError("population " + std::to_string(p + 1) + " profile has the wrong number of strategies");
  return state.flat();
}

ReplicatorSystem make_replicator_system(const SymmetricHpt& table, PayoffMethod method) {
  table.require_valid();
  auto shared = std::make_shared<const SymmetricHpt>(table);
  const int k = table.strategies();
  if (method == PayoffMethod::corrected)
    return ReplicatorSystem({k}, [shared](std::span<const double> s, std::span<double> f) { symmetric_fitness(*shared, s, f); });
  return ReplicatorSystem({k}, [shared](std::span<const double> s, std::span<double> f) { legacy_fitness(*shared, s, f); });
}

ReplicatorSystem make_replicator_system(const AsymmetricHpt& table, PayoffMethod method) {
  table.require_valid();
  const int k = table.strategies();
  const auto ku = static_cast<std::size_t>(k);
  if (method == PayoffMethod::corrected) {
    auto shared = std::make_shared<const AsymmetricHpt>(table);
    return ReplicatorSystem({k, k}, [shared, ku](std::span<const double> s, std::span<double> f) {
      asymmetric_fitness(*shared, s.first(ku), s.subspan(ku, ku), f.first(ku), f.subspan(ku, ku));
    });
  }
  if (table.first_players() != 1 || table.second_players() != 1)
    throw UnsupportedShapeError("the legacy method cannot analyse multiplayer asymmetric games (" +
                                std::to_string(table.first_players()) + " vs " +
                                std::to_string(table.second_players()) + "); only 1 vs 1 tables decompose");
  auto pair = std::make_shared<const DecomposedPair>(decompose_asymmetric(table));
  return ReplicatorSystem({k, k}, [pair, ku](std::span<const double> s, std::span<double> f) {
    // Each population's own table is evaluated at the opponent's profile.
    legacy_fitness(pair->first, s.subspan(ku, ku), f.first(ku));
    legacy_fitness(pair->second, s.first(ku), f.subspan(ku, ku));
  });
}

std::vector<double> rd_velocity_single(const StrategyProfile& x, const PayoffVector& fitness) {
  if (fitness.size() != x.size()) throw DomainError("fitness and profile sizes differ");
  double mean = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) mean += x[i] * fitness[i];
  std::vector<double> v(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) v[i] = (fitness[i] - mean) * x[i];
  return v;
}

std::pair<std::vector<double>, std::vector<double>> rd_velocity_two(const JointState& state, const PayoffVector& first,
                                                                    const PayoffVector& second) {
  if (!state.second) throw DomainError("two-population velocity needs a second profile");
  return {rd_velocity_single(state.first, first), rd_velocity_single(*state.second, second)};
}

// ---- integration ----

namespace {

void project_to_simplex(const ReplicatorSystem& system, std::vector<double>& s) {
  for (int p = 0; p < system.populations(); ++p) {
    const std::size_t lo = system.offset(p);
    const std::size_t hi = lo + static_cast<std::size_t>(system.strategies(p));
    double sum = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      s[i] = std::clamp(s[i], 0.0, 1.0);
      sum += s[i];
    }
    if (sum > 0.0)
      for (std::size_t i = lo; i < hi; ++i) s[i] /= sum;
  }
}

std::string describe_state(std::span<const double> s) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? ", " : "") << s[i];
  os << "]";
  return os.str();
}

}  // namespace

Trajectory integrate_trajectory(const ReplicatorSystem& system, const JointState& initial, double horizon,
                                double step) {
  if (!(step > 0.0 && step <= 0.1)) throw DomainError("integration step must lie in (0, 0.1]");
  if (!(horizon >= step) || !std::isfinite(horizon)) throw DomainError("horizon must be finite and at least one step");

  const std::size_t dim = system.dimension();
  std::vector<double> s = system.flatten(initial);
  const auto steps = static_cast<std::size_t>(std::ceil(horizon / step - 1e-9));

  Trajectory traj;
  traj.step = step;
  traj.samples.reserve(steps + 1);
  traj.samples.push_back({0.0, initial});

  std::vector<double> k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);
  for (std::size_t n = 1; n <= steps; ++n) {
    system.velocity(s, k1);
    for (std::size_t i = 0; i < dim; ++i) tmp[i] = s[i] + 0.5 * step * k1[i];
    system.velocity(tmp, k2);
    for (std::size_t i = 0; i < dim; ++i) tmp[i] = s[i] + 0.5 * step * k2[i];
    system.velocity(tmp, k3);
    for (std::size_t i = 0; i < dim; ++i) tmp[i] = s[i] + step * k3[i];
    system.velocity(tmp, k4);
    for (std::size_t i = 0; i < dim; ++i) s[i] += step / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);

    const double t = static_cast<double>(n) * step;
    for (double v : s)
      if (!std::isfinite(v))
        throw IntegrationError("non-finite state at t = " + std::to_string(t) + ": " + describe_state(s) +
                               " (check the payoff table for corrupt entries)");

    bool correct = false;
    for (int p = 0; p < system.populations(); ++p) {
      const std::size_t lo = system.offset(p);
      double sum = 0.0;
      for (std::size_t i = lo; i < lo + static_cast<std::size_t>(system.strategies(p)); ++i) {
        sum += s[i];
        if (s[i] < 0.0 || s[i] > 1.0) correct = true;
      }
      const double drift = std::abs(sum - 1.0);
      traj.max_simplex_drift = std::max(traj.max_simplex_drift, drift);
      if (drift > 1e-12) correct = true;
    }
    if (correct) project_to_simplex(system, s);
    traj.samples.push_back({t, system.unflatten(s, 1e-9)});
  }
  return traj;
}

// ---- direction field ----

DirectionField direction_field(const ReplicatorSystem& system, int resolution) {
  if (resolution < 2) throw DomainError("direction field resolution must be at least 2");
  const bool square = system.populations() == 2 && system.strategies(0) == 2 && system.strategies(1) == 2;
  const bool line = system.populations() == 1 && system.strategies(0) == 2;
  const bool triangle = system.populations() == 1 && system.strategies(0) == 3;
  if (!square && !line && !triangle)
    throw UnsupportedShapeError(
        "direction fields are available for two populations with 2 strategies each, or a single population "
        "with 2 or 3 strategies");

  DirectionField field;
  field.resolution = resolution;
  const double d = static_cast<double>(resolution - 1);
  auto add = [&](std::vector<double> s) {
    auto v = system.velocity(s);
    FieldPoint pt{system.unflatten(s), {}};
    for (int p = 0; p < system.populations(); ++p) {
      auto lo = v.begin() + static_cast<std::ptrdiff_t>(system.offset(p));
      pt.velocity.emplace_back(lo, lo + system.strategies(p));
    }
    field.points.push_back(std::move(pt));
  };
  if (square) {
    field.axes = {"x1", "y1"};
    for (int i = 0; i < resolution; ++i)
      for (int j = 0; j < resolution; ++j) {
        const double a = i / d, b = j / d;
        add({a, 1.0 - a, b, 1.0 - b});
      }
  } else if (line) {
    field.axes = {"x1"};
    for (int i = 0; i < resolution; ++i) add({i / d, 1.0 - i / d});
  } else {
    field.axes = {"x1", "x2", "x3"};
    for (const auto& c : enumerate_rows_symmetric(resolution - 1, 3)) add({c[0] / d, c[1] / d, c[2] / d});
  }
  return field;
}

// ---- equilibria ----

std::string to_string(Stability s) {
  switch (s) {
    case Stability::stable: return "stable";
    case Stability::unstable: return "unstable";
    case Stability::saddle: return "saddle";
    case Stability::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

namespace {

// Tangent coordinates: all but the last share of every population.
class TangentMap {
 public:
  explicit TangentMap(const ReplicatorSystem& system) : system_(system) {
    for (int p = 0; p < system.populations(); ++p) reduced_ += static_cast<std::size_t>(system.strategies(p) - 1);
  }

  std::size_t reduced() const { return reduced_; }

  Eigen::VectorXd to_tangent(std::span<const double> s) const {
    Eigen::VectorXd z(static_cast<Eigen::Index>(reduced_));
    Eigen::Index r = 0;
    for (int p = 0; p < system_.populations(); ++p)
      for (int i = 0; i + 1 < system_.strategies(p); ++i) z[r++] = s[system_.offset(p) + static_cast<std::size_t>(i)];
    return z;
  }

  std::vector<double> to_state(const Eigen::VectorXd& z) const {
    std::vector<double> s(system_.dimension());
    Eigen::Index r = 0;
    for (int p = 0; p < system_.populations(); ++p) {
      const std::size_t lo = system_.offset(p);
      const auto k = static_cast<std::size_t>(system_.strategies(p));
      double rest = 1.0;
      for (std::size_t i = 0; i + 1 < k; ++i) {
        s[lo + i] = z[r++];
        rest -= s[lo + i];
      }
      s[lo + k - 1] = rest;
    }
    return s;
  }

  Eigen::VectorXd field(const Eigen::VectorXd& z) const { return reduce(system_.velocity(to_state(z))); }

  Eigen::VectorXd reduce(const std::vector<double>& v) const { return to_tangent(v); }

  Eigen::MatrixXd jacobian(const Eigen::VectorXd& z, double h) const {
    const auto n = static_cast<Eigen::Index>(reduced_);
    Eigen::MatrixXd J(n, n);
    for (Eigen::Index c = 0; c < n; ++c) {
      Eigen::VectorXd up = z, down = z;
      up[c] += h;
      down[c] -= h;
      J.col(c) = (field(up) - field(down)) / (2.0 * h);
    }
    return J;
  }

 private:
  const ReplicatorSystem& system_;
  std::size_t reduced_ = 0;
};

double max_norm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

Equilibrium classify_point(const ReplicatorSystem& system, const JointState& state, const EquilibriumOptions& options) {
  const TangentMap map(system);
  const auto s = system.flatten(state);
  Equilibrium eq{state, max_norm(system.velocity(s)), Stability::inconclusive, {}};
  const Eigen::MatrixXd J = map.jacobian(map.to_tangent(s), options.jacobian_step);
  Eigen::EigenSolver<Eigen::MatrixXd> solver(J, false);
  bool any_negative = false, any_positive = false, any_flat = false;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const double re = solver.eigenvalues()[i].real();
    eq.eigenvalue_real_parts.push_back(re);
    if (re < -options.eigen_tolerance)
      any_negative = true;
    else if (re > options.eigen_tolerance)
      any_positive = true;
    else
      any_flat = true;
  }
  std::sort(eq.eigenvalue_real_parts.begin(), eq.eigenvalue_real_parts.end());
  if (any_negative && any_positive)
    eq.classification = Stability::saddle;
  else if (any_flat || solver.info() != Eigen::Success)
    eq.classification = Stability::inconclusive;
  else if (any_negative)
    eq.classification = Stability::stable;
  else if (any_positive)
    eq.classification = Stability::unstable;
  return eq;
}

std::vector<JointState> default_seeds(const ReplicatorSystem& system, int grid) {
  if (grid < 2) throw DomainError("seed grid needs at least 2 points per axis");
  std::vector<std::vector<std::vector<double>>> per_population;
  const double d = static_cast<double>(grid - 1);
  for (int p = 0; p < system.populations(); ++p) {
    std::vector<std::vector<double>> lattice;
    for (const auto& c : enumerate_rows_symmetric(grid - 1, system.strategies(p))) {
      std::vector<double> w;
      for (int v : c) w.push_back(v / d);
      lattice.push_back(std::move(w));
    }
    per_population.push_back(std::move(lattice));
  }
  std::vector<JointState> seeds;
  if (system.populations() == 1) {
    for (auto& w : per_population[0]) seeds.push_back({StrategyProfile::normalized(w, 1e-9), std::nullopt});
  } else {
    for (auto& a : per_population[0])
      for (auto& b : per_population[1])
        seeds.push_back({StrategyProfile::normalized(a, 1e-9), StrategyProfile::normalized(b, 1e-9)});
  }
  return seeds;
}

EquilibriumSearch find_equilibria(const ReplicatorSystem& system, const std::vector<JointState>& seeds,
                                  const EquilibriumOptions& options) {
  const TangentMap map(system);
  const auto starts = seeds.empty() ? default_seeds(system, options.grid) : seeds;

  EquilibriumSearch out;
  out.seeds = starts.size();
  std::vector<std::vector<double>> found;
  for (const auto& seed : starts) {
    std::vector<double> s = system.flatten(seed);
    double residual = max_norm(system.velocity(s));
    for (int it = 0; it < options.max_iterations && residual > 1e-15; ++it) {
      const Eigen::VectorXd z = map.to_tangent(s);
      const Eigen::VectorXd F = map.reduce(system.velocity(s));
      const Eigen::MatrixXd J = map.jacobian(z, options.jacobian_step);
      const Eigen::VectorXd dz = J.completeOrthogonalDecomposition().solve(-F);
      if (!dz.allFinite()) break;
      bool accepted = false;
      for (double t = 1.0; t > 1e-6; t *= 0.5) {
        auto trial = map.to_state(z + t * dz);
        project_to_simplex(system, trial);
        const double r = max_norm(system.velocity(trial));
        if (r < (1.0 - 1e-4 * t) * residual) {
          s = std::move(trial);
          residual = r;
          accepted = true;
          break;
        }
      }
      if (!accepted) break;
    }
    if (!(residual < options.stationarity_tolerance)) {
      ++out.dropped;
      continue;
    }
    ++out.converged;
    // Round-off left on a face after Newton steps; snap it so faces report exactly.
    {
      auto snapped = s;
      for (double& v : snapped)
        if (v < 1e-12) v = 0.0;
      project_to_simplex(system, snapped);
      if (max_norm(system.velocity(snapped)) < options.stationarity_tolerance) s = std::move(snapped);
    }
    const bool duplicate = std::any_of(found.begin(), found.end(), [&](const std::vector<double>& f) {
      double d = 0.0;
      for (std::size_t i = 0; i < f.size(); ++i) d = std::max(d, std::abs(f[i] - s[i]));
      return d < options.dedup_radius;
    });
    if (!duplicate) found.push_back(s);
  }

  std::sort(found.begin(), found.end());
  for (const auto& s : found) {
    auto eq = classify_point(system, system.unflatten(s, 1e-9), options);
    out.equilibria.push_back(std::move(eq));
  }
  return out;
}

}  // namespace hptdyn
