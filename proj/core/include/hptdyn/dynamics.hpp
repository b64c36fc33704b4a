#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hptdyn/payoff.hpp"
#include "hptdyn/profile.hpp"
#include "hptdyn/table.hpp"

namespace hptdyn {

enum class PayoffMethod { corrected, legacy };

/// Population state of the dynamics: x alone for a single population, (x, y)
/// for two.
struct JointState {
  StrategyProfile first;
  std::optional<StrategyProfile> second;

  std::size_t populations() const { return second ? 2 : 1; }
  const StrategyProfile& population(int p) const { return p == 0 ? first : *second; }
  // x followed by y.
  std::vector<double> flat() const;
};

/// Replicator dynamics over one or two populations driven by an arbitrary
/// fitness function of the flattened state. Fitness is written in the same
/// flat layout as the state.
class ReplicatorSystem {
 public:
  using FitnessFn = std::function<void(std::span<const double> state, std::span<double> fitness)>;

  ReplicatorSystem(std::vector<int> strategies, FitnessFn fitness);

  int populations() const { return static_cast<int>(strategies_.size()); }
  int strategies(int population) const { return strategies_[static_cast<std::size_t>(population)]; }
  std::size_t dimension() const { return dimension_; }
  std::size_t offset(int population) const { return population == 0 ? 0 : static_cast<std::size_t>(strategies_[0]); }

  void fitness(std::span<const double> state, std::span<double> out) const { fitness_(state, out); }
  // dx_i/dt = (f_i - x . f) x_i, per population.
  void velocity(std::span<const double> state, std::span<double> out) const;
  std::vector<double> velocity(std::span<const double> state) const;

  JointState unflatten(std::span<const double> state, double tolerance = 1e-9) const;
  std::vector<double> flatten(const JointState& state) const;

 private:
  std::vector<int> strategies_;
  std::size_t dimension_;
  FitnessFn fitness_;
};

ReplicatorSystem make_replicator_system(const SymmetricHpt& table, PayoffMethod method = PayoffMethod::corrected);
// The legacy method exists only for 1 vs 1 tables (via decomposition).
ReplicatorSystem make_replicator_system(const AsymmetricHpt& table, PayoffMethod method = PayoffMethod::corrected);

// v_i = (f_i - sum_l x_l f_l) x_i
std::vector<double> rd_velocity_single(const StrategyProfile& x, const PayoffVector& fitness);
std::pair<std::vector<double>, std::vector<double>> rd_velocity_two(const JointState& state, const PayoffVector& first,
                                                                    const PayoffVector& second);

struct TrajectorySample {
  double time;
  JointState state;
};

struct Trajectory {
  double step = 0.0;
  std::vector<TrajectorySample> samples;
  // Largest |sum x - 1| seen after a raw integration step, before correction.
  double max_simplex_drift = 0.0;
};

/// Classical fixed-step RK4 from `initial` to `horizon`. After each step
/// coordinates are clipped to [0,1] and renormalized when the simplex drift
/// exceeds 1e-12. Coordinates that start at exactly 0 stay exactly 0.
/// Throws DomainError for a bad step/horizon and IntegrationError when the
/// state becomes non-finite.
Trajectory integrate_trajectory(const ReplicatorSystem& system, const JointState& initial, double horizon,
                                double step);

struct FieldPoint {
  JointState state;
  std::vector<std::vector<double>> velocity;  // one vector per population
};

struct DirectionField {
  int resolution = 0;
  std::vector<std::string> axes;
  std::vector<FieldPoint> points;
};

// Velocities on a regular lattice: the (x_1, y_1) unit square for two
// populations of 2 strategies, [0,1] for one population of 2 strategies,
// the triangular lattice for one population of 3. Other shapes throw
// UnsupportedShapeError.
DirectionField direction_field(const ReplicatorSystem& system, int resolution);

enum class Stability { stable, unstable, saddle, inconclusive };

std::string to_string(Stability s);

struct Equilibrium {
  JointState state;
  double residual = 0.0;  // max-norm of the velocity at `state`
  Stability classification = Stability::inconclusive;
  std::vector<double> eigenvalue_real_parts;

  // Lyapunov-unstable: a repeller or a saddle.
  bool is_unstable() const {
    return classification == Stability::unstable || classification == Stability::saddle;
  }
};

struct EquilibriumOptions {
  double stationarity_tolerance = 1e-9;
  double dedup_radius = 1e-4;
  double eigen_tolerance = 1e-6;
  double jacobian_step = 1e-6;
  int max_iterations = 100;
  int grid = 11;  // lattice points per axis for the default seeds
};

struct EquilibriumSearch {
  std::vector<Equilibrium> equilibria;
  std::size_t seeds = 0;
  std::size_t converged = 0;
  std::size_t dropped = 0;  // seeds whose refinement did not reach the tolerance
};

// Simplex lattice of `grid` points per edge for every population, combined
// as a product; always contains the vertices.
std::vector<JointState> default_seeds(const ReplicatorSystem& system, int grid = 11);

/// Damped Newton refinement of the velocity field in tangent coordinates from
/// every seed (default_seeds when empty). Converged points are deduplicated
/// and classified from the eigenvalues of a central-difference Jacobian.
EquilibriumSearch find_equilibria(const ReplicatorSystem& system, const std::vector<JointState>& seeds = {},
                                  const EquilibriumOptions& options = {});

// Classify a point without refining it.
Equilibrium classify_point(const ReplicatorSystem& system, const JointState& state,
                           const EquilibriumOptions& options = {});

}  // namespace hptdyn
