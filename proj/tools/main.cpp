#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

using namespace hptdyn::cli;

namespace {

// Default estimator seed, overridable per invocation with --seed.
std::optional<std::uint64_t> seed_from_env() {
  const char* v = std::getenv("HPTDYN_SEED");
  if (!v || !*v) return std::nullopt;
  char* end = nullptr;
  const auto seed = std::strtoull(v, &end, 10);
  if (*end != '\0') {
    std::cerr << "ignoring non-numeric HPTDYN_SEED\n";
    return std::nullopt;
  }
  return seed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heuristic payoff tables and replicator dynamics"};
  app.require_subcommand(1);
  int status = kOk;

  std::string validate_hpt;
  auto* validate = app.add_subcommand("validate", "Check an HPT file against the table invariants");
  validate->add_option("--hpt", validate_hpt, "HPT file")->required();
  validate->callback([&] { status = cmd_validate(validate_hpt); });

  PayoffArgs payoff;
  auto* pay = app.add_subcommand("payoff", "Expected payoff of each strategy at a profile");
  pay->add_option("--hpt", payoff.hpt, "HPT file")->required();
  pay->add_option("--profile", payoff.profile, "first population mix, e.g. 0.5,0.5")->required();
  pay->add_option("--profile2", payoff.profile2, "second population mix (asymmetric tables)");
  pay->add_option("--method", payoff.method, "ours | legacy")->capture_default_str();
  pay->callback([&] { status = cmd_payoff(payoff); });

  FieldArgs field;
  auto* fld = app.add_subcommand("field", "Replicator direction field on a grid");
  fld->add_option("--hpt", field.hpt, "HPT file")->required();
  fld->add_option("--resolution", field.resolution, "points per axis")->capture_default_str();
  fld->add_option("--method", field.method, "ours | legacy")->capture_default_str();
  fld->add_option("--out", field.out, "output file (stdout if omitted)");
  fld->callback([&] { status = cmd_field(field); });

  TrajectoryArgs traj;
  auto* trj = app.add_subcommand("trajectory", "Integrate the replicator dynamics from a start state");
  trj->add_option("--hpt", traj.hpt, "HPT file")->required();
  trj->add_option("--start", traj.start, "start state, \"x1,x2\" or \"x1,x2;y1,y2\"")->required();
  trj->add_option("--horizon", traj.horizon, "final time")->capture_default_str();
  trj->add_option("--step", traj.step, "RK4 step")->capture_default_str();
  trj->add_option("--every", traj.every, "keep every n-th sample")->capture_default_str();
  trj->add_option("--method", traj.method, "ours | legacy")->capture_default_str();
  trj->add_option("--out", traj.out, "output file (stdout if omitted)");
  trj->callback([&] { status = cmd_trajectory(traj); });

  EquilibriaArgs eq;
  auto* equ = app.add_subcommand("equilibria", "Rest points of the dynamics and their stability");
  equ->add_option("--hpt", eq.hpt, "HPT file")->required();
  equ->add_option("--method", eq.method, "ours | legacy")->capture_default_str();
  equ->add_option("--grid", eq.grid, "seed lattice resolution")->capture_default_str();
  equ->add_option("--out", eq.out, "output file (stdout if omitted)");
  equ->callback([&] { status = cmd_equilibria(eq); });

  CompareArgs cmp;
  auto* com = app.add_subcommand("compare", "Corrected vs legacy payoffs over a profile grid");
  com->add_option("--hpt", cmp.hpt, "HPT file")->required();
  com->add_option("--grid", cmp.grid, "points per simplex edge")->capture_default_str();
  com->add_option("--out", cmp.out, "output file (stdout if omitted)");
  com->callback([&] { status = cmd_compare(cmp); });

  EstimateArgs est;
  est.seed = seed_from_env();
  auto* estc = app.add_subcommand("estimate", "Estimate an HPT from simulated episodes");
  estc->add_option("--env", est.env, "environment")->capture_default_str();
  estc->add_option("--config", est.config, "environment config JSON");
  estc->add_option("--episodes", est.episodes, "episode budget")->capture_default_str();
  estc->add_option("--seed", est.seed, "RNG seed (default: HPTDYN_SEED or config)");
  estc->add_option("--out", est.out, "estimated HPT file")->required();
  estc->add_option("--report", est.report, "diagnostics JSON (stdout if omitted)");
  estc->add_option("--log", est.log, "write episodes as JSON lines");
  estc->add_option("--replay", est.replay, "estimate from a recorded episode log");
  estc->add_option("--min-visits", est.min_visits, "episodes per row before convergence")->capture_default_str();
  estc->add_option("--window", est.window, "convergence window")->capture_default_str();
  estc->add_option("--tolerance", est.tolerance, "max mean change within window")->capture_default_str();
  estc->add_flag("--discard-timeouts", est.discard_timeouts, "drop episodes that hit the step limit");
  estc->callback([&] { status = cmd_estimate(est); });

  ConvertArgs conv;
  auto* cnv = app.add_subcommand("convert", "Convert a normal-form game to an HPT");
  cnv->add_option("--nfg", conv.nfg, "NFG JSON")->required();
  cnv->add_option("--split", conv.split, "\"n\" (one population) or \"m,n\"")->required();
  cnv->add_option("--out", conv.out, "output file (stdout if omitted)");
  cnv->callback([&] { status = cmd_convert(conv); });

  std::string csv_hpt;
  std::optional<std::string> csv_out;
  auto* csv = app.add_subcommand("csv", "Export an HPT as flattened CSV");
  csv->add_option("--hpt", csv_hpt, "HPT file")->required();
  csv->add_option("--out", csv_out, "output file (stdout if omitted)");
  csv->callback([&] { status = cmd_csv(csv_hpt, csv_out); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }
  return status;
}
