#include "commands.hpp"

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include "hptdyn/dynamics.hpp"
#include "hptdyn/egta.hpp"
#include "hptdyn/errors.hpp"
#include "hptdyn/io.hpp"
#include "hptdyn/legacy.hpp"
#include "hptdyn/nfg.hpp"
#include "hptdyn/payoff.hpp"
#include "hptdyn/wolfpack.hpp"

namespace hptdyn::cli {

namespace {

constexpr double kInputTolerance = 1e-9;

// Bad command-line values (not numbers, wrong arity).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) out.push_back(item);
  if (!text.empty() && text.back() == sep) out.emplace_back();
  return out;
}

std::vector<double> parse_numbers(const std::string& text) {
  std::vector<double> out;
  for (const auto& piece : split(text, ',')) {
    char* end = nullptr;
    const double v = std::strtod(piece.c_str(), &end);
    if (piece.empty() || end == piece.c_str()) throw UsageError("not a number: \"" + piece + "\"");
    while (*end == ' ') ++end;
    if (*end != '\0') throw UsageError("not a number: \"" + piece + "\"");
    out.push_back(v);
  }
  return out;
}

// Accepts the real strategies of a population and pads to the table width.
StrategyProfile parse_profile(const std::string& text, int width, int padding) {
  auto w = parse_numbers(text);
  const auto real = static_cast<std::size_t>(width - padding);
  if (w.size() == real) w.resize(static_cast<std::size_t>(width), 0.0);
  if (w.size() != static_cast<std::size_t>(width))
    throw DomainError("profile has " + std::to_string(w.size()) + " entries, expected " + std::to_string(real));
  return StrategyProfile::normalized(std::move(w), kInputTolerance);
}

JointState parse_start(const std::string& text, const AnyHpt& table) {
  const auto parts = split(text, ';');
  if (const auto* sym = std::get_if<SymmetricHpt>(&table)) {
    if (parts.size() != 1) throw DomainError("symmetric tables take a single-population start state");
    return {parse_profile(parts[0], sym->strategies(), 0), std::nullopt};
  }
  const auto& asym = std::get<AsymmetricHpt>(table);
  if (parts.size() != 2) throw DomainError("asymmetric tables take a start state \"x...;y...\"");
  return {parse_profile(parts[0], asym.strategies(), asym.padding(0)),
          parse_profile(parts[1], asym.strategies(), asym.padding(1))};
}

PayoffMethod parse_method(const std::string& name) {
  if (name == "ours" || name == "corrected") return PayoffMethod::corrected;
  if (name == "legacy") return PayoffMethod::legacy;
  throw UsageError("unknown method \"" + name + "\" (expected ours or legacy)");
}

HptDocument load_valid(const std::string& path) {
  auto doc = load_hpt(path);
  const auto& report = report_of(doc.table);
  if (!report.ok()) throw InvalidTableError("invalid HPT " + path + ":\n" + report.to_string());
  return doc;
}

ReplicatorSystem system_for(const AnyHpt& table, PayoffMethod method) {
  return std::visit([&](const auto& t) { return make_replicator_system(t, method); }, table);
}

void emit(const std::optional<std::string>& out, const std::string& text) {
  if (out)
    write_file(*out, text);
  else
    std::cout << text;
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kInput;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kInput;
  } catch (const UsageError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const UnsupportedShapeError& e) {
    std::cerr << "unsupported shape: " << e.what() << "\n";
    return kDomain;
  } catch (const SymmetryViolation& e) {
    std::cerr << "symmetry violation: " << e.what() << "\n";
    return kDomain;
  } catch (const DomainError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kDomain;
  } catch (const InvalidTableError& e) {
    std::cerr << e.what() << "\n";
    return kDomain;
  } catch (const CapacityError& e) {
    std::cerr << "capacity exceeded: " << e.what() << "\n";
    return kDomain;
  } catch (const IntegrationError& e) {
    std::cerr << "integration failed: " << e.what() << "\n";
    return kDomain;
  }
}

}  // namespace

int cmd_validate(const std::string& hpt) {
  return guarded([&] {
    const auto doc = load_hpt(hpt);
    const auto& report = report_of(doc.table);
    std::cout << report.to_string();
    return report.ok() ? kOk : kDomain;
  });
}

int cmd_payoff(const PayoffArgs& args) {
  return guarded([&] {
    const auto doc = load_valid(args.hpt);
    const auto method = parse_method(args.method);
    std::vector<PayoffVector> result;
    if (const auto* sym = std::get_if<SymmetricHpt>(&doc.table)) {
      if (args.profile2) throw DomainError("--profile2 applies to asymmetric tables only");
      const auto x = parse_profile(args.profile, sym->strategies(), 0);
      if (method == PayoffMethod::corrected)
        result.push_back(expected_payoff_symmetric(*sym, x));
      else {
        auto legacy = legacy_expected_payoff(*sym, x);
        if (legacy.any_degenerate()) std::cerr << "warning: legacy normalization is zero for some strategies\n";
        result.push_back(std::move(legacy.fitness));
      }
    } else {
      const auto& asym = std::get<AsymmetricHpt>(doc.table);
      if (!args.profile2) throw DomainError("asymmetric tables need --profile2");
      const auto x = parse_profile(args.profile, asym.strategies(), asym.padding(0));
      const auto y = parse_profile(*args.profile2, asym.strategies(), asym.padding(1));
      if (method == PayoffMethod::corrected) {
        auto f = expected_payoff_asymmetric(asym, x, y);
        result = {std::move(f.first), std::move(f.second)};
      } else {
        const std::pair<StrategyProfile, StrategyProfile> xy{x, y};
        auto entries = legacy_error_report(asym, std::span(&xy, 1));
        if (entries[0].degenerate) std::cerr << "warning: legacy normalization is zero for some strategies\n";
        result = std::move(entries[0].legacy);
      }
    }
    std::cout << payoff_json(result);
    return kOk;
  });
}

int cmd_field(const FieldArgs& args) {
  return guarded([&] {
    const auto doc = load_valid(args.hpt);
    const auto system = system_for(doc.table, parse_method(args.method));
    emit(args.out, field_json(direction_field(system, args.resolution)));
    return kOk;
  });
}

int cmd_trajectory(const TrajectoryArgs& args) {
  return guarded([&] {
    const auto doc = load_valid(args.hpt);
    const auto system = system_for(doc.table, parse_method(args.method));
    const auto start = parse_start(args.start, doc.table);
    emit(args.out, trajectory_json(integrate_trajectory(system, start, args.horizon, args.step), args.every));
    return kOk;
  });
}

int cmd_equilibria(const EquilibriaArgs& args) {
  return guarded([&] {
    const auto doc = load_valid(args.hpt);
    const auto method = parse_method(args.method);
    const auto system = system_for(doc.table, method);
    const auto search = find_equilibria(system, default_seeds(system, args.grid));
    emit(args.out, equilibria_json(search, method == PayoffMethod::corrected ? "ours" : "legacy"));
    return kOk;
  });
}

int cmd_compare(const CompareArgs& args) {
  return guarded([&] {
    const auto doc = load_valid(args.hpt);
    if (args.grid < 2) throw DomainError("--grid must be at least 2");
    std::vector<ComparisonEntry> entries;
    if (const auto* sym = std::get_if<SymmetricHpt>(&doc.table)) {
      std::vector<StrategyProfile> profiles;
      for (const auto& c : enumerate_rows_symmetric(args.grid - 1, sym->strategies())) {
        std::vector<double> w(c.begin(), c.end());
        for (double& v : w) v /= static_cast<double>(args.grid - 1);
        profiles.push_back(StrategyProfile::normalized(std::move(w), kInputTolerance));
      }
      entries = legacy_error_report(*sym, profiles);
    } else {
      const auto& asym = std::get<AsymmetricHpt>(doc.table);
      std::vector<StrategyProfile> side;
      for (const auto& c : enumerate_rows_symmetric(args.grid - 1, asym.strategies())) {
        std::vector<double> w(c.begin(), c.end());
        for (double& v : w) v /= static_cast<double>(args.grid - 1);
        side.push_back(StrategyProfile::normalized(std::move(w), kInputTolerance));
      }
      std::vector<std::pair<StrategyProfile, StrategyProfile>> profiles;
      for (const auto& x : side)
        for (const auto& y : side) profiles.emplace_back(x, y);
      entries = legacy_error_report(asym, profiles);
    }
    emit(args.out, comparison_json(entries));
    return kOk;
  });
}

int cmd_estimate(const EstimateArgs& args) {
  return guarded([&] {
    if (args.env != "wolfpack") throw UsageError("unknown environment \"" + args.env + "\"");
    WolfpackConfig config;
    if (args.config) config = parse_wolfpack_config(read_file(*args.config));
    if (args.seed) config.rng_seed = *args.seed;
    config.validate();

    const HptShape shape{1, 1, 2};
    const EstimatorOptions options{args.min_visits, args.window, args.tolerance, args.discard_timeouts};
    std::vector<EpisodeRecord> log;
    HptEstimate estimate = [&] {
      if (args.replay) {
        auto records = load_episode_log(*args.replay);
        if (records.size() > args.episodes) records.resize(args.episodes);
        return estimate_from_records(std::move(records), shape, options);
      }
      return estimate_hpt(wolfpack_source(config), shape, options, args.episodes, args.log ? &log : nullptr);
    }();

    if (args.log && !args.replay) {
      std::string text;
      for (const auto& r : log) text += episode_to_json_line(r) + "\n";
      write_file(*args.log, text);
    }
    const std::vector<std::string> names{"C", "D"};
    HptDocument doc{estimate.table, {names, names}};
    write_file(args.out, serialize_hpt(doc));
    const auto report = estimate_report_json(estimate);
    if (args.report)
      write_file(*args.report, report);
    else
      std::cout << report;

    if (!estimate.complete()) {
      std::cerr << "warning: partial table; some rows received no episodes\n";
      return kDomain;
    }
    if (!estimate.converged) std::cerr << "warning: budget exhausted before convergence\n";
    return kOk;
  });
}

int cmd_convert(const ConvertArgs& args) {
  return guarded([&] {
    const auto game = load_nfg(args.nfg);
    const auto parts = parse_numbers(args.split);
    for (double v : parts)
      if (v != static_cast<int>(v) || v < 1) throw UsageError("--split takes positive integers");
    HptDocument doc = [&]() -> HptDocument {
      if (parts.size() == 1) {
        if (static_cast<int>(parts[0]) != game.players())
          throw DomainError("split " + args.split + " does not match " + std::to_string(game.players()) + " players");
        return {nfg_to_hpt_symmetric(game), {}};
      }
      if (parts.size() == 2)
        return {nfg_to_hpt_asymmetric(game, static_cast<int>(parts[0]), static_cast<int>(parts[1])), {}};
      throw UsageError("--split takes \"n\" or \"m,n\"");
    }();
    emit(args.out, serialize_hpt(doc));
    return kOk;
  });
}

int cmd_csv(const std::string& hpt, const std::optional<std::string>& out) {
  return guarded([&] {
    const auto doc = load_valid(hpt);
    emit(out, hpt_to_csv(doc.table));
    return kOk;
  });
}

}  // namespace hptdyn::cli
