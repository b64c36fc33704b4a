#pragma once

#include <optional>
#include <string>

namespace hptdyn::cli {

enum ExitCode { kOk = 0, kDomain = 1, kInput = 2 };

struct PayoffArgs {
  std::string hpt;
  std::string profile;
  std::optional<std::string> profile2;
  std::string method = "ours";
};

struct FieldArgs {
  std::string hpt;
  int resolution = 20;
  std::string method = "ours";
  std::optional<std::string> out;
};

struct TrajectoryArgs {
  std::string hpt;
  std::string start;
  double horizon = 200.0;
  double step = 0.01;
  std::size_t every = 1;
  std::string method = "ours";
  std::optional<std::string> out;
};

struct EquilibriaArgs {
  std::string hpt;
  std::string method = "ours";
  int grid = 11;
  std::optional<std::string> out;
};

struct CompareArgs {
  std::string hpt;
  int grid = 5;
  std::optional<std::string> out;
};

struct EstimateArgs {
  std::string env = "wolfpack";
  std::optional<std::string> config;
  std::size_t episodes = 20000;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::optional<std::string> report;
  std::optional<std::string> log;
  std::optional<std::string> replay;
  int min_visits = 100;
  int window = 50;
  double tolerance = 1e-3;
  bool discard_timeouts = false;
};

struct ConvertArgs {
  std::string nfg;
  std::string split;
  std::optional<std::string> out;
};

int cmd_validate(const std::string& hpt);
int cmd_payoff(const PayoffArgs& args);
int cmd_field(const FieldArgs& args);
int cmd_trajectory(const TrajectoryArgs& args);
int cmd_equilibria(const EquilibriaArgs& args);
int cmd_compare(const CompareArgs& args);
int cmd_estimate(const EstimateArgs& args);
int cmd_convert(const ConvertArgs& args);
int cmd_csv(const std::string& hpt, const std::optional<std::string>& out);

}  // namespace hptdyn::cli
