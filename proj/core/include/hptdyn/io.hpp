#pragma once

// JSON file formats shared by the command-line tool and the plotting
// frontend. All numeric output is rounded to 12 significant digits so
// repeated runs produce byte-identical files.

#include <array>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hptdyn/dynamics.hpp"
#include "hptdyn/egta.hpp"
#include "hptdyn/legacy.hpp"
#include "hptdyn/nfg.hpp"
#include "hptdyn/table.hpp"
#include "hptdyn/wolfpack.hpp"

namespace hptdyn {

// Unreadable file.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed JSON or a document that does not follow the expected layout.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

using AnyHpt = std::variant<SymmetricHpt, AsymmetricHpt>;

struct HptDocument {
  AnyHpt table;
  // Per population; the second entry is empty for symmetric tables.
  std::array<std::vector<std::string>, 2> strategy_names;

  bool symmetric() const { return std::holds_alternative<SymmetricHpt>(table); }
};

const ValidationReport& report_of(const AnyHpt& table);

/// Parses the HPT format:
///   { "type": "symmetric", "players": n, "strategies": k,
///     "rows": [ { "counts": [..], "payoffs": [..] } ] }
///   { "type": "asymmetric", "players": [m, n], "strategies": k | [k1, k2],
///     "rows": [ { "counts": [[N1,N2], ...], "payoffs": [[U1,U2], ...] } ] }
/// With k1 != k2 the smaller side is padded to max(k1, k2) strategies and the
/// rows involving padded strategies are added with zero payoffs. Invariant
/// violations do not throw; they are left in the table's report.
HptDocument parse_hpt(std::string_view text);
HptDocument load_hpt(const std::filesystem::path& path);
std::string serialize_hpt(const HptDocument& doc);

// Flattened columns: N1..Nk, U1..Uk for symmetric tables and
// N1_p1, N1_p2, ..., U1_p1, U1_p2, ... for asymmetric ones.
std::string hpt_to_csv(const AnyHpt& table);

/// { "players": P, "strategies": k | [k_1..k_P], "payoffs": [[u_1..u_P], ...] }
/// with one entry per joint assignment, last player varying fastest.
NormalFormGame parse_nfg(std::string_view text);
NormalFormGame load_nfg(const std::filesystem::path& path);

WolfpackConfig parse_wolfpack_config(std::string_view text);

// Newline-delimited episode log; rewards are written at full precision so a
// replay reproduces the live estimate exactly.
std::string episode_to_json_line(const EpisodeRecord& record);
EpisodeRecord parse_episode_line(std::string_view line);
std::vector<EpisodeRecord> load_episode_log(const std::filesystem::path& path);

double round_significant(double value, int digits = 12);

std::string payoff_json(const std::vector<PayoffVector>& fitness);
std::string comparison_json(const std::vector<ComparisonEntry>& entries);
std::string field_json(const DirectionField& field);
std::string trajectory_json(const Trajectory& trajectory, std::size_t every = 1);
std::string equilibria_json(const EquilibriumSearch& search, std::string_view method);
std::string estimate_report_json(const HptEstimate& estimate);
std::string validation_json(const ValidationReport& report);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace hptdyn
