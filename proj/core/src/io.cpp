#include "hptdyn/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace hptdyn {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

ParseError::ParseError(const std::string& what, int line, int column)
    : std::runtime_error(line > 0 ? what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"
                                  : what),
      line_(line),
      column_(column) {}

namespace {

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    int line = 1, column = 1;
    const std::size_t stop = e.byte > 0 ? std::min<std::size_t>(e.byte - 1, text.size()) : 0;
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    // Drop the library's own prefix; position is appended by ParseError.
    std::string msg = e.what();
    if (auto pos = msg.find(": "); pos != std::string::npos) msg = msg.substr(pos + 2);
    throw ParseError("malformed JSON: " + msg, line, column);
  }
}

[[noreturn]] void format_error(const std::string& what) { throw ParseError(what, 0, 0); }

const json& field(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) format_error(std::string("missing field \"") + key + "\"");
  return obj.at(key);
}

int as_int(const json& v, const std::string& what) {
  if (!v.is_number_integer()) format_error(what + " must be an integer");
  return v.get<int>();
}

double as_double(const json& v, const std::string& what) {
  if (!v.is_number()) format_error(what + " must be a number");
  return v.get<double>();
}

std::vector<int> int_list(const json& v, const std::string& what) {
  if (!v.is_array()) format_error(what + " must be an array");
  std::vector<int> out;
  for (const auto& e : v) out.push_back(as_int(e, what));
  return out;
}

std::vector<double> double_list(const json& v, const std::string& what) {
  if (!v.is_array()) format_error(what + " must be an array");
  std::vector<double> out;
  for (const auto& e : v) out.push_back(as_double(e, what));
  return out;
}

// Asymmetric cells are written as [first, second]; a bare 0 stands for (0, 0).
template <typename T, typename Conv>
std::array<std::vector<T>, 2> pair_list(const json& v, const std::string& what, Conv conv) {
  if (!v.is_array()) format_error(what + " must be an array of pairs");
  std::array<std::vector<T>, 2> out;
  for (const auto& cell : v) {
    if (cell.is_array()) {
      if (cell.size() != 2) format_error(what + " entries must be pairs");
      out[0].push_back(conv(cell[0], what));
      out[1].push_back(conv(cell[1], what));
    } else {
      const T value = conv(cell, what);
      if (value != T{0}) format_error(what + " entries must be pairs (only 0 may be abbreviated)");
      out[0].push_back(T{0});
      out[1].push_back(T{0});
    }
  }
  return out;
}

std::vector<std::string> string_list(const json& v) {
  std::vector<std::string> out;
  if (!v.is_array()) format_error("strategy_names must be an array");
  for (const auto& e : v) {
    if (!e.is_string()) format_error("strategy_names entries must be strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

ojson num(double v) {
  const double r = round_significant(v);
  if (r == 0.0) return 0;
  if (std::abs(r) < 1e15 && r == std::floor(r)) return static_cast<std::int64_t>(r);
  return r;
}

ojson num_list(std::span<const double> v) {
  ojson out = ojson::array();
  for (double x : v) out.push_back(num(x));
  return out;
}

// Objects and arrays of objects are spread over lines; numeric arrays stay on one.
void layout(const ojson& v, int indent, int depth, std::string& out) {
  const bool spread = depth > 0 && (v.is_object() || (v.is_array() && !v.empty() && v[0].is_object()));
  if (!spread) {
    out += v.dump();
    return;
  }
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  out += v.is_object() ? "{\n" : "[\n";
  std::size_t i = 0;
  for (auto it = v.begin(); it != v.end(); ++it, ++i) {
    out += pad;
    if (v.is_object()) out += ojson(it.key()).dump() + ": ";
    layout(*it, indent + 2, depth - 1, out);
    out += i + 1 < v.size() ? ",\n" : "\n";
  }
  out += std::string(static_cast<std::size_t>(indent), ' ') + (v.is_object() ? "}" : "]");
}

std::string render(const ojson& v, int depth = 8) {
  std::string out;
  layout(v, 0, depth, out);
  return out + "\n";
}

ojson state_json(const JointState& s) {
  if (!s.second) return num_list(s.first.weights());
  return ojson::array({num_list(s.first.weights()), num_list(s.second->weights())});
}

}  // namespace

double round_significant(double value, int digits) {
  if (!std::isfinite(value) || value == 0.0) return value;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return std::strtod(buf, nullptr);
}

const ValidationReport& report_of(const AnyHpt& table) {
  return std::visit([](const auto& t) -> const ValidationReport& { return t.report(); }, table);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << contents;
  if (!out) throw IoError("failed writing " + path.string());
}

// ---- HPT ----

HptDocument parse_hpt(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) format_error("HPT document must be a JSON object");
  const auto& type = field(doc, "type");
  if (!type.is_string()) format_error("\"type\" must be a string");
  const auto& rows_json = field(doc, "rows");
  if (!rows_json.is_array()) format_error("\"rows\" must be an array");

  if (type == "symmetric") {
    const int n = as_int(field(doc, "players"), "players");
    const int k = as_int(field(doc, "strategies"), "strategies");
    std::vector<SymmetricRow> rows;
    for (const auto& r : rows_json)
      rows.push_back({int_list(field(r, "counts"), "counts"), double_list(field(r, "payoffs"), "payoffs")});
    HptDocument out{SymmetricHpt(n, k, std::move(rows)), {}};
    if (doc.contains("strategy_names")) out.strategy_names[0] = string_list(doc["strategy_names"]);
    return out;
  }
  if (type != "asymmetric") format_error("\"type\" must be \"symmetric\" or \"asymmetric\"");

  const auto players = int_list(field(doc, "players"), "players");
  if (players.size() != 2) format_error("asymmetric \"players\" must be [m, n]");
  const auto& ks = field(doc, "strategies");
  std::array<int, 2> real{};
  if (ks.is_array()) {
    const auto v = int_list(ks, "strategies");
    if (v.size() != 2) format_error("asymmetric \"strategies\" must be k or [k1, k2]");
    real = {v[0], v[1]};
  } else {
    const int k = as_int(ks, "strategies");
    real = {k, k};
  }
  const int k = std::max(real[0], real[1]);
  const std::array<int, 2> padding{k - real[0], k - real[1]};

  std::vector<AsymmetricRow> rows;
  std::set<PairCountRow> present;
  for (const auto& r : rows_json) {
    auto counts = pair_list<int>(field(r, "counts"), "counts", as_int);
    auto payoffs = pair_list<double>(field(r, "payoffs"), "payoffs", as_double);
    AsymmetricRow row{{std::move(counts[0]), std::move(counts[1])}, {std::move(payoffs[0]), std::move(payoffs[1])}};
    present.insert(row.counts);
    rows.push_back(std::move(row));
  }
  if (padding[0] > 0 || padding[1] > 0) {
    if (players[0] < 1 || players[1] < 1 || k < 1) format_error("asymmetric players and strategies must be positive");
    for (auto& counts : enumerate_rows_asymmetric(players[0], players[1], k)) {
      bool uses_padding = false;
      for (int s = 0; s < k; ++s) {
        const auto su = static_cast<std::size_t>(s);
        if ((s >= real[0] && counts.first[su] > 0) || (s >= real[1] && counts.second[su] > 0)) uses_padding = true;
      }
      if (uses_padding && !present.contains(counts))
        rows.push_back({std::move(counts), {std::vector<double>(static_cast<std::size_t>(k), 0.0),
                                            std::vector<double>(static_cast<std::size_t>(k), 0.0)}});
    }
  }
  HptDocument out{AsymmetricHpt(players[0], players[1], k, std::move(rows), padding), {}};
  if (doc.contains("strategy_names")) {
    const auto& names = doc["strategy_names"];
    if (names.is_array() && !names.empty() && names[0].is_array()) {
      if (names.size() != 2) format_error("strategy_names must list both populations");
      out.strategy_names = {string_list(names[0]), string_list(names[1])};
    } else {
      const auto shared = string_list(names);
      out.strategy_names = {shared, shared};
    }
  }
  return out;
}

HptDocument load_hpt(const std::filesystem::path& path) { return parse_hpt(read_file(path)); }

std::string serialize_hpt(const HptDocument& doc) {
  ojson out;
  if (const auto* sym = std::get_if<SymmetricHpt>(&doc.table)) {
    out["type"] = "symmetric";
    out["players"] = sym->players();
    out["strategies"] = sym->strategies();
    if (!doc.strategy_names[0].empty()) out["strategy_names"] = doc.strategy_names[0];
    ojson rows = ojson::array();
    for (const auto& r : sym->rows()) rows.push_back({{"counts", r.counts}, {"payoffs", num_list(r.payoffs)}});
    out["rows"] = std::move(rows);
  } else {
    const auto& asym = std::get<AsymmetricHpt>(doc.table);
    const int k = asym.strategies();
    out["type"] = "asymmetric";
    out["players"] = {asym.first_players(), asym.second_players()};
    if (asym.padding(0) == 0 && asym.padding(1) == 0)
      out["strategies"] = k;
    else
      out["strategies"] = {k - asym.padding(0), k - asym.padding(1)};
    if (!doc.strategy_names[0].empty() || !doc.strategy_names[1].empty())
      out["strategy_names"] = ojson::array({ojson(doc.strategy_names[0]), ojson(doc.strategy_names[1])});
    ojson rows = ojson::array();
    for (const auto& r : asym.rows()) {
      ojson counts = ojson::array(), payoffs = ojson::array();
      for (std::size_t l = 0; l < static_cast<std::size_t>(k); ++l) {
        counts.push_back({r.counts.first[l], r.counts.second[l]});
        payoffs.push_back({num(r.payoffs[0][l]), num(r.payoffs[1][l])});
      }
      rows.push_back({{"counts", std::move(counts)}, {"payoffs", std::move(payoffs)}});
    }
    out["rows"] = std::move(rows);
  }
  return render(out, 2);
}

std::string hpt_to_csv(const AnyHpt& table) {
  std::ostringstream os;
  auto cell = [&](double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);
    os << buf;
  };
  if (const auto* sym = std::get_if<SymmetricHpt>(&table)) {
    const int k = sym->strategies();
    for (int i = 1; i <= k; ++i) os << (i > 1 ? "," : "") << "N" << i;
    for (int i = 1; i <= k; ++i) os << ",U" << i;
    os << "\n";
    for (const auto& r : sym->rows()) {
      for (std::size_t i = 0; i < r.counts.size(); ++i) os << (i ? "," : "") << r.counts[i];
      for (double u : r.payoffs) {
        os << ",";
        cell(u);
      }
      os << "\n";
    }
    return os.str();
  }
  const auto& asym = std::get<AsymmetricHpt>(table);
  const int k = asym.strategies();
  for (int i = 1; i <= k; ++i) os << (i > 1 ? "," : "") << "N" << i << "_p1,N" << i << "_p2";
  for (int i = 1; i <= k; ++i) os << ",U" << i << "_p1,U" << i << "_p2";
  os << "\n";
  for (const auto& r : asym.rows()) {
    for (std::size_t l = 0; l < static_cast<std::size_t>(k); ++l)
      os << (l ? "," : "") << r.counts.first[l] << "," << r.counts.second[l];
    for (std::size_t l = 0; l < static_cast<std::size_t>(k); ++l) {
      os << ",";
      cell(r.payoffs[0][l]);
      os << ",";
      cell(r.payoffs[1][l]);
    }
    os << "\n";
  }
  return os.str();
}

// ---- NFG ----

NormalFormGame parse_nfg(std::string_view text) {
  const json doc = parse_json(text);
  const int players = as_int(field(doc, "players"), "players");
  if (players < 1) format_error("\"players\" must be positive");
  const auto& ks = field(doc, "strategies");
  std::vector<int> counts = ks.is_array() ? int_list(ks, "strategies")
                                          : std::vector<int>(static_cast<std::size_t>(players), as_int(ks, "strategies"));
  if (counts.size() != static_cast<std::size_t>(players)) format_error("\"strategies\" needs one entry per player");
  const auto& payoffs_json = field(doc, "payoffs");
  if (!payoffs_json.is_array()) format_error("\"payoffs\" must be an array");
  std::vector<std::vector<double>> payoffs;
  for (const auto& e : payoffs_json) payoffs.push_back(double_list(e, "payoffs"));
  try {
    return NormalFormGame(std::move(counts), std::move(payoffs));
  } catch (const DomainError& e) {
    format_error(std::string("invalid game: ") + e.what());
  }
}

NormalFormGame load_nfg(const std::filesystem::path& path) { return parse_nfg(read_file(path)); }

WolfpackConfig parse_wolfpack_config(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) format_error("wolfpack config must be a JSON object");
  WolfpackConfig c;
  for (const auto& [key, value] : doc.items()) {
    if (key == "grid_size") c.grid_size = as_int(value, key);
    else if (key == "capture_radius") c.capture_radius = as_int(value, key);
    else if (key == "team_threshold") c.team_threshold = as_int(value, key);
    else if (key == "r_lone") c.r_lone = as_double(value, key);
    else if (key == "r_team") c.r_team = as_double(value, key);
    else if (key == "max_steps") c.max_steps = as_int(value, key);
    else if (key == "seed") {
      if (!value.is_number_unsigned() && !value.is_number_integer()) format_error("seed must be an integer");
      c.rng_seed = value.get<std::uint64_t>();
    } else {
      format_error("unknown wolfpack config field \"" + key + "\"");
    }
  }
  return c;
}

// ---- episode logs ----

std::string episode_to_json_line(const EpisodeRecord& r) {
  ojson out;
  out["seed"] = r.episode_seed;
  out["assignment"] = {r.assignment[0], r.assignment[1]};
  out["rewards"] = {r.rewards[0], r.rewards[1]};
  out["timeout"] = r.timed_out;
  return out.dump();
}

EpisodeRecord parse_episode_line(std::string_view line) {
  const json doc = parse_json(line);
  EpisodeRecord r;
  const auto& seed = field(doc, "seed");
  if (!seed.is_number_integer()) format_error("episode seed must be an integer");
  r.episode_seed = seed.get<std::uint64_t>();
  const auto& a = field(doc, "assignment");
  const auto& w = field(doc, "rewards");
  if (!a.is_array() || a.size() != 2 || !w.is_array() || w.size() != 2)
    format_error("episode assignment and rewards must list two populations");
  for (std::size_t p = 0; p < 2; ++p) {
    r.assignment[p] = int_list(a[p], "assignment");
    r.rewards[p] = double_list(w[p], "rewards");
  }
  if (doc.contains("timeout")) {
    if (!doc["timeout"].is_boolean()) format_error("timeout must be a boolean");
    r.timed_out = doc["timeout"].get<bool>();
  }
  return r;
}

std::vector<EpisodeRecord> load_episode_log(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  std::vector<EpisodeRecord> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(parse_episode_line(line));
    } catch (const ParseError& e) {
      throw ParseError(std::string("episode log: ") + e.what(), number, e.column());
    }
  }
  return out;
}

// ---- outputs ----

std::string payoff_json(const std::vector<PayoffVector>& fitness) {
  if (fitness.size() == 1) return num_list(fitness[0].values()).dump() + "\n";
  ojson out = ojson::array();
  for (const auto& f : fitness) out.push_back(num_list(f.values()));
  return out.dump() + "\n";
}

std::string comparison_json(const std::vector<ComparisonEntry>& entries) {
  ojson out = ojson::array();
  for (const auto& e : entries) {
    ojson item;
    ojson profiles = ojson::array(), corrected = ojson::array(), legacy = ojson::array(), err = ojson::array();
    for (const auto& p : e.profiles) profiles.push_back(num_list(p.weights()));
    for (const auto& f : e.corrected) corrected.push_back(num_list(f.values()));
    for (const auto& f : e.legacy) legacy.push_back(num_list(f.values()));
    for (const auto& d : e.abs_error) err.push_back(num_list(d));
    item["profiles"] = std::move(profiles);
    item["corrected"] = std::move(corrected);
    item["legacy"] = std::move(legacy);
    item["abs_error"] = std::move(err);
    item["degenerate"] = e.degenerate;
    out.push_back(std::move(item));
  }
  return render(out);
}

std::string field_json(const DirectionField& field) {
  ojson out;
  out["axes"] = field.axes;
  out["resolution"] = field.resolution;
  ojson points = ojson::array();
  for (const auto& p : field.points) {
    ojson velocity = ojson::array();
    for (const auto& v : p.velocity) velocity.push_back(num_list(v));
    if (velocity.size() == 1) velocity = velocity[0];
    points.push_back({{"state", state_json(p.state)}, {"velocity", std::move(velocity)}});
  }
  out["points"] = std::move(points);
  return render(out, 2);
}

std::string trajectory_json(const Trajectory& trajectory, std::size_t every) {
  if (every == 0) every = 1;
  ojson out;
  out["step"] = num(trajectory.step);
  out["max_simplex_drift"] = num(trajectory.max_simplex_drift);
  ojson samples = ojson::array();
  const auto& s = trajectory.samples;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (i % every == 0 || i + 1 == s.size()) samples.push_back({{"t", num(s[i].time)}, {"state", state_json(s[i].state)}});
  out["samples"] = std::move(samples);
  return render(out, 2);
}

std::string equilibria_json(const EquilibriumSearch& search, std::string_view method) {
  ojson out;
  out["method"] = method;
  ojson list = ojson::array();
  for (const auto& e : search.equilibria) {
    list.push_back({{"state", state_json(e.state)},
                    {"residual", num(e.residual)},
                    {"classification", to_string(e.classification)},
                    {"eigenvalue_real_parts", num_list(e.eigenvalue_real_parts)}});
  }
  out["equilibria"] = std::move(list);
  out["diagnostics"] = {{"seeds", search.seeds}, {"converged", search.converged}, {"dropped", search.dropped}};
  return render(out);
}

std::string estimate_report_json(const HptEstimate& e) {
  ojson out;
  out["converged"] = e.converged;
  out["complete"] = e.complete();
  out["episodes_applied"] = e.episodes_applied;
  out["timeouts"] = {{"included", e.timeouts_included}, {"discarded", e.timeouts_discarded}};
  out["visits"] = e.visits;
  ojson unestimated = ojson::array();
  for (std::size_t j = 0; j < e.unestimated.size(); ++j)
    if (e.unestimated[j]) unestimated.push_back(j);
  out["unestimated_rows"] = std::move(unestimated);
  ojson deltas = ojson::array();
  for (const auto& row : e.history) {
    ojson per_pop = ojson::array();
    for (const auto& pop : row) {
      ojson cells = ojson::array();
      for (const auto& d : pop) {
        double m = 0.0;
        for (double v : d) m = std::max(m, v);
        cells.push_back(num(m));
      }
      per_pop.push_back(std::move(cells));
    }
    deltas.push_back(std::move(per_pop));
  }
  out["window_max_delta"] = std::move(deltas);
  return render(out);
}

std::string validation_json(const ValidationReport& report) {
  ojson out;
  out["valid"] = report.ok();
  ojson v = ojson::array();
  for (const auto& x : report.violations) {
    ojson item{{"kind", x.kind}, {"message", x.message}};
    if (x.row) item["row"] = *x.row;
    v.push_back(std::move(item));
  }
  out["violations"] = std::move(v);
  out["notes"] = report.notes;
  return render(out);
}

}  // namespace hptdyn
