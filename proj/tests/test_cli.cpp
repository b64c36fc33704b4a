#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "hptdyn/io.hpp"
#include "support/fixtures.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int status;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(HPTDYN_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::string fx(const std::string& name) { return fixtures::path(name); }

fs::path scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("hptdyn_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) { return hptdyn::read_file(p); }

}  // namespace

TEST_CASE("validate") {
  const auto ok = run("validate --hpt " + fx("pd.json"));
  CHECK(ok.status == 0);
  CHECK(ok.out.find("valid") == 0);

  auto text = slurp(fx("pd.json"));
  const auto at = text.find("    {\"counts\": [1, 1]");
  REQUIRE(at != std::string::npos);
  text.erase(at, text.find('\n', at) - at + 1);
  const auto deleted = scratch() / "deleted.json";
  hptdyn::write_file(deleted, text);
  const auto bad = run("validate --hpt " + deleted.string());
  CHECK(bad.status == 1);
  CHECK(bad.out.find("missing composition") != std::string::npos);

  const auto truncated = scratch() / "truncated.json";
  hptdyn::write_file(truncated, slurp(fx("pd.json")).substr(0, 60));
  CHECK(run("validate --hpt " + truncated.string()).status == 2);
  CHECK(run("validate --hpt /nonexistent.json").status == 2);
}

TEST_CASE("payoff goldens") {
  CHECK(run("payoff --hpt " + fx("pd.json") + " --profile 0.5,0.5 --method ours").out == "[1.5,3]\n");
  CHECK(run("payoff --hpt " + fx("pd.json") + " --profile 0.5,0.5 --method legacy").out == "[1,3.66666666667]\n");
  CHECK(run("payoff --hpt " + fx("bos.json") + " --profile 0.5,0.5 --profile2 0.5,0.5").out == "[[1.5,1],[1,1.5]]\n");
  CHECK(run("payoff --hpt " + fx("bos.json") + " --profile 0.5,0.5 --profile2 0.5,0.5 --method legacy").out ==
        "[[1,0.666666666667],[0.666666666667,1]]\n");
}

TEST_CASE("payoff input errors") {
  CHECK(run("payoff --hpt " + fx("pd.json") + " --profile 0.6,0.6").status == 1);
  CHECK(run("payoff --hpt " + fx("pd.json") + " --profile 0.5,0.5000000001").status == 0);
  CHECK(run("payoff --hpt " + fx("pd.json") + " --profile 0.5,abc").status == 2);
  CHECK(run("payoff --hpt " + fx("bos.json") + " --profile 0.5,0.5").status == 1);
  CHECK(run("payoff --hpt " + fx("pd.json") + " --profile 0.2,0.3,0.5").status == 1);
}

TEST_CASE("field") {
  const auto out = scratch() / "field.json";
  REQUIRE(run("field --hpt " + fx("wolfpack.json") + " --resolution 20 --out " + out.string()).status == 0);
  const auto text = slurp(out);
  std::size_t points = 0;
  for (std::size_t p = text.find("{\"state\""); p != std::string::npos; p = text.find("{\"state\"", p + 1)) ++points;
  CHECK(points == 400);

  const auto corners = run("field --hpt " + fx("wolfpack.json") + " --resolution 2");
  CHECK(corners.status == 0);
  CHECK(corners.out.find("\"velocity\":[[0,0],[0,0]]") != std::string::npos);
}

TEST_CASE("trajectory") {
  const auto out = scratch() / "traj.json";
  REQUIRE(run("trajectory --hpt " + fx("starcraft.json") + " --start \"0.5,0.5;0.5,0.5\" --horizon 200 --step 0.01 --every 1000 --out " +
              out.string())
              .status == 0);
  const auto text = slurp(out);
  const auto last = text.rfind("\"state\":[[");
  REQUIRE(last != std::string::npos);
  const double x1 = std::stod(text.substr(last + 10));
  CHECK(std::abs(x1 - 1.0) < 1e-2);

  const auto vertex = run("trajectory --hpt " + fx("wolfpack.json") + " --start \"1,0;0,1\" --horizon 1 --step 0.1");
  CHECK(vertex.status == 0);
  std::size_t same = 0;
  for (std::size_t p = vertex.out.find("[[1,0],[0,1]]"); p != std::string::npos; p = vertex.out.find("[[1,0],[0,1]]", p + 1)) ++same;
  CHECK(same == 11);

  CHECK(run("trajectory --hpt " + fx("wolfpack.json") + " --start \"0.5,0.5\"").status == 1);
  CHECK(run("trajectory --hpt " + fx("wolfpack.json") + " --start \"0.5,0.5;0.5,0.5\" --step 0.5").status == 1);
}

TEST_CASE("equilibria") {
  const auto ours = run("equilibria --hpt " + fx("wolfpack.json"));
  CHECK(ours.status == 0);
  CHECK(ours.out.find("\"state\": [[0,1],[1,0]]") != std::string::npos);
  CHECK(ours.out.find("\"state\": [[1,0],[0,1]]") != std::string::npos);
  CHECK(ours.out.find("\"state\": [[0.321428571429") != std::string::npos);

  const auto legacy = run("equilibria --hpt " + fx("wolfpack.json") + " --method legacy");
  CHECK(legacy.status == 0);
  CHECK(legacy.out.find("\"method\": \"legacy\"") != std::string::npos);

  CHECK(run("equilibria --hpt " + fx("starcraft.json") + " --method legacy").status == 1);
}

TEST_CASE("convert") {
  const auto pd = run("convert --nfg " + fx("pd_nfg.json") + " --split 2");
  CHECK(pd.status == 0);
  const auto converted = hptdyn::parse_hpt(pd.out);
  CHECK(std::get<hptdyn::SymmetricHpt>(converted.table).rows() == fixtures::pd().rows());

  const auto bos = run("convert --nfg " + fx("bos_nfg.json") + " --split 1,1");
  CHECK(bos.status == 0);
  CHECK(std::get<hptdyn::AsymmetricHpt>(hptdyn::parse_hpt(bos.out).table).rows() == fixtures::bos().rows());

  const auto bad = scratch() / "lopsided.json";
  hptdyn::write_file(bad, R"({"players": 2, "strategies": 2, "payoffs": [[3, 3], [0, 5], [5, 1], [1, 1]]})");
  CHECK(run("convert --nfg " + bad.string() + " --split 2").status == 1);
}

TEST_CASE("convert then payoff matches the matrix") {
  const auto out = scratch() / "bos_converted.json";
  REQUIRE(run("convert --nfg " + fx("bos_nfg.json") + " --split 1,1 --out " + out.string()).status == 0);
  CHECK(run("payoff --hpt " + out.string() + " --profile 0.2,0.8 --profile2 0.7,0.3").out == "[[2.1,0.6],[0.4,2.4]]\n");
}

TEST_CASE("estimate") {
  const auto dir = scratch();
  const std::string common = " --config " + fx("wolfpack_config.json") + " --episodes 20000";
  REQUIRE(run("estimate --env wolfpack" + common + " --out " + (dir / "est.json").string() + " --report " +
              (dir / "rep.json").string() + " --log " + (dir / "log.ndjson").string())
              .status == 0);
  const auto table = hptdyn::load_hpt(dir / "est.json");
  CHECK(report_of(table.table).ok());
  CHECK(std::get<hptdyn::AsymmetricHpt>(table.table).rows().size() == 4);

  REQUIRE(run("estimate --replay " + (dir / "log.ndjson").string() + " --out " + (dir / "est2.json").string() +
              " --report " + (dir / "rep2.json").string())
              .status == 0);
  CHECK(slurp(dir / "est.json") == slurp(dir / "est2.json"));
  CHECK(slurp(dir / "rep.json") == slurp(dir / "rep2.json"));

  REQUIRE(run("estimate" + common + " --out " + (dir / "est3.json").string() + " --report " + (dir / "rep3.json").string())
              .status == 0);
  CHECK(slurp(dir / "est.json") == slurp(dir / "est3.json"));

  const auto empty = run("estimate --episodes 0 --out " + (dir / "empty.json").string());
  CHECK(empty.status == 1);
  CHECK(empty.out.find("\"unestimated_rows\": [0,1,2,3]") != std::string::npos);
}

TEST_CASE("seed from the environment") {
  const auto dir = scratch();
  const std::string base = " --episodes 3000 --min-visits 100000";
  run("estimate" + base + " --out " + (dir / "s1.json").string() + " --report " + (dir / "r1.json").string());
  const std::string env = "HPTDYN_SEED=99 ";
  const std::string cmd = env + HPTDYN_CLI + std::string(" estimate") + base + " --out " + (dir / "s2.json").string() +
                          " --report " + (dir / "r2.json").string() + " 2>/dev/null";
  CHECK(std::system(cmd.c_str()) == 0);
  CHECK(slurp(dir / "s1.json") != slurp(dir / "s2.json"));
}

TEST_CASE("repeated runs are byte-identical") {
  const auto a = run("field --hpt " + fx("starcraft.json") + " --resolution 7");
  const auto b = run("field --hpt " + fx("starcraft.json") + " --resolution 7");
  CHECK(a.out == b.out);
  CHECK(run("equilibria --hpt " + fx("starcraft.json")).out == run("equilibria --hpt " + fx("starcraft.json")).out);
}

TEST_CASE("csv and compare") {
  const auto csv = run("csv --hpt " + fx("wolfpack.json"));
  CHECK(csv.status == 0);
  CHECK(csv.out.find("U1_p1") != std::string::npos);
  const auto cmp = run("compare --hpt " + fx("pd.json") + " --grid 3");
  CHECK(cmp.status == 0);
  CHECK(cmp.out.find("\"abs_error\"") != std::string::npos);
}

TEST_CASE("usage errors") {
  CHECK(run("").status == 2);
  CHECK(run("payoff --profile 0.5,0.5").status == 2);
  CHECK(run("payoff --hpt " + fx("pd.json") + " --profile 0.5,0.5 --method magic").status == 2);
}
