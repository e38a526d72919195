#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include <json.hpp>

#include <fcbell/behavior.hpp>

#ifndef FCBELL_CLI_PATH
#error "FCBELL_CLI_PATH must point at the CLI binary"
#endif

namespace {

using nlohmann::json;

struct CommandResult {
  int exit_code = -1;
  std::string output;
};

CommandResult run(const std::string& args) {
  const std::string command = std::string(FCBELL_CLI_PATH) + " " + args + " 2>&1";
  std::array<char, 4096> buffer{};
  CommandResult result;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (std::size_t got = std::fread(buffer.data(), 1, buffer.size(), pipe)) {
    result.output.append(buffer.data(), got);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("fcbell_cli_test_" + name);
}

}  // namespace

TEST_CASE("bounds subcommand reports exact and closed forms", "[cli]") {
  const auto result = run("--format json bounds -n 3 -m 2 -k 2 --f fI --all");
  REQUIRE(result.exit_code == 0);
  const json doc = json::parse(result.output);
  bool saw_local = false, saw_svet_exact = false, saw_svet_closed = false, saw_tsirelson = false;
  for (const auto& row : doc.at("bounds")) {
    const auto kind = row.at("kind").get<std::string>();
    const auto method = row.at("method").get<std::string>();
    if (kind == "local") {
      saw_local = true;
      CHECK(row.at("value").get<long long>() == 2);
      CHECK(method == "combinatorial-exact");
    }
    if (kind == "svetlichny" && method == "combinatorial-exact") {
      saw_svet_exact = true;
      CHECK(row.at("value").get<long long>() == 2);
    }
    if (kind == "svetlichny" && method == "closed-form") {
      saw_svet_closed = true;
      CHECK(row.at("value").get<double>() == 2.0);
    }
    if (kind == "tsirelson") {
      saw_tsirelson = true;
      CHECK(row.at("value").get<double>() == Catch::Approx(2.0 * (2.0 - std::sqrt(2.0))));
    }
  }
  CHECK(saw_local);
  CHECK(saw_svet_exact);
  CHECK(saw_svet_closed);
  CHECK(saw_tsirelson);
}

TEST_CASE("bounds subcommand single closed forms", "[cli]") {
  const auto diew = run("--format json bounds -n 4 -m 3 -k 2 --f fI --diew");
  REQUIRE(diew.exit_code == 0);
  const json diew_doc = json::parse(diew.output);
  REQUIRE(diew_doc.at("bounds").size() == 1);
  CHECK(diew_doc.at("bounds")[0].at("value").get<double>() ==
        Catch::Approx(9.0 * (3.0 - std::sqrt(3.0))));

  const auto local = run("--format json bounds -n 2 -m 2 -k 9 --f fI --local");
  REQUIRE(local.exit_code == 0);
  CHECK(json::parse(local.output).at("bounds")[0].at("value").get<long long>() == 8);
}

TEST_CASE("bounds usage and guard exit codes", "[cli]") {
  CHECK(run("bounds -n 1 -m 2 -k 2 --f fI --local").exit_code == 1);
  CHECK(run("bounds -n 3 -m 2 -k 2 --f nope --local").exit_code == 1);
  CHECK(run("--guard 10 bounds -n 3 -m 2 -k 2 --f fI --local").exit_code == 2);
  const auto guard = run("--guard 10 bounds -n 3 -m 2 -k 2 --f fI --local");
  CHECK(guard.output.find("guard") != std::string::npos);
}

TEST_CASE("reduce-check matches and rejects wrong families", "[cli]") {
  CHECK(run("reduce-check bkp -m 3 -k 3").exit_code == 0);
  CHECK(run("reduce-check bkp -m 3 -k 3").output.find("match") != std::string::npos);
  CHECK(run("reduce-check svet-cglmp -n 3 -k 2").exit_code == 0);
  // Preconditions: chained form is bipartite, the two-setting form needs m = 2.
  CHECK(run("reduce-check bkp -n 3 -m 2 -k 2").exit_code == 1);
  CHECK(run("reduce-check svet-cglmp -n 3 -m 3 -k 2").exit_code == 1);
  CHECK(run("reduce-check unknown -n 2 -m 2 -k 2").exit_code == 1);
}

TEST_CASE("ghz-opt reaches pinned optima", "[cli]") {
  const auto chsh = run("--format json --seed 7 ghz-opt -n 2 -m 2 --f fI --restarts 20");
  REQUIRE(chsh.exit_code == 0);
  const json doc = json::parse(chsh.output);
  CHECK(doc.at("value").get<double>() == Catch::Approx(2.0 - std::sqrt(2.0)).margin(1e-6));
  CHECK(std::abs(doc.at("gap").get<double>()) <= 1e-6);

  const auto three = run("--format json --seed 7 ghz-opt -n 3 -m 3 --f fI --restarts 20");
  REQUIRE(three.exit_code == 0);
  CHECK(json::parse(three.output).at("value").get<double>() ==
        Catch::Approx(9.0 * (1.0 - std::cos(std::numbers::pi / 6.0))).margin(1e-6));

  CHECK(run("ghz-opt -n 2 -m 2 -k 3 --f fI").exit_code == 1);
}

TEST_CASE("ghz-opt with zero restarts stays above the bound", "[cli]") {
  const auto result = run("--format json --seed 3 ghz-opt -n 2 -m 2 --f fI --restarts 0");
  REQUIRE(result.exit_code == 0);
  const json doc = json::parse(result.output);
  CHECK(doc.at("value").get<double>() >= 2.0 - std::sqrt(2.0) - 1e-9);
  CHECK(doc.at("report").at("method").get<std::string>() == "quantum-achieved-upper");
}

TEST_CASE("ghz-opt writes angle files", "[cli]") {
  const auto path = temp_file("angles.json");
  std::filesystem::remove(path);
  const auto result =
      run("--seed 5 ghz-opt -n 2 -m 2 --f fI --restarts 5 --angles-out " + path.string());
  REQUIRE(result.exit_code == 0);
  std::ifstream in(path);
  REQUIRE(in.good());
  const json doc = json::parse(in);
  CHECK(doc.at("n").get<int>() == 2);
  CHECK(doc.at("m").get<int>() == 2);
  CHECK(doc.at("phi").size() == 2);
  std::filesystem::remove(path);
}

TEST_CASE("classify reports the PR box verdicts", "[cli]") {
  const auto path = temp_file("pr_box.json");
  {
    std::ofstream out(path);
    out << fcbell::behavior_to_json(fcbell::pr_box_behavior()).dump();
  }
  const auto result = run("--format json classify -n 2 -m 2 -k 2 --f fI --behavior " + path.string());
  REQUIRE(result.exit_code == 0);
  const json doc = json::parse(result.output);
  CHECK(doc.at("value").get<double>() == 0.0);
  bool local_violated = false, tsirelson_violated = false;
  for (const auto& verdict : doc.at("verdicts")) {
    if (verdict.at("kind") == "local") {
      local_violated = verdict.at("violated").get<bool>();
      CHECK(verdict.at("margin").get<double>() == Catch::Approx(-1.0));
    }
    if (verdict.at("kind") == "tsirelson") {
      tsirelson_violated = verdict.at("violated").get<bool>();
      CHECK(verdict.at("margin").get<double>() == Catch::Approx(-(2.0 - std::sqrt(2.0))));
    }
  }
  CHECK(local_violated);
  CHECK(tsirelson_violated);
  std::filesystem::remove(path);
}

TEST_CASE("classify rejects mismatched and malformed files", "[cli]") {
  const auto path = temp_file("mismatch.json");
  {
    std::ofstream out(path);
    out << fcbell::behavior_to_json(fcbell::pr_box_behavior()).dump();
  }
  CHECK(run("classify -n 3 -m 2 -k 2 --f fI --behavior " + path.string()).exit_code == 1);
  std::filesystem::remove(path);

  const auto broken = temp_file("broken.json");
  {
    std::ofstream out(broken);
    out << "{\"n\": 2, \"m\": 2, \"k\": 2, \"reduced\": {\"0,0\": [0.4, 0.5]}}";
  }
  const auto result = run("classify -n 2 -m 2 -k 2 --f fI --behavior " + broken.string());
  CHECK(result.exit_code == 1);
  std::filesystem::remove(broken);
}

TEST_CASE("table sweep emits the closed-form grid", "[cli]") {
  const auto result =
      run("table --n-range 2:4 --m-range 2:3 --k-range 2:2 --kinds svetlichny,diew,tsirelson --f fI");
  REQUIRE(result.exit_code == 0);
  std::istringstream lines(result.output);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "n,m,k,bound_kind,method,value");
  int rows = 0;
  int svetlichny_rows = 0;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    ++rows;
    if (line.find("svetlichny") != std::string::npos) ++svetlichny_rows;
  }
  // svetlichny rows need n >= 3 (4 cells), diew n >= 3 (4), tsirelson all (6).
  CHECK(rows == 14);
  CHECK(svetlichny_rows == 4);
}

TEST_CASE("table sweep exact cells and empty ranges", "[cli]") {
  const auto exact = run("table --n-range 3:3 --m-range 2:2 --k-range 2:2 --kinds svetlichny --f fI --exact");
  REQUIRE(exact.exit_code == 0);
  CHECK(exact.output.find("combinatorial-exact,2") != std::string::npos);

  const auto empty = run("table --n-range 3:2 --m-range 2:2 --k-range 2:2 --kinds tsirelson --f fI");
  REQUIRE(empty.exit_code == 0);
  CHECK(empty.output == "n,m,k,bound_kind,method,value\n");

  // An exact cell beyond the guard: exit 2 without --skip-infeasible,
  // "skipped" with it.
  const auto guarded =
      run("--guard 100 table --n-range 3:3 --m-range 2:2 --k-range 2:2 --kinds svetlichny --f fI --exact");
  CHECK(guarded.exit_code == 2);
  const auto skipped = run(
      "--guard 100 table --n-range 3:3 --m-range 2:2 --k-range 2:2 --kinds svetlichny --f fI --exact "
      "--skip-infeasible");
  REQUIRE(skipped.exit_code == 0);
  CHECK(skipped.output.find("skipped") != std::string::npos);
}

TEST_CASE("build emits the expression document", "[cli]") {
  const auto result = run("build -n 2 -m 3 -k 2 --f mabk");
  REQUIRE(result.exit_code == 0);
  const json doc = json::parse(result.output);
  CHECK(doc.at("n").get<int>() == 2);
  CHECK(doc.at("m").get<int>() == 3);
  CHECK(doc.at("f") == json::parse("[[0,1],[0,0],[0,0]]"));
}

TEST_CASE("expression documents round-trip through file input", "[cli]") {
  const auto path = temp_file("expr.json");
  const auto build = run("--out " + path.string() + " build -n 2 -m 2 -k 2 --f fI");
  REQUIRE(build.exit_code == 0);
  const auto bounds = run("--format json bounds -n 2 -m 2 -k 2 --f file:" + path.string() + " --local");
  REQUIRE(bounds.exit_code == 0);
  CHECK(json::parse(bounds.output).at("bounds")[0].at("value").get<long long>() == 1);
  std::filesystem::remove(path);
}

TEST_CASE("expression files with non-integer tables take the double path", "[cli]") {
  const auto path = temp_file("hexpr.json");
  {
    std::ofstream out(path);
    // Half of the unified (2,2,2) table: every bound halves with it.
    out << R"({"n": 2, "m": 2, "k": 2, "f": [[0.0, 0.5], [0.0, 0.5]]})";
  }
  const auto bounds = run("--format json bounds -n 2 -m 2 -k 2 --f file:" + path.string() + " --local");
  REQUIRE(bounds.exit_code == 0);
  const json doc = json::parse(bounds.output);
  CHECK(doc.at("bounds")[0].at("value").get<double>() == Catch::Approx(0.5));
  std::filesystem::remove(path);
}

TEST_CASE("g-group bound through the CLI", "[cli]") {
  const auto result = run("--format json bounds -n 4 -m 2 -k 2 --f fI --g-group 3");
  REQUIRE(result.exit_code == 0);
  const json doc = json::parse(result.output);
  REQUIRE(doc.at("bounds").size() == 1);
  CHECK(doc.at("bounds")[0].at("kind").get<std::string>() == "g-group");
  CHECK(doc.at("bounds")[0].at("value").get<long long>() == 4);
}

TEST_CASE("cosine and explicit-vector selectors", "[cli]") {
  // The unit weight vector reproduces the fI biseparable bound for k = 2.
  const auto unit = run("--format json bounds -n 3 -m 3 -k 2 --f g:1,1,0 --diew");
  REQUIRE(unit.exit_code == 0);
  CHECK(json::parse(unit.output).at("bounds")[0].at("value").get<double>() ==
        Catch::Approx(3.0 * (3.0 - std::sqrt(3.0))));

  const auto cosine = run("--format json bounds -n 3 -m 3 -k 2 --f cosine:0.5 --diew");
  REQUIRE(cosine.exit_code == 0);
  CHECK(json::parse(cosine.output).at("bounds")[0].at("kind").get<std::string>() == "biseparable");
}

TEST_CASE("table-mode numbers appear in the JSON written to --out", "[cli]") {
  const auto path = temp_file("bounds_out.json");
  std::filesystem::remove(path);
  const auto result = run("--out " + path.string() + " bounds -n 2 -m 2 -k 2 --f fI --tsirelson");
  REQUIRE(result.exit_code == 0);
  // Human table shows 6 decimals; the JSON side holds the full-precision value.
  CHECK(result.output.find("0.585786") != std::string::npos);
  std::ifstream in(path);
  REQUIRE(in.good());
  const json doc = json::parse(in);
  CHECK(doc.at("bounds")[0].at("value").get<double>() == 2.0 - std::sqrt(2.0));
  std::filesystem::remove(path);
}

TEST_CASE("JSON output re-serializes byte for byte", "[cli]") {
  const auto result = run("--format json bounds -n 2 -m 3 -k 2 --f fI --all");
  REQUIRE(result.exit_code == 0);
  const json parsed = json::parse(result.output);
  const std::string once = parsed.dump(2);
  const std::string twice = json::parse(once).dump(2);
  CHECK(once == twice);
}

TEST_CASE("csv format covers bounds and classify", "[cli]") {
  const auto bounds = run("--format csv bounds -n 2 -m 2 -k 2 --f fI --local --tsirelson");
  REQUIRE(bounds.exit_code == 0);
  std::istringstream lines(bounds.output);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "bound_kind,method,value");
  CHECK(bounds.output.find("local,combinatorial-exact,1") != std::string::npos);

  const auto path = temp_file("csv_box.json");
  {
    std::ofstream out(path);
    out << fcbell::behavior_to_json(fcbell::pr_box_behavior()).dump();
  }
  const auto classify =
      run("--format csv classify -n 2 -m 2 -k 2 --f fI --behavior " + path.string());
  REQUIRE(classify.exit_code == 0);
  CHECK(classify.output.find("kind,bound,method,violated,margin") != std::string::npos);
  CHECK(classify.output.find("local,1,combinatorial-exact,true,-1") != std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("non-positive guard is a usage error", "[cli]") {
  CHECK(run("--guard 0 bounds -n 2 -m 2 -k 2 --f fI --local").exit_code == 1);
  CHECK(run("--guard -5 bounds -n 2 -m 2 -k 2 --f fI --local").exit_code == 1);
}

TEST_CASE("table numbers keep full precision in json mode", "[cli]") {
  const auto result = run("--format json table --n-range 2:2 --m-range 2:2 --k-range 2:2 --kinds tsirelson --f fI");
  REQUIRE(result.exit_code == 0);
  const json doc = json::parse(result.output);
  REQUIRE(doc.at("rows").size() == 1);
  CHECK(doc.at("rows")[0].at("value").get<double>() == 2.0 - std::sqrt(2.0));
}
