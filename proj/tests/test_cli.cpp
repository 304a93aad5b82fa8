#include "forge/cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

using namespace forge;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "forge");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "forge_test_cli";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string write(const std::string& name, const std::string& text) {
  const auto p = scratch(name);
  std::ofstream(p) << text;
  return p.string();
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

} // namespace

TEST_CASE("every operation is reachable") {
  const std::vector<std::string> ops{
      "parse_formula", "print_formula", "substitute", "free_variables", "numeral", "formula_size",
      "robinson_axioms", "match_schema", "check_line", "proof_of", "check_witness", "proof_of_with_cost",
      "encode_formula", "eval_closed_term", "eval_delta0", "provability_formula_bounded", "con_bounded",
      "diagonalize", "goedel_sentence_bounded", "enumerate_proofs", "l_k_membership", "shortest_proof_length",
      "extend_with_con", "regeneration_demo", "is_tautology_bruteforce", "check_resolution", "taut_proof_check",
      "translate_delta0", "measure_s_p", "p_simulation_check", "run"};
  std::set<std::string> covered;
  for (const auto& c : cli::command_table()) covered.insert(c.operations.begin(), c.operations.end());
  for (const auto& op : ops) CHECK_MESSAGE(covered.count(op), op);
}

TEST_CASE("every command answers --help") {
  for (const auto& c : cli::command_table()) {
    std::vector<std::string> args;
    std::istringstream words(c.path);
    for (std::string w; words >> w;) args.push_back(w);
    args.push_back("--help");
    const auto r = run(args);
    CHECK_MESSAGE(r.code == cli::kExitOk, c.path);
    CHECK_FALSE(r.out.empty());
  }
  const auto v = run({"--version"});
  CHECK(v.code == 0);
  CHECK(v.out.find("forge ") != std::string::npos);
}

TEST_CASE("check exit codes") {
  const auto proof = write("one.fp", "0. 0 = 0 ; EQREFL[t=0]\n");
  CHECK(run({"check", "q", proof, "0 = 0"}).code == cli::kExitOk);
  CHECK(run({"check", "q", proof, "0 = S(0)"}).code == cli::kExitNegative);
  CHECK(run({"check", "q", proof, "0 = 0", "--k", "1"}).code == cli::kExitOk);
  const auto usage = run({"check", "q", proof});
  CHECK(usage.code == cli::kExitUsage);
  CHECK_FALSE(usage.err.empty());
  CHECK(run({"check", "q", proof, "0 = "}).code == cli::kExitUsage);
  CHECK(run({"check", "zf", proof, "0 = 0"}).code == cli::kExitUsage);
  CHECK(run({"check", "q", write("bad.fp", "0. 0 = 0\n"), "0 = 0"}).code == cli::kExitUsage);
  CHECK(run({"frobnicate"}).code == cli::kExitUsage);
}

TEST_CASE("verdict commands") {
  CHECK(run({"eval", "q", "0 = 0"}).code == 0);
  CHECK(run({"eval", "q", "0 = S(0)"}).code == 1);
  CHECK(run({"member", "q", "0 = 0 -> 0 = 0", "--k", "1"}).code == 1);
  CHECK(run({"member", "q", "0 = 0 -> 0 = 0", "--k", "2"}).code == 0);
  CHECK(run({"search", "q", "0 = 0", "--bound", "3"}).code == 0);
  CHECK(run({"search", "q", "!(0 = 0)", "--bound", "10"}).code == 1);
  CHECK(run({"con", "q", "--m", "4"}).code == 0);
  CHECK(run({"prop", "taut", "x0 | !x0"}).code == 0);
  CHECK(run({"prop", "taut", "x0"}).code == 1);
  const auto cnf = write("unit.cnf", "p cnf 1 2\n1 0\n-1 0\n");
  CHECK(run({"prop", "check", cnf, write("unit.res", "i 0\ni 1\nr 0 1 1\n")}).code == 0);
  CHECK(run({"prop", "check", cnf, write("wrong.res", "i 0\ni 1\nr 0 1 2\n")}).code == 1);
  CHECK(run({"prop", "check", cnf, write("junk.res", "z\n")}).code == 2);
  const auto t = run({"prop", "translate", "x = x", "--n", "2"});
  CHECK(t.code == 0);
  CHECK_FALSE(t.out.empty());
  CHECK(run({"demo", "--depth", "1"}).code == 0);
}

TEST_CASE("diagonalize writes a checkable proof") {
  const auto out = scratch("eq.fp");
  std::filesystem::remove(out);
  REQUIRE(run({"diagonalize", "q", "--psi", "x = 0", "--out", out.string()}).code == 0);
  REQUIRE(std::filesystem::exists(out));
  std::string text = slurp(out);
  CHECK_FALSE(text.empty());
}

TEST_CASE("bench verifier csv is monotone") {
  const auto r = run({"bench", "verifier", "--k", "10:200", "--m", "16"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "k,m,symbol_comparisons,wall_ns");
  long prev = -1;
  std::size_t rows = 0;
  while (std::getline(lines, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
    REQUIRE(cells.size() == 4);
    const long cmp = std::stol(cells[2]);
    CHECK(cmp > prev);
    prev = cmp;
    ++rows;
  }
  CHECK(rows == 6);
}

TEST_CASE("suite reports are reproducible") {
  const auto config = write("small.cfg", "# small run\nseed = 3\n");
  const auto report = scratch("report.json");
  const auto ra = run({"suite", "--config", config, "--only", "resolution,translation", "--report", report.string()});
  const std::string first = slurp(report);
  const auto rb = run({"suite", "--config", config, "--only", "7,8", "--report", report.string()});
  CHECK(ra.code == 0);
  CHECK(rb.code == 0);
  CHECK(ra.out == rb.out);
  CHECK(slurp(report) == first);
  const auto j = nlohmann::ordered_json::parse(first);
  CHECK(j["schema"] == "forge.report/1");
  CHECK(j["criteria"].size() == 2);
  CHECK(j["all_pass"] == true);
  CHECK(run({"suite", "--config", write("bad.cfg", "nonsense = 1\n")}).code == cli::kExitUsage);
  const auto cfg = run({"suite", "--config", config, "--print-config"});
  CHECK(cfg.code == 0);
  CHECK(cfg.out.find("csv_dir = \n") != std::string::npos);
  CHECK(cfg.out.find("seed = 3\n") != std::string::npos);
}
