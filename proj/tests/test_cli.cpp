#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "slicerank/cli.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;

  json parsed() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = slicerank::cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("slicerank_test_" + name)).string();
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

} // namespace

TEST_CASE("constant --digits 5") {
  const auto r = run({"constant", "--digits", "5"});
  REQUIRE(r.code == 0);
  const auto j = r.parsed();
  CHECK(j["schema_version"] == "1.0");
  CHECK(j["command"] == "constant");
  CHECK(j["status"] == "pass");
  CHECK(j["results"]["c"] == "0.01446");
  CHECK(j["config"]["digits"] == 5);
  CHECK_FALSE(j.contains("timing"));
  const auto ordered = nlohmann::ordered_json::parse(r.out);
  std::vector<std::string> keys;
  for (auto it = ordered.begin(); it != ordered.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"schema_version", "command", "config", "paper_anchor",
                                         "results", "status"});
}

TEST_CASE("constant default digits and csv") {
  const auto r = run({"constant"});
  REQUIRE(r.code == 0);
  CHECK(r.parsed()["results"]["c"].get<std::string>().rfind("0.01446", 0) == 0);
  const auto c = run({"constant", "--digits", "5", "--format", "csv"});
  CHECK(c.out == "digits,c,t_star\n5,0.01446,0.70724\n");
}

TEST_CASE("bound --n 9 --all-k") {
  const auto r = run({"bound", "--n", "9", "--all-k"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string header, line, k4;
  std::getline(lines, header);
  CHECK(header ==
        "n,k,p,degree_bound,r,slice_size,rank_ceiling_exact,rank_ceiling_gf,ratio,chromatic_lb,"
        "active_window");
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    if (line.rfind("9,4,", 0) == 0) k4 = line;
  }
  CHECK(rows == 4);
  CHECK(k4.rfind("9,4,3,13,4,126,768,", 0) == 0);
  CHECK(k4.find(",21/128,1,false") != std::string::npos);
}

TEST_CASE("bound modes and json") {
  const auto exact = run({"bound", "--n", "9", "--mode", "exact"});
  CHECK(exact.out.find("rank_ceiling_gf") == std::string::npos);
  const auto gf = run({"bound", "--n", "9", "--mode", "gf"});
  CHECK(gf.out.find("rank_ceiling_exact") == std::string::npos);
  const auto j = run({"bound", "--n", "9", "--k", "4", "--format", "json"}).parsed();
  REQUIRE(j["results"]["rows"].size() == 1);
  const auto& row = j["results"]["rows"][0];
  CHECK(row["slice_size"] == "126");
  CHECK(row["rank_ceiling_exact"] == "768");
  CHECK(row["chromatic_lb"] == "1");
  CHECK(j["results"]["exact_within_gf"] == true);
  CHECK(j["config"]["domain"] == "exact");
}

TEST_CASE("bound switches to the log domain") {
  const auto j = run({"bound", "--n", "20000", "--k", "5000", "--format", "json"}).parsed();
  CHECK(j["config"]["domain"] == "log");
  CHECK(j["results"]["rows"].size() == 1);
  const auto forced = run({"bound", "--n", "100", "--log", "--format", "json"}).parsed();
  CHECK(forced["results"]["domain"] == "log");
  const auto csv = run({"bound", "--n", "100", "--log"});
  CHECK(csv.out.rfind("n,k,p,r,log_slice_size,log_rank_ceiling,log_ratio\n", 0) == 0);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"bound", "--n", "9", "--k", "4", "--all-k"}).code == 2);
  CHECK(run({"bound", "--n", "9", "--mode", "fast"}).code == 2);
  CHECK(run({"bound", "--n", "9", "--k", "5"}).code == 2);
  CHECK(run({"bound", "--n", "1"}).code == 2);
  CHECK(run({"verify", "--n", "5"}).code == 2);
  CHECK(run({"verify", "--n", "5", "--k", "9"}).code == 2);
  CHECK(run({"verify", "--n", "5", "--k", "2", "--exhaustive", "--sample", "10"}).code == 2);
  CHECK(run({"verify", "--n", "5", "--k", "2", "--format", "csv"}).code == 2);
  CHECK(run({"search", "--n", "7", "--k", "4", "--prime", "9"}).code == 2);
  CHECK(run({"constant", "--digits", "0"}).code == 2);
  CHECK(run({"constant", "--help"}).code == 0);
}

TEST_CASE("verify") {
  const auto r = run({"verify", "--n", "6", "--k", "3"});
  REQUIRE(r.code == 0);
  const auto j = r.parsed();
  CHECK(j["results"]["scope"] == "exhaustive");
  CHECK(j["results"]["triples"] == 8000);
  CHECK(j["results"]["passed"] == true);
  CHECK(j["results"]["checks"].size() == 12);
  CHECK(j["results"]["greedy_witness_diagonal"]["passed"] == true);

  const auto s = run({"verify", "--n", "12", "--k", "6", "--sample", "500", "--seed", "4"});
  REQUIRE(s.code == 0);
  CHECK(s.parsed()["results"]["scope"] == "sampled");
  CHECK(s.parsed()["config"]["samples"] == 500);

  const auto p = run({"verify", "--n", "6", "--k", "3", "--prime", "7"});
  CHECK(p.code == 0);
  CHECK(p.parsed()["config"]["p"] == 7);
  CHECK(run({"verify", "--n", "40", "--k", "20"}).code == 2);
}

TEST_CASE("expand") {
  const auto r = run({"expand", "--n", "5", "--k", "2"});
  REQUIRE(r.code == 0);
  const auto j = r.parsed();
  CHECK(j["results"]["expansion_check"]["passed"] == true);
  CHECK(j["results"]["cube_check"]["checked"] == 32768);
  CHECK(j["results"]["decomposition"]["slice_count"]["within_ceiling"] == true);
  CHECK(j["results"]["expansion"]["within_degree_bound"] == true);

  const auto s = run({"expand", "--n", "7", "--k", "4", "--check", "sample", "--samples", "10000",
                      "--seed", "1"});
  REQUIRE(s.code == 0);
  const auto js = s.parsed();
  CHECK(js["results"]["decomposition"]["slice_count"]["ceiling"] == "192");
  CHECK(js["results"]["decomposition"]["check"]["checked"] == 10000);

  const auto refused = run({"expand", "--n", "11", "--k", "4"});
  CHECK(refused.code == 2);
  CHECK(refused.err.find("estimated") != std::string::npos);
  CHECK(run({"expand", "--n", "6", "--k", "3", "--prime", "7"}).code == 2);
  CHECK(run({"expand", "--n", "6", "--k", "3", "--prime", "7", "--max-p", "7"}).code == 0);
}

TEST_CASE("expand --dump") {
  const auto path = temp_path("dump.json");
  const auto r = run({"expand", "--n", "2", "--k", "1", "--dump", path});
  REQUIRE(r.code == 0);
  const auto d = json::parse(slurp(path));
  std::remove(path.c_str());
  const auto& terms = d["monomial_map"]["terms"];
  CHECK(terms.size() > 0);
  for (const auto& t : terms) {
    REQUIRE(t.size() == 4);
    CHECK(t[0].get<std::string>().size() == 1);
    CHECK(t[3].get<int>() >= 1);
    CHECK(t[3].get<int>() <= 2);
  }
  CHECK(d["decomposition"]["entries"].size() ==
        r.parsed()["results"]["decomposition"]["entries"].get<std::size_t>());
}

TEST_CASE("search examples") {
  const auto a = run({"search", "--n", "7", "--k", "4"});
  REQUIRE(a.code == 0);
  const auto ja = a.parsed();
  CHECK(ja["results"]["oracle"]["size"] == 35);
  CHECK(ja["results"]["oracle"]["status"] == "exact");
  CHECK(ja["results"]["witness_triangle_free"] == true);
  CHECK(ja["results"]["witness_diagonal"]["passed"] == true);
  CHECK(ja["results"]["oracle"]["witness"].size() == 35);
  CHECK(ja["results"]["oracle"]["witness"][0] == "0f");

  const auto b = run({"search", "--n", "6", "--k", "2"});
  REQUIRE(b.code == 0);
  CHECK(b.parsed()["results"]["oracle"]["size"] == 15);
}

TEST_CASE("search with a tiny node budget is partial") {
  const auto r = run({"search", "--n", "9", "--k", "4", "--nodes", "10"});
  CHECK(r.code == 3);
  const auto j = r.parsed();
  CHECK(j["status"] == "partial");
  CHECK(j["results"]["oracle"]["status"] == "lower_bound_only");
  CHECK(j["results"]["witness_triangle_free"] == true);
}

TEST_CASE("report bundle") {
  const auto r = run({"report", "--n-list", "6", "7", "20000"});
  REQUIRE(r.code == 0);
  const auto j = r.parsed();
  CHECK(j["results"]["constant"]["c"].get<std::string>().rfind("0.01446", 0) == 0);
  REQUIRE(j["results"]["instances"].size() == 3);
  CHECK(j["results"]["instances"][0]["slices"].size() == 3);
  CHECK(j["results"]["instances"][1]["slices"][2]["search"]["oracle"]["size"] == 35);
  CHECK(j["results"]["instances"][2]["bound"]["domain"] == "log");
  CHECK(j["results"]["instances"][2]["slices"].empty());
}

TEST_CASE("output file, timing and text") {
  const auto path = temp_path("out.json");
  const auto r = run({"constant", "--digits", "5", "--output", path, "--timing"});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  const auto j = json::parse(slurp(path));
  std::remove(path.c_str());
  CHECK(j["timing"]["seconds"].is_number());
  CHECK(j["config"]["timing"] == true);

  const auto t = run({"constant", "--digits", "5", "--format", "text"});
  CHECK(t.out.find("results.c: 0.01446") != std::string::npos);
  CHECK(run({"constant", "--output", "/nonexistent/dir/x.json"}).code == 2);
}

TEST_CASE("identical flags give byte-identical output") {
  const std::vector<std::vector<std::string>> commands{
      {"constant", "--digits", "12"},
      {"bound", "--n", "40", "--format", "json"},
      {"bound", "--n", "30000", "--format", "json"},
      {"verify", "--n", "8", "--k", "3", "--sample", "2000", "--seed", "5"},
      {"expand", "--n", "6", "--k", "3", "--check", "sample", "--samples", "500"},
      {"search", "--n", "8", "--k", "3"},
      {"report", "--n-list", "5"}};
  for (const auto& c : commands) {
    const auto a = run(c);
    const auto b = run(c);
    INFO(c[0]);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
  }
}
