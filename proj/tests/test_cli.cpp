#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "doctest.h"
#include "rootcert/autgrp.hpp"
#include "rootcert/cli.hpp"

using namespace rootcert;
using Json = nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("thm-key report") {
  const auto r = run({"verify", "thm-key", "A2", "3", "--json"});
  REQUIRE(r.code == 0);
  const auto j = Json::parse(r.out);
  CHECK(j["meta"]["type"] == "A2");
  CHECK(j["meta"]["rank"] == 2);
  CHECK(j["meta"]["k"] == 3);
  CHECK(j["meta"]["t"] == 1);
  CHECK(j["meta"]["tool_version"] == "1.0.0");
  CHECK(j["tallies"]["root_found"] == 6);
  CHECK(j["tallies"]["trivial"] == 1);
  CHECK(j["tallies"]["excluded"] == 2);
  CHECK(j["tallies"]["failure"] == 0);
  CHECK(j["rows"].size() == 9);

  // One report per t for non simply laced types.
  const auto g = run({"verify", "thm-key", "G2", "2", "--json"});
  REQUIRE(g.code == 0);
  const auto a = Json::parse(g.out);
  REQUIRE(a.is_array());
  REQUIRE(a.size() == 2);
  CHECK(a[0]["tallies"]["root_found"] == 3);
  CHECK(a[1]["meta"]["t"] == 3);
  CHECK(a[1]["tallies"]["root_found"] == 6);

  const auto only = Json::parse(run({"verify", "thm-key", "G2", "2", "--t", "3", "--json"}).out);
  CHECK(only["meta"]["t"] == 3);
}

TEST_CASE("catalog") {
  const auto r = run({"catalog", "A2", "3", "--json"});
  REQUIRE(r.code == 0);
  const auto j = Json::parse(r.out);
  REQUIRE(j["rows"].size() == 9);
  int found = 0;
  for (const auto& row : j["rows"]) found += row["certificate"] == "root_found";
  CHECK(found == 6);
  CHECK(j["rows"][0]["rho"] == "0");

  // Orbit ids agree with the action of every group element.
  const auto space = build_coset_space("A2", 3);
  const auto group = aut_group(build_root_system("A2"));
  for (const auto& e : *group.elements) {
    const auto pi = act_on_cosets(*space, e);
    for (std::size_t id = 0; id < space->size(); ++id)
      CHECK(j["rows"][id]["orbit"] == j["rows"][pi.images[id]]["orbit"]);
  }
  // Root cosets form one orbit, as do the two excluded cosets.
  std::set<std::size_t> root_orbits;
  for (const auto& row : j["rows"])
    if (row["certificate"] == "root_found") root_orbits.insert(row["orbit"].get<std::size_t>());
  CHECK(root_orbits.size() == 1);

  const auto e8 = run({"catalog", "E8", "2"});
  CHECK(e8.code == 0);
  CHECK(e8.out.find("simple-current list incomplete for (E8,2)") != std::string::npos);
  const auto e8j = Json::parse(run({"catalog", "E8", "2", "--json"}).out);
  CHECK(e8j["meta"]["banners"][0] == "simple-current list incomplete for (E8,2)");
  CHECK(e8j["rows"].size() == 256);
}

TEST_CASE("aut") {
  const auto r = run({"aut", "C4", "--json"});
  REQUIRE(r.code == 0);
  const auto j = Json::parse(r.out);
  CHECK(j["tallies"]["order"] == 384);
  CHECK(j["tallies"]["short_order"] == 1152);
  CHECK(j["tallies"]["index"] == 3);
  CHECK(Json::parse(run({"aut", "D4", "--json"}).out)["tallies"]["order"] == 1152);
  CHECK(run({"aut", "E8"}).code == 3);
  CHECK(run({"aut", "D4", "--group-cap", "100"}).code == 3);
}

TEST_CASE("verify commands") {
  CHECK(run({"verify", "minnorm", "B3", "2"}).code == 0);
  CHECK(run({"verify", "minnorm", "A3", "2"}).code == 0);
  CHECK(run({"verify", "faithful", "A2", "2"}).code == 0);
  CHECK(run({"verify", "faithful", "B2", "2"}).code == 0);
  CHECK(run({"verify", "symdelta", "A3", "--samples", "20", "--seed", "7"}).code == 0);
  CHECK(run({"verify", "hamming"}).code == 0);
  CHECK(run({"verify", "lengths", "A2", "3", "--ball", "8"}).code == 0);
  CHECK(run({"verify", "reduce", "E6", "2"}).code == 0);
  const auto j = Json::parse(run({"verify", "hamming", "--json"}).out);
  CHECK(j["tallies"]["failures"] == 0);
  CHECK(j["meta"]["type"].is_null());
}

TEST_CASE("formats and determinism") {
  const auto a = run({"catalog", "B3", "3", "--json", "--threads", "1"});
  const auto b = run({"catalog", "B3", "3", "--json", "--threads", "8"});
  CHECK(a.out == b.out);
  CHECK(run({"catalog", "B3", "3"}).out == run({"catalog", "B3", "3"}).out);

  const auto csv = run({"cosets", "A2", "3", "--format", "csv"});
  REQUIRE(csv.code == 0);
  std::istringstream lines(csv.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "id,rep,norm,weight_class");
  int n = 0;
  for (std::string line; std::getline(lines, line);) ++n;
  CHECK(n == 9);

  const auto multi = run({"verify", "thm-key", "G2", "2", "--format", "csv"});
  CHECK(multi.out.rfind("t,id,rep,", 0) == 0);
  CHECK(multi.out.find("\n3,1,") != std::string::npos);

  const auto path = (std::filesystem::temp_directory_path() / "rootcert_cli_test.json").string();
  const auto w = run({"verify", "thm-key", "B2", "2", "--out", path});
  REQUIRE(w.code == 0);
  std::ifstream f(path);
  const auto j = Json::parse(f);
  REQUIRE(j.is_array());
  CHECK(j[1]["tallies"]["root_found"] == 4);
  const auto again = Json::parse(run({"verify", "thm-key", "B2", "2", "--json"}).out);
  CHECK(j == again);
  std::remove(path.c_str());

  // Nothing to reduce at level 1 for a simply laced type: a valid empty report.
  const auto empty = run({"verify", "reduce", "A2", "1", "--json"});
  CHECK(empty.code == 0);
  CHECK(Json::parse(empty.out)["rows"].empty());
}

TEST_CASE("exit codes") {
  CHECK(run({"--help"}).code == 0);
  CHECK(run({}).code == 2);
  CHECK(run({"roots", "X9"}).code == 2);
  CHECK(run({"cosets", "A2"}).code == 2);
  CHECK(run({"cosets", "A2", "3", "--format", "xml"}).code == 2);
  CHECK(run({"verify", "thm-key", "B2", "2", "--t", "3"}).code == 2);
  CHECK(run({"verify", "thm-key", "A2", "1"}).code == 2);
  CHECK(run({"verify", "lengths", "A2", "3", "--bfs-cap", "1"}).code == 3);
  CHECK(run({"verify", "thm-key", "A2", "3", "--out", "/nonexistent/dir/report.json"}).code == 2);
}
