#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "glab/cli.hpp"
#include "glab/line_families.hpp"

using namespace glab;
using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "glab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

json report_json(std::vector<std::string> args) {
  args.push_back("--json");
  args.push_back("-");
  const auto o = invoke(args);
  REQUIRE(o.code == cli::kExitPass);
  return json::parse(o.out);
}

std::filesystem::path temp_file(const std::string& name, const json& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << content.dump();
  return path;
}

}  // namespace

TEST_CASE("exit codes") {
  CHECK(invoke({"veronese", "--n", "0"}).code == cli::kExitUsage);
  CHECK(invoke({"veronese", "--n", "7"}).code == cli::kExitUsage);
  CHECK(invoke({"veronese", "--n", "2", "--prime", "7"}).code == cli::kExitUsage);
  CHECK(invoke({"veronese", "--n", "2", "--prime", "1000001"}).code == cli::kExitUsage);
  CHECK(invoke({"secant", "--n", "2", "--kmax", "3"}).code == cli::kExitUsage);
  CHECK(invoke({"scroll", "--r", "5"}).code == cli::kExitUsage);
  CHECK(invoke({"ix-tangent", "--n", "1"}).code == cli::kExitUsage);
  CHECK(invoke({"bogus"}).code == cli::kExitUsage);
  CHECK(invoke({}).code == cli::kExitUsage);
  CHECK(invoke({"family", "check", "/nonexistent/family.json"}).code == cli::kExitUsage);

  const auto ok = invoke({"ix-tangent", "--n", "2"});
  CHECK(ok.code == cli::kExitPass);
  CHECK(ok.out.find("PASS") != std::string::npos);
  CHECK(invoke({"veronese", "--n", "2", "--seed", "1"}).code == cli::kExitPass);
  CHECK(invoke({"veronese", "--n", "1", "--prime", "1000003"}).code == cli::kExitPass);
}

TEST_CASE("help exits cleanly") {
  const auto o = invoke({"--help"});
  CHECK(o.code == cli::kExitPass);
  CHECK(o.out.find("veronese") != std::string::npos);
}

TEST_CASE("unsafe size lifts only the upper guard") {
  cli::RunConfig c;
  c.command = "scroll";
  c.r = 5;
  CHECK_THROWS_AS(c.validate(), Error);
  c.unsafe_size = true;
  CHECK_NOTHROW(c.validate());
  c.r = 0;
  CHECK_THROWS_AS(c.validate(), Error);
}

TEST_CASE("secant table") {
  const json j = report_json({"secant", "--n", "3", "--kmax", "3"});
  const auto& t = j["details"]["table"];
  REQUIRE(t.size() == 3);
  const std::vector<std::array<std::size_t, 4>> expected{{1, 3, 1, 4}, {2, 5, 2, 3}, {3, 7, 3, 0}};
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(t[i]["k"] == expected[i][0]);
    CHECK(t[i]["r_k"] == expected[i][1]);
    CHECK(t[i]["delta_k"] == expected[i][2]);
    CHECK(t[i]["secant_dim"] == expected[i][3]);
  }
  CHECK(j["pass"] == true);
  CHECK(j["schema"] == 1);

  const json one = report_json({"secant", "--n", "1", "--kmax", "1"});
  CHECK(one["details"]["table"][0]["secant_dim"] == 0);
  CHECK(one["details"]["table"][0]["r_k"] == 3);

  // Different seeds give the same table.
  const json a = report_json({"secant", "--n", "2", "--kmax", "2", "--seed", "3"});
  const json b = report_json({"secant", "--n", "2", "--kmax", "2", "--seed", "99"});
  CHECK(a["details"]["table"] == b["details"]["table"]);
}

TEST_CASE("determinism modulo timing") {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"veronese", "--n", "2", "--seed", "7"},
        std::vector<std::string>{"scroll", "--r", "2", "--seed", "7", "--prime", "1000003"},
        std::vector<std::string>{"secant", "--n", "2", "--kmax", "2"}}) {
    json a = report_json(args);
    json b = report_json(args);
    CHECK(a.contains("timing_ms"));
    a.erase("timing_ms");
    b.erase("timing_ms");
    CHECK(a.dump() == b.dump());
  }
  json a = report_json({"veronese", "--n", "2", "--seed", "7"});
  json b = report_json({"veronese", "--n", "2", "--seed", "8"});
  CHECK(a["config"]["seed"] != b["config"]["seed"]);
}

TEST_CASE("GLAB_SEED is the default seed") {
  setenv("GLAB_SEED", "42", 1);
  const json env = report_json({"veronese", "--n", "1"});
  CHECK(env["config"]["seed"] == 42);
  const json flag = report_json({"veronese", "--n", "1", "--seed", "5"});
  CHECK(flag["config"]["seed"] == 5);
  setenv("GLAB_SEED", "not-a-number", 1);
  CHECK(invoke({"veronese", "--n", "1"}).code == cli::kExitUsage);
  unsetenv("GLAB_SEED");
}

TEST_CASE("soundness note only over prime fields") {
  CHECK_FALSE(report_json({"scroll", "--r", "1"}).contains("soundness"));
  const json p = report_json({"scroll", "--r", "1", "--prime", "1000003"});
  CHECK(p["config"]["field"] == "F_1000003");
  CHECK(p["soundness"].get<std::string>().find("1000003") != std::string::npos);
}

TEST_CASE("report pass is the conjunction of checks") {
  cli::Report r;
  r.note("info", 3);
  CHECK(r.pass());
  r.add("good", 1, 1, true);
  CHECK(r.pass());
  r.add("bad", 1, 2, false);
  CHECK_FALSE(r.pass());
  CHECK(r.to_json(false)["pass"] == false);
  CHECK_FALSE(r.to_json(false).contains("timing_ms"));
}

TEST_CASE("command reports") {
  const json v = report_json({"veronese", "--n", "1"});
  bool saw_exhaustive = false;
  for (const auto& c : v["checks"]) saw_exhaustive |= c["name"] == "projectability_exhaustive_F7.violations";
  CHECK(saw_exhaustive);
  CHECK(v["details"]["projectability_exhaustive_F7"]["pairs"] == 28);

  const json s = report_json({"scroll", "--r", "1"});
  for (const auto& c : s["checks"])
    if (c["name"] == "scroll.union_dimension") CHECK(c["observed"] == 3);

  const json ix = report_json({"ix-tangent", "--n", "3"});
  for (const auto& c : ix["checks"])
    if (c["name"] == "ix_tangent.codimension") CHECK(c["observed"] == 6);
}

TEST_CASE("family check") {
  const auto fam = temp_file("glab_test_family.json", family_to_json(veronese_family(2)));
  const json center = {{"ambient", 5}, {"rows", {{"0", "1", "0", "-1", "0", "0"}, {"0", "0", "1", "0", "-1", "0"}}}};
  const auto good = temp_file("glab_test_center.json", center);
  // A 3-space in P^5 meets the span of any two skew lines in at least a line.
  const json bad_center = {{"ambient", 5},
                           {"rows", {{1, 2, 3, 4, 5, 6}, {0, 1, -1, 2, 1, 3}, {2, 0, 1, 1, -3, 1}, {1, 1, 0, -2, 4, 7}}}};
  const auto bad = temp_file("glab_test_bad_center.json", bad_center);

  const auto ok = invoke({"family", "check", fam.string(), "--center", good.string(), "--trials", "100"});
  CHECK(ok.code == cli::kExitPass);
  const auto fail = invoke({"family", "check", fam.string(), "--center", bad.string(), "--trials", "100"});
  CHECK(fail.code == cli::kExitFail);

  const auto no_center = report_json({"family", "check", fam.string(), "--trials", "50"});
  CHECK(no_center["details"]["family"]["param_dim"] == 2);
  for (const auto& c : no_center["checks"])
    if (c["name"] == "secant.delta_1") CHECK(c["observed"] == 1);

  const auto garbage = temp_file("glab_test_garbage.json", json{{"rows", 3}});
  CHECK(invoke({"family", "check", garbage.string()}).code == cli::kExitUsage);
  const auto wrong_ambient = temp_file("glab_test_wrong.json", json{{"ambient", 3}, {"rows", json::array()}});
  CHECK(invoke({"family", "check", fam.string(), "--center", wrong_ambient.string()}).code == cli::kExitUsage);

  for (const auto& p : {fam, good, bad, garbage, wrong_ambient}) std::filesystem::remove(p);
}
