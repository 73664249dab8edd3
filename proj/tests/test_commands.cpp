#include <doctest.h>

#include "horocp/commands.hpp"
#include "horocp/json_io.hpp"
#include "horocp/suite.hpp"

using namespace horocp;

TEST_CASE("command table") {
  const auto& t = command_table();
  CHECK(t.size() == 10);
  for (const auto& c : t) CHECK_FALSE(c.help.empty());
}

TEST_CASE("separate on the diamond generating set") {
  const auto oc = run_command("separate", {{"group", "Z2"}, {"gens", "diamond"}});
  CHECK(oc.exit_code == kExitOk);
  const auto& r = oc.document["result"];
  CHECK(r["separated"].get<bool>());
  CHECK(r["rank"].get<int>() == 2);
  CHECK(r["witness"] == "FacetSpan");
  CHECK(oc.document["inputs"]["gens"] == "diamond");
  CHECK(oc.document["inputs"]["horizon"] == "10000");
  CHECK(r.contains("anchor"));
}

TEST_CASE("separate reports the central length") {
  const auto oc = run_command("separate", {{"group", "Z"}, {"length", "central-sqrt"}});
  CHECK(oc.exit_code == kExitOk);
  CHECK_FALSE(oc.document["result"]["separated"].get<bool>());
  CHECK(oc.document["result"]["sublinearity"]["vanishing"].get<bool>());
}

TEST_CASE("verify one check with overrides") {
  const auto oc = run_command("verify", {{"check", "cocycle"}, {"group", "H3"}, {"radius", "8"}});
  CHECK(oc.exit_code == kExitOk);
  const auto& checks = oc.document["result"]["checks"];
  REQUIRE(checks.size() == 1);
  CHECK(checks[0]["check"] == "cocycle");
  CHECK(checks[0]["pass"].get<bool>());
  CHECK(oc.document["result"]["failed"].get<int>() == 0);
}

TEST_CASE("usage errors exit with 2") {
  auto oc = run_command("facets", {{"bogus", "1"}});
  CHECK(oc.exit_code == kExitUsage);
  CHECK(oc.document["diagnostics"].contains("error"));
  CHECK(run_command("no-such-command", {}).exit_code == kExitUsage);
  CHECK(run_command("verify", {{"check", "no-such-check"}}).exit_code == kExitUsage);
  CHECK(run_command("mk-distance", {{"n", "1"}}).exit_code == kExitUsage);
  oc = run_command("stable-norm", {{"group", "H3"}, {"g", "(1,0,0)"}});
  CHECK(oc.exit_code == kExitUsage);
  CHECK(oc.document["diagnostics"]["error"]["code"] == "group_mismatch");
}

TEST_CASE("small commands") {
  auto oc = run_command("group-ball", {{"group", "Z2"}, {"radius", "2"}});
  CHECK(oc.document["result"]["size"].get<int>() == 13);
  oc = run_command("facets", {{"group", "Z2"}, {"gens", "hexagonal"}});
  CHECK(oc.document["result"]["count"].get<int>() == 6);
  oc = run_command("mk-distance", {{"n", "2"}});
  CHECK(oc.document["result"]["lower_bound"].get<double>() == doctest::Approx(2).epsilon(1e-9));
  oc = run_command("af-triple", {{"orders", "2,3"}});
  CHECK(oc.exit_code == kExitOk);
  oc = run_command("stable-norm", {{"group", "H3"}, {"g", "(0,0,1)"}, {"horizon", "9"}});
  CHECK(oc.document["result"]["value"].get<double>() == doctest::Approx(12.0 / 9.0).epsilon(1e-15));
}

TEST_CASE("config text") {
  const auto c = parse_config_text("# comment\ngroup = H3\n\nradius=4  # trailing\n");
  CHECK(c.at("group") == "H3");
  CHECK(c.at("radius") == "4");
  CHECK(c.size() == 2);
}

TEST_CASE("json formatting") {
  nlohmann::json j = {{"b", 1.0}, {"a", 0.1}, {"c", std::nan("")}, {"d", 3}, {"e", 1e300}};
  const std::string s = dump_json(j, 0);
  CHECK(s.find("\"a\"") < s.find("\"b\""));
  CHECK(s.find("0.10000000000000001") != std::string::npos);
  CHECK(s.find("\"b\":1.0") != std::string::npos);
  CHECK(s.find("\"c\":null") != std::string::npos);
  CHECK(s.find("\"d\":3") != std::string::npos);
  CHECK(s.find("e+300") != std::string::npos);
}

TEST_CASE("suite is deterministic") {
  SuiteOptions o;
  o.seed = 5;
  const auto a = run_suite_check("cocycle", o).to_json();
  const auto b = run_suite_check("cocycle", o).to_json();
  CHECK(dump_json(a) == dump_json(b));
  CHECK(suite_check_names().size() == 15);
}
