#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <sstream>

#include "chcv/driver.hpp"
#include "json.hpp"

using namespace chcv;

namespace {

Program t4() {
  std::ifstream in(std::string(CHCV_TEST_DATA) + "/t4.pl");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_program(ss.str());
}

}  // namespace

TEST_CASE("t4 is unsafe after one refinement") {
  Verdict v = verify(t4());
  CHECK(v.kind == VerdictKind::Unsafe);
  CHECK(v.refinements == 1);
  REQUIRE(v.trace);
  REQUIRE(v.source_trace);
  CHECK(to_string(*v.source_trace) == "c1(c2(c5,c3))");
  CHECK(is_satisfiable(v.witness_constraints));
  CHECK(v.witness_constraints.holds_at(v.witness_point));
  CHECK(feasible(build_and_tree(v.program, *v.trace)));
  CHECK(v.time_ms < 10000);
  CHECK(to_table_row(v, "t4.pl").rfind("t4.pl | 1 | unsafe | ", 0) == 0);
}

TEST_CASE("smallest unsafe program") {
  Verdict v = verify(parse_program("false :- true."));
  CHECK(v.kind == VerdictKind::Unsafe);
  CHECK(v.refinements == 0);
  REQUIRE(v.trace);
  CHECK(to_string(*v.trace) == "c1");
}

TEST_CASE("body-unsatisfiable integrity constraint is safe") {
  Program p = parse_program("p(X) :- X >= 0.\nfalse :- X < 0, p(X), X >= 1.");
  Verdict v = verify(p);
  CHECK(v.kind == VerdictKind::Safe);
  CHECK(v.refinements == 0);
  CHECK(is_inductive_model(v.program, v.model));
  CHECK(v.model.get("false", 0).is_bottom());
}

TEST_CASE("safe loop proven by analysis") {
  Program p = parse_program(
      "p(X) :- X = 0.\n"
      "p(Y) :- p(X), X < 10, Y = X + 1.\n"
      "false :- p(X), X < 0.\n");
  Verdict v = verify(p);
  CHECK(v.kind == VerdictKind::Safe);
  CHECK(is_inductive_model(v.program, v.model));
}

TEST_CASE("limits fold into unknown") {
  Config cfg;
  cfg.max_refinements = 0;
  Verdict v = verify(t4(), cfg);
  CHECK(v.kind == VerdictKind::Unknown);
  CHECK(v.reason.find("refinement limit") != std::string::npos);

  Config tight;
  tight.max_analysis_iterations = 1;
  Verdict w = verify(t4(), tight);
  CHECK(w.kind == VerdictKind::Unknown);
  CHECK(w.reason.find("resource limit") == 0);

  Config zero;
  zero.fm_max_constraints = 0;
  CHECK_THROWS_AS(verify(t4(), zero), std::invalid_argument);
}

TEST_CASE("runs are deterministic") {
  Config cfg;
  cfg.dumps = {DumpKind::QA, DumpKind::Spec, DumpKind::Model, DumpKind::PS};
  Verdict a = verify(t4(), cfg), b = verify(t4(), cfg);
  CHECK(a.kind == b.kind);
  CHECK(a.refinements == b.refinements);
  CHECK(*a.trace == *b.trace);
  REQUIRE(a.dumps.size() == b.dumps.size());
  for (std::size_t i = 0; i < a.dumps.size(); ++i) {
    CHECK(a.dumps[i].name == b.dumps[i].name);
    CHECK(a.dumps[i].content == b.dumps[i].content);
  }
  std::vector<std::string> names;
  for (const auto& d : a.dumps) names.push_back(d.name);
  CHECK(std::find(names.begin(), names.end(), "iter0.qa.pl") != names.end());
  CHECK(std::find(names.begin(), names.end(), "iter0.ps.pl") != names.end());
  CHECK(std::find(names.begin(), names.end(), "iter1.model.txt") != names.end());
}

TEST_CASE("json report") {
  Verdict v = verify(t4());
  auto j = nlohmann::json::parse(to_json(v, "t4.pl"));
  CHECK(j["program"] == "t4.pl");
  CHECK(j["verdict"] == "unsafe");
  CHECK(j["iterations"] == 1);
  CHECK(j["source_trace"] == "c1(c2(c5,c3))");
  CHECK(j["events"].is_array());
  CHECK(j["events"].size() > 0);

  Verdict s = verify(parse_program("p(X) :- X >= 0.\nfalse :- X < 0, p(X)."));
  auto k = nlohmann::json::parse(to_json(s, "s.pl"));
  CHECK(k["verdict"] == "safe");
  CHECK(k["witness"].is_array());

  Config cfg;
  cfg.max_refinements = 0;
  auto u = nlohmann::json::parse(to_json(verify(t4(), cfg), "t4.pl"));
  CHECK(u["verdict"] == "unknown");
  CHECK(u["witness"].is_null());
  CHECK(u["reason"].is_string());
}

TEST_CASE("thresholds can be switched off") {
  Config cfg;
  cfg.use_thresholds = false;
  Verdict v = verify(parse_program("false :- true."), cfg);
  CHECK(v.kind == VerdictKind::Unsafe);
}
