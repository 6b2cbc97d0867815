#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <sstream>

#include "chcv/qa.hpp"
#include "chcv/specialise.hpp"

using namespace chcv;

namespace {

Program t4() {
  std::ifstream in(std::string(CHCV_TEST_DATA) + "/t4.pl");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_program(ss.str());
}

const Atom kGoal{"false", {}};

std::vector<std::string> names(const std::vector<Atom>& atoms) {
  std::vector<std::string> out;
  for (const auto& a : atoms) out.push_back(a.predicate);
  return out;
}

}  // namespace

TEST_CASE("query-answer clauses for c1") {
  Program p = t4();
  Program qa = qa_transform(p, kGoal);
  const Clause* ans = qa.find("c1_ans");
  REQUIRE(ans);
  CHECK(ans->head.predicate == "false__a");
  CHECK(names(ans->body) == std::vector<std::string>{"false__q", "l__a"});
  CHECK(ans->body[1].args == p.find("c1")->body[0].args);
  CHECK(ans->constraint == p.find("c1")->constraint);

  const Clause* q1 = qa.find("c1_q1");
  REQUIRE(q1);
  CHECK(q1->head.predicate == "l__q");
  CHECK(q1->head.args == p.find("c1")->body[0].args);
  CHECK(names(q1->body) == std::vector<std::string>{"false__q"});

  const Clause* g = qa.find("goal");
  REQUIRE(g);
  CHECK(g->head.predicate == "false__q");
  CHECK(g->body.empty());
  CHECK(g->constraint.empty());
}

TEST_CASE("query-answer clause shapes") {
  Program p = t4();
  Program qa = qa_transform(p, kGoal);
  // c5 has no body atoms: answer clause only
  CHECK(qa.find("c5_ans"));
  CHECK_FALSE(qa.find("c5_q1"));
  // c2 has two body atoms
  const Clause* q2 = qa.find("c2_q2");
  REQUIRE(q2);
  CHECK(names(q2->body) == std::vector<std::string>{"l__q", "l_body__a"});
  CHECK(names(qa.find("c2_q1")->body) == std::vector<std::string>{"l__q"});
  CHECK(names(qa.find("c2_ans")->body) == std::vector<std::string>{"l__q", "l_body__a", "l__a"});

  std::size_t expected = 1;
  for (const auto& c : p.clauses()) expected += 1 + c.body.size();
  CHECK(qa.size() == expected);
}

TEST_CASE("query-answer name collisions") {
  Program p = parse_program("p(X) :- X > 0.\np__q(X) :- X > 0.\nfalse :- p(X).", ParseOptions{false});
  CHECK_THROWS_AS(qa_transform(p, kGoal), ProgramError);
  CHECK(query_name("p") == "p__q");
  CHECK(answer_name("p") == "p__a");
}

TEST_CASE("strengthening t4 deletes c4 and keeps c1") {
  Program p = t4();
  Program qa = qa_transform(p, kGoal);
  AnalysisResult r = analyze(qa, thresholds(qa));
  Strengthened s = strengthen_detailed(p, r.model);
  CHECK(s.deleted == std::vector<std::string>{"c4"});
  REQUIRE(s.program.find("c1"));
  CHECK_FALSE(s.program.find("c4"));
  CHECK(equivalent(s.program.find("c1")->constraint, p.find("c1")->constraint));
  for (const auto& c : s.program.clauses()) {
    CHECK(entails(c.constraint, p.find(c.id)->constraint));
  }
  CHECK_FALSE(early_safe(s.program));

  std::string dump = dump_specialised(p, s);
  CHECK(dump.find("c4. l(I,A,B,N) :- false.") != std::string::npos);

  // idempotent up to equivalence
  Program twice = strengthen(s.program, r.model);
  REQUIRE(twice.size() == s.program.size());
  for (std::size_t i = 0; i < twice.size(); ++i) {
    CHECK(equivalent(twice.clauses()[i].constraint, s.program.clauses()[i].constraint));
  }
}

TEST_CASE("strengthening with top and bottom models") {
  Program p = t4();
  Program qa = qa_transform(p, kGoal);
  Program top = strengthen(p, AbstractModel::top(qa));
  REQUIRE(top.size() == p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    CHECK(equivalent(top.clauses()[i].constraint, p.clauses()[i].constraint));
  }
  CHECK(strengthen(p, AbstractModel::bottom(qa)).size() == 0);
}

TEST_CASE("early safety") {
  CHECK(early_safe(parse_program("p(X) :- X > 0.")));
  CHECK_FALSE(early_safe(parse_program("false :- true.")));
}

TEST_CASE("safe program is proven by specialisation alone") {
  Program p = parse_program("p(X) :- X >= 0.\nfalse :- X < 0, p(X), X >= 1.");
  Program qa = qa_transform(p, kGoal);
  Program s = strengthen(p, analyze(qa, thresholds(qa)).model);
  CHECK(early_safe(s));
}
