#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <sstream>

#include "chcv/qa.hpp"
#include "chcv/refine.hpp"
#include "chcv/specialise.hpp"

using namespace chcv;

namespace {

Program t4() {
  std::ifstream in(std::string(CHCV_TEST_DATA) + "/t4.pl");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_program(ss.str());
}

LinearTerm canon(std::initializer_list<long> coeffs) {
  LinearTerm t;
  std::size_t i = 0;
  for (long k : coeffs) t += LinearTerm(Var("$" + std::to_string(i++))) * Rational(k);
  return t;
}

LinearConstraint C(const LinearTerm& l, RelOp op, long r) { return LinearConstraint::make(l, op, LinearTerm(Rational(r))); }

Polyhedron fact(std::size_t arity, ConstraintSet cs) { return Polyhedron::from_constraints(canonical_args(arity), cs); }

ConstraintSet f3_constraints() {
  return {C(canon({0, 0, 0, 1}), RelOp::Gt, 0), C(canon({2, -1, 0, 0}), RelOp::Ge, 0),
          C(canon({-1, 1, 0, 0}), RelOp::Ge, 0), C(canon({-3, 0, 0, 3}), RelOp::Gt, -3),
          C(canon({3, -1, -1, 0}), RelOp::Eq, 0)};
}

struct Stage {
  Program program;
  AnalysisResult analysis;
  AndTree tree;
};

Stage first_stage() {
  Program p = t4();
  Program qa = qa_transform(p, Atom{"false", {}});
  Program ps = strengthen(p, analyze(qa, thresholds(qa)).model);
  AnalysisResult r = analyze(ps, thresholds(ps));
  AndTree t = build_and_tree(ps, extract_trace(r.witnesses));
  return {ps, r, t};
}

}  // namespace

TEST_CASE("splitting f3 with the listed interpolant gives the listed parts") {
  AbstractModel m;
  m.set("l", fact(4, f3_constraints()));
  std::map<std::string, std::vector<ConstraintSet>> interp{{"l", {{C(canon({1, -3, 1, 1}), RelOp::Le, 0)}}}};
  SplitModel s = split_facts(m, interp);
  REQUIRE(s["l"].size() == 2);
  Polyhedron with_i = fact(4, {C(canon({-4, 4, 0, -1}), RelOp::Ge, 0), C(canon({0, 0, 0, 1}), RelOp::Gt, 0),
                               C(canon({-3, 0, 0, 3}), RelOp::Gt, -3), C(canon({2, -1, 0, 0}), RelOp::Ge, 0),
                               C(canon({3, -1, -1, 0}), RelOp::Eq, 0)});
  ConstraintSet listed_not_i{C(canon({4, -4, 0, 1}), RelOp::Gt, 0), C(canon({-1, 1, 0, 0}), RelOp::Ge, 0),
                             C(canon({-3, 0, 0, 3}), RelOp::Gt, -3), C(canon({2, -1, 0, 0}), RelOp::Ge, 0),
                             C(canon({3, -1, -1, 0}), RelOp::Eq, 0)};
  // Our complement part relaxes 4A-4B+D>0 to its closure, so D>0 (implied by
  // the strict form) has to be stated.
  ConstraintSet relaxed{C(canon({4, -4, 0, 1}), RelOp::Ge, 0), C(canon({0, 0, 0, 1}), RelOp::Gt, 0)};
  for (std::size_t i = 1; i < listed_not_i.size(); ++i) relaxed.add(listed_not_i.constraints()[i]);
  CHECK(equivalent(s["l"][0], with_i));
  CHECK(equivalent(s["l"][1], fact(4, relaxed)));
  CHECK(leq(fact(4, listed_not_i), s["l"][1]));
}

TEST_CASE("split edge cases") {
  AbstractModel m;
  Polyhedron d = fact(1, {C(canon({1}), RelOp::Ge, 0), C(canon({1}), RelOp::Le, 10)});
  m.set("p", d);
  m.set("q", Polyhedron::bottom(canonical_args(1)));

  // interpolant true: no split
  SplitModel a = split_facts(m, std::map<std::string, std::vector<ConstraintSet>>{{"p", {ConstraintSet{}}}});
  REQUIRE(a["p"].size() == 1);
  CHECK(equivalent(a["p"][0], d));
  CHECK(a["q"].empty());

  // D & I unsatisfiable: only the complement survives
  SplitModel b = split_facts(m, std::map<std::string, std::vector<ConstraintSet>>{{"p", {{C(canon({1}), RelOp::Lt, -1)}}}});
  REQUIRE(b["p"].size() == 1);
  CHECK(equivalent(b["p"][0], d));

  // a real split covers D
  SplitModel c = split_facts(m, std::map<std::string, std::vector<ConstraintSet>>{{"p", {{C(canon({1}), RelOp::Le, 4)}}}});
  REQUIRE(c["p"].size() == 2);
  CHECK(equivalent(c["p"][0], fact(1, {C(canon({1}), RelOp::Ge, 0), C(canon({1}), RelOp::Le, 4)})));
  CHECK(equivalent(c["p"][1], fact(1, {C(canon({1}), RelOp::Ge, 4), C(canon({1}), RelOp::Le, 10)})));
}

TEST_CASE("two interpolants for one predicate split successively") {
  AbstractModel m;
  m.set("p", fact(1, {C(canon({1}), RelOp::Ge, 0), C(canon({1}), RelOp::Le, 10)}));
  std::map<std::string, std::vector<ConstraintSet>> interp{
      {"p", {{C(canon({1}), RelOp::Le, 3)}, {C(canon({1}), RelOp::Le, 6)}}}};
  SplitModel s = split_facts(m, interp);
  // [0,3] (already within X<=6), [3,6], [6,10]
  CHECK(s["p"].size() == 3);
}

TEST_CASE("polyvariant specialisation of t4") {
  Stage st = first_stage();
  TreeInterpolant ti = tree_interpolants(st.tree);
  SplitModel split = split_facts(st.analysis.model, ti);
  REQUIRE(split["l"].size() == 2);
  CHECK(split["l_body"].size() == 1);

  Specialisation sp = polyvariant_specialise(st.program, split);
  const auto& preds = sp.program.predicates();
  std::size_t l_versions = 0, body_versions = 0;
  for (const auto& [name, arity] : preds) {
    if (name.rfind("l_body_", 0) == 0) {
      ++body_versions;
    } else if (name.rfind("l_", 0) == 0) {
      ++l_versions;
    }
  }
  CHECK(l_versions == 2);
  CHECK(body_versions == 1);
  CHECK_FALSE(preds.count("l"));
  CHECK(preds.count("false"));

  for (const auto& c : sp.program.clauses()) {
    REQUIRE(sp.origin.count(c.id));
    const Clause* src = st.program.find(sp.origin.at(c.id));
    REQUIRE(src);
    CHECK(c.body.size() == src->body.size());
    CHECK(entails(c.constraint, src->constraint));
  }
  // version map is injective and every version is reachable from false
  std::set<std::string> seen;
  const auto live = DependencyGraph(sp.program).reachable_from("false");
  for (const auto& [key, name] : sp.versions) {
    CHECK(seen.insert(name).second);
    CHECK(live.count(name));
  }

  // the refuted trace has no feasible instance
  for (const auto& c1 : sp.program.clauses()) {
    if (sp.origin.at(c1.id) != "c1") continue;
    for (const auto& c3 : sp.program.clauses()) {
      if (sp.origin.at(c3.id) != "c3" || c3.head.predicate != c1.body[0].predicate) continue;
      TraceTerm t{c1.id, {TraceTerm{c3.id, {}}}};
      CHECK_FALSE(feasible(build_and_tree(sp.program, t)));
    }
  }
}

TEST_CASE("single-part split keeps the program shape") {
  Stage st = first_stage();
  SplitModel one;
  for (const auto& [name, poly] : st.analysis.model.facts()) {
    if (!poly.is_bottom()) one[name] = {poly};
  }
  Specialisation sp = polyvariant_specialise(st.program, one);
  CHECK(sp.program.size() == st.program.size());
  for (const auto& c : sp.program.clauses()) {
    const Clause* src = st.program.find(sp.origin.at(c.id));
    REQUIRE(src);
    CHECK(c.head.predicate == (src->head.is_false() ? "false" : version_name(src->head.predicate, 1)));
  }
}

TEST_CASE("unsatisfiable part combinations emit no clause") {
  Program p = parse_program("p(X) :- X >= 0.\nfalse :- p(X), X > 5.");
  SplitModel s{{"p", {fact(1, {C(canon({1}), RelOp::Le, 5)}), fact(1, {C(canon({1}), RelOp::Ge, 5)})}}};
  Specialisation sp = polyvariant_specialise(p, s);
  std::size_t falses = 0;
  for (const auto& c : sp.program.clauses()) {
    if (c.head.is_false()) {
      ++falses;
      CHECK(c.body[0].predicate == "p_2");
    }
  }
  CHECK(falses == 1);
  CHECK(sp.versions.size() == 1);
}

TEST_CASE("fan-out cap") {
  Program p = parse_program("p(X) :- X >= 0.\nq(X,Y) :- p(X), p(Y).\nfalse :- q(X,Y).");
  std::vector<Polyhedron> parts;
  for (int i = 0; i < 5; ++i) parts.push_back(fact(1, {C(canon({1}), RelOp::Ge, i)}));
  SplitModel s{{"p", parts}, {"q", {Polyhedron::top(canonical_args(2))}}};
  CHECK_THROWS_AS(polyvariant_specialise(p, s, PolyvariantOptions{10}), ResourceError);
  CHECK_NOTHROW(polyvariant_specialise(p, s, PolyvariantOptions{100}));
}

TEST_CASE("version names and split dumps") {
  CHECK(version_name("l", 3) == "l_3");
  SplitModel s{{"p", {fact(1, {C(canon({1}), RelOp::Ge, 0)})}}};
  std::string d = dump_split(s, {{{"p", 1}, "p_1"}});
  CHECK(d.find("p(A) :- ") == 0);
  CHECK(d.find("p part 1 -> p_1") != std::string::npos);
}
