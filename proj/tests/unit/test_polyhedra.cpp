#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "chcv/polyhedron.hpp"

using namespace chcv;

namespace {

const Var X("X"), Y("Y");
const std::vector<Var> kX{X}, kXY{X, Y};

LinearConstraint C(const LinearTerm& l, RelOp op, long r) { return LinearConstraint::make(l, op, LinearTerm(Rational(r))); }

Polyhedron P1(ConstraintSet cs) { return Polyhedron::from_constraints(kX, cs); }
Polyhedron P2(ConstraintSet cs) { return Polyhedron::from_constraints(kXY, cs); }

Polyhedron interval(long lo, long hi) { return P1({C(X, RelOp::Ge, lo), C(X, RelOp::Le, hi)}); }

}  // namespace

TEST_CASE("top and bottom") {
  auto t = Polyhedron::top(kX), b = Polyhedron::bottom(kX);
  CHECK(t.is_top());
  CHECK_FALSE(t.is_bottom());
  CHECK(b.is_bottom());
  CHECK(leq(b, interval(0, 1)));
  CHECK(leq(interval(0, 1), t));
  CHECK(P1({C(X, RelOp::Lt, 0), C(X, RelOp::Gt, 0)}).is_bottom());
  CHECK_THROWS_AS(P1({C(Y, RelOp::Le, 0)}), DomainError);
}

TEST_CASE("meet") {
  auto p = interval(0, 3);
  CHECK(equivalent(meet(p, Polyhedron::top(kX)), p));
  CHECK(meet(P1({C(X, RelOp::Ge, 0)}), P1({C(X, RelOp::Le, -1)})).is_bottom());
  CHECK(equivalent(meet(interval(0, 3), interval(2, 5)), interval(2, 3)));
  CHECK_THROWS_AS(meet(p, Polyhedron::top(kXY)), DomainError);
}

TEST_CASE("hull") {
  CHECK(equivalent(hull(P1({C(X, RelOp::Eq, 0)}), P1({C(X, RelOp::Eq, 1)})), interval(0, 1)));
  auto p = interval(-2, 5);
  CHECK(equivalent(hull(p, p), p));
  CHECK(equivalent(hull(Polyhedron::bottom(kX), p), p));
  CHECK(equivalent(hull(p, Polyhedron::bottom(kX)), p));

  auto h = hull(P2({C(X, RelOp::Eq, 0), C(Y, RelOp::Eq, 0)}), P2({C(X, RelOp::Eq, 1), C(Y, RelOp::Eq, 1)}));
  CHECK(equivalent(h, P2({C(X, RelOp::Ge, 0), C(X, RelOp::Le, 1), C(LinearTerm(X) - Y, RelOp::Eq, 0)})));

  // unbounded operands
  auto r = hull(P1({C(X, RelOp::Ge, 3)}), P1({C(X, RelOp::Eq, 0)}));
  CHECK(equivalent(r, P1({C(X, RelOp::Ge, 0)})));
  CHECK(hull(P1({C(X, RelOp::Ge, 0)}), P1({C(X, RelOp::Le, 0)})).is_top());
  CHECK_THROWS_AS(hull(p, Polyhedron::top(kXY)), DomainError);
}

TEST_CASE("hull keeps strictness both operands share") {
  auto a = P1({C(X, RelOp::Gt, 0), C(X, RelOp::Le, 1)});
  auto b = P1({C(X, RelOp::Gt, 2), C(X, RelOp::Le, 3)});
  auto h = hull(a, b);
  CHECK(leq(a, h));
  CHECK(leq(b, h));
  CHECK(equivalent(h, P1({C(X, RelOp::Gt, 0), C(X, RelOp::Le, 3)})));
  // one closed operand: only the closure is sound
  auto c = P1({C(X, RelOp::Eq, 0)});
  CHECK(equivalent(hull(a, c), interval(0, 1)));
}

TEST_CASE("leq") {
  CHECK(leq(P1({C(X, RelOp::Eq, 0)}), P1({C(X, RelOp::Ge, 0)})));
  CHECK_FALSE(leq(P1({C(X, RelOp::Ge, 0)}), P1({C(X, RelOp::Eq, 0)})));
  CHECK_FALSE(leq(P1({C(X, RelOp::Ge, 0)}), P1({C(X, RelOp::Gt, 0)})));
  CHECK_THROWS_AS(leq(interval(0, 1), Polyhedron::top(kXY)), DomainError);
}

TEST_CASE("widen") {
  CHECK(equivalent(widen(interval(0, 1), interval(0, 2)), P1({C(X, RelOp::Ge, 0)})));
  auto p = interval(0, 4);
  CHECK(equivalent(widen(p, p), p));
  CHECK(equivalent(widen(Polyhedron::bottom(kX), p), p));
  CHECK_THROWS_AS(widen(interval(0, 2), interval(0, 1)), DomainError);

  // an equality widens to the half that survives
  auto e = P2({C(LinearTerm(X) - Y, RelOp::Eq, 0), C(X, RelOp::Eq, 0)});
  auto f = P2({C(LinearTerm(X) - Y, RelOp::Le, 0), C(X, RelOp::Ge, 0), C(X, RelOp::Le, 1), C(Y, RelOp::Le, 1)});
  REQUIRE(leq(e, f));
  auto w = widen(e, f);
  CHECK(leq(f, w));
  CHECK(entails(w.constraints(), C(LinearTerm(X) - Y, RelOp::Le, 0)));
  CHECK(entails(w.constraints(), C(X, RelOp::Ge, 0)));
}

TEST_CASE("widen_upto") {
  auto w = widen_upto(interval(0, 1), interval(0, 2), {C(X, RelOp::Le, 10)});
  CHECK(equivalent(w, interval(0, 10)));
  CHECK(equivalent(widen_upto(interval(0, 1), interval(0, 2), {}), widen(interval(0, 1), interval(0, 2))));
  // a threshold q violates is dropped
  auto v = widen_upto(interval(0, 1), interval(0, 2), {C(X, RelOp::Le, 1), C(X, RelOp::Ge, -5)});
  CHECK_FALSE(entails(v.constraints(), C(X, RelOp::Le, 1)));
  CHECK(equivalent(v, P1({C(X, RelOp::Ge, 0)})));
}

TEST_CASE("instantiate and print") {
  auto p = P2({C(LinearTerm(X) + Y, RelOp::Le, 1)});
  auto k = p.instantiate({Var("A"), Var("B")});
  CHECK(k == ConstraintSet{C(LinearTerm(Var("A")) + Var("B"), RelOp::Le, 1)});
  CHECK(to_string(Polyhedron::bottom(kX)) == "false");
  CHECK(to_string(Polyhedron::top(kX)) == "true");
}
