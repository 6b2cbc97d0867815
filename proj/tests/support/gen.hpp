#pragma once

// Seeded random instances for the property suites.

#include <random>
#include <string>
#include <vector>

#include "chcv/ast.hpp"
#include "chcv/linalg.hpp"

namespace gen {

using chcv::ConstraintSet;
using chcv::LinearConstraint;
using chcv::LinearTerm;
using chcv::Rational;
using chcv::Var;
using chcv::VarSet;

inline int range(std::mt19937& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline bool coin(std::mt19937& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

/// Random constraint over vars with small integer coefficients; at least one
/// coefficient nonzero.
inline LinearConstraint constraint(std::mt19937& rng, const std::vector<Var>& vars, int coef = 2, int bound = 3,
                                   double strict_p = 0.25, double eq_p = 0.1) {
  LinearTerm t;
  bool any = false;
  while (!any) {
    t = LinearTerm();
    for (const auto& v : vars) {
      int c = range(rng, -coef, coef);
      if (c != 0) {
        t += LinearTerm(v) * Rational(c);
        any = true;
      }
    }
  }
  chcv::RelOp op = chcv::RelOp::Le;
  if (coin(rng, eq_p)) {
    op = chcv::RelOp::Eq;
  } else if (coin(rng, strict_p)) {
    op = chcv::RelOp::Lt;
  }
  return LinearConstraint::make(t, op, LinearTerm(Rational(range(rng, -bound, bound))));
}

inline ConstraintSet system(std::mt19937& rng, const std::vector<Var>& vars, int min_rows, int max_rows,
                            double strict_p = 0.25, double eq_p = 0.1) {
  ConstraintSet c;
  int n = range(rng, min_rows, max_rows);
  for (int i = 0; i < n; ++i) c.add(constraint(rng, vars, 2, 3, strict_p, eq_p));
  return c;
}

/// Box -b <= v <= b for every variable.
inline ConstraintSet box(const std::vector<Var>& vars, int b) {
  ConstraintSet c;
  for (const auto& v : vars) {
    c.add(LinearConstraint::make(LinearTerm(v), chcv::RelOp::Le, LinearTerm(Rational(b))));
    c.add(LinearConstraint::make(LinearTerm(v), chcv::RelOp::Ge, LinearTerm(Rational(-b))));
  }
  return c;
}

struct ProgramShape {
  int max_clauses = 6;
  int max_arity = 2;
  /// Variable pool per clause.
  int pool = 3;
  bool allow_two_body_atoms = true;
};

/// Random CHC program over predicates p, q and false; every clause draws its
/// variables from a pool of `pool` names.
inline chcv::Program program(std::mt19937& rng, const ProgramShape& shape = {}) {
  const std::vector<std::string> preds{"p", "q"};
  std::vector<std::size_t> arity{static_cast<std::size_t>(range(rng, 1, shape.max_arity)),
                                 static_cast<std::size_t>(range(rng, 1, shape.max_arity))};
  std::vector<Var> pool;
  for (int i = 0; i < shape.pool; ++i) pool.emplace_back(std::string(1, static_cast<char>('X' + i)));

  auto atom = [&](std::size_t pi) {
    std::vector<Var> vs = pool;
    std::shuffle(vs.begin(), vs.end(), rng);
    vs.resize(arity[pi]);
    return chcv::Atom{preds[pi], vs};
  };
  auto constraints = [&](const chcv::Clause& c, int lo, int hi) {
    VarSet used;
    for (const auto& v : c.head.args) used.insert(v);
    for (const auto& b : c.body) used.insert(b.args.begin(), b.args.end());
    std::vector<Var> vs(used.begin(), used.end());
    ConstraintSet k;
    if (vs.empty()) return k;
    int n = range(rng, lo, hi);
    for (int i = 0; i < n; ++i) {
      std::vector<Var> sub;
      for (const auto& v : vs) {
        if (coin(rng, 0.7)) sub.push_back(v);
      }
      if (sub.empty()) sub.push_back(vs[static_cast<std::size_t>(range(rng, 0, static_cast<int>(vs.size()) - 1))]);
      k.add(constraint(rng, sub, 2, 3, 0.2, 0.15));
    }
    return k;
  };

  std::vector<chcv::Clause> clauses;
  int n = range(rng, 3, shape.max_clauses);
  int n_false = range(rng, 1, 2);
  int n_base = range(rng, 1, 2);
  for (int i = 0; i < n; ++i) {
    chcv::Clause c;
    c.id = "c" + std::to_string(i + 1);
    if (i < n_base) {
      c.head = atom(static_cast<std::size_t>(range(rng, 0, 1)));
      c.constraint = constraints(c, 1, 2);
    } else if (i >= n - n_false) {
      c.head = chcv::Atom{"false", {}};
      c.body.push_back(atom(static_cast<std::size_t>(range(rng, 0, 1))));
      if (shape.allow_two_body_atoms && coin(rng, 0.2)) c.body.push_back(atom(static_cast<std::size_t>(range(rng, 0, 1))));
      c.constraint = constraints(c, 1, 2);
    } else {
      std::size_t h = static_cast<std::size_t>(range(rng, 0, 1));
      c.head = atom(h);
      c.body.push_back(atom(static_cast<std::size_t>(range(rng, 0, 1))));
      if (shape.allow_two_body_atoms && coin(rng, 0.15)) c.body.push_back(atom(1 - h));
      c.constraint = constraints(c, 1, 2);
    }
    clauses.push_back(std::move(c));
  }
  return chcv::Program(std::move(clauses));
}

}  // namespace gen
