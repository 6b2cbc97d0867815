#include "chcv/polyhedron.hpp"

#include <algorithm>
#include <sstream>

namespace chcv {
namespace {

void require_same_space(const Polyhedron& p, const Polyhedron& q, const char* op) {
  if (p.space() != q.space()) throw DomainError(std::string(op) + ": polyhedra over different spaces");
}

ConstraintSet closure_of(const ConstraintSet& c) {
  ConstraintSet out;
  for (const auto& k : c) out.add(k.closure());
  return out;
}

std::vector<LinearConstraint> inequalities(const ConstraintSet& c) {
  std::vector<LinearConstraint> out;
  for (const auto& k : c) {
    for (auto& h : k.as_inequalities()) out.push_back(h.normalized());
  }
  return out;
}

// Closed convex hull by the mixing encoding: x = y + z with y in lam*P and
// z in (1-lam)*Q, 0 <= lam <= 1, projected back onto x.
ConstraintSet closed_hull(const std::vector<Var>& space, const ConstraintSet& p, const ConstraintSet& q) {
  const Var lam("#lam");
  std::map<Var, Var> copy;
  for (std::size_t i = 0; i < space.size(); ++i) copy.emplace(space[i], Var("#y" + std::to_string(i)));

  ConstraintSet mix;
  for (const auto& k : p) {
    // a.y REL b*lam
    LinearTerm lhs;
    for (const auto& [v, a] : k.coeffs()) lhs += LinearTerm(copy.at(v)) * a;
    auto op = k.is_equality() ? RelOp::Eq : RelOp::Le;
    mix.add(LinearConstraint::make(lhs, op, LinearTerm(lam) * k.bound()));
  }
  for (const auto& k : q) {
    // a.(x - y) REL b*(1 - lam)
    LinearTerm lhs;
    for (const auto& [v, a] : k.coeffs()) lhs += (LinearTerm(v) - LinearTerm(copy.at(v))) * a;
    auto op = k.is_equality() ? RelOp::Eq : RelOp::Le;
    mix.add(LinearConstraint::make(lhs, op, (LinearTerm(Rational(1)) - LinearTerm(lam)) * k.bound()));
  }
  mix.add(LinearConstraint::make(LinearTerm(lam), RelOp::Ge, LinearTerm(Rational(0))));
  mix.add(LinearConstraint::make(LinearTerm(lam), RelOp::Le, LinearTerm(Rational(1))));
  return project(mix, VarSet(space.begin(), space.end()));
}

}  // namespace

Polyhedron Polyhedron::top(std::vector<Var> space) {
  Polyhedron p;
  p.space_ = std::move(space);
  return p;
}

Polyhedron Polyhedron::bottom(std::vector<Var> space) {
  Polyhedron p;
  p.space_ = std::move(space);
  p.cs_ = ConstraintSet::falsum();
  p.bottom_ = true;
  return p;
}

Polyhedron Polyhedron::from_constraints(std::vector<Var> space, const ConstraintSet& cs) {
  const VarSet allowed(space.begin(), space.end());
  for (const Var& v : cs.vars()) {
    if (!allowed.count(v)) throw DomainError("constraint variable " + v.name + " outside the polyhedron space");
  }
  ConstraintSet s = simplify(cs);
  if (s.contains_trivially_false()) return bottom(std::move(space));
  Polyhedron p;
  p.space_ = std::move(space);
  p.cs_ = std::move(s);
  return p;
}

ConstraintSet Polyhedron::instantiate(const std::vector<Var>& args) const {
  if (args.size() != space_.size()) throw DomainError("instantiate: arity mismatch");
  if (bottom_) return ConstraintSet::falsum();
  Renaming r;
  for (std::size_t i = 0; i < args.size(); ++i) r.emplace(space_[i], args[i]);
  return cs_.renamed(r);
}

Polyhedron meet(const Polyhedron& p, const Polyhedron& q) {
  require_same_space(p, q, "meet");
  if (p.is_bottom()) return p;
  if (q.is_bottom()) return q;
  return Polyhedron::from_constraints(p.space(), p.constraints() & q.constraints());
}

Polyhedron hull(const Polyhedron& p, const Polyhedron& q) {
  require_same_space(p, q, "hull");
  if (p.is_bottom()) return q;
  if (q.is_bottom()) return p;
  const ConstraintSet& cp = p.constraints();
  const ConstraintSet& cq = q.constraints();
  ConstraintSet h = closed_hull(p.space(), closure_of(cp), closure_of(cq));

  // Strictness is kept wherever both operands satisfy a bound strictly; such
  // a bound holds strictly on every convex combination.
  ConstraintSet out;
  for (const auto& k : h) {
    if (k.rel() == Rel::Le) {
      LinearConstraint s = k.with_rel(Rel::Lt);
      if (entails(cp, s) && entails(cq, s)) {
        out.add(s);
        continue;
      }
    }
    out.add(k);
  }
  for (const ConstraintSet* src : {&cp, &cq}) {
    for (const auto& k : *src) {
      if (k.is_strict() && entails(cp, k) && entails(cq, k)) out.add(k);
    }
  }
  return Polyhedron::from_constraints(p.space(), out);
}

bool leq(const Polyhedron& p, const Polyhedron& q) {
  require_same_space(p, q, "leq");
  if (p.is_bottom()) return true;
  if (q.is_bottom()) return false;
  return entails(p.constraints(), q.constraints());
}

bool equivalent(const Polyhedron& p, const Polyhedron& q) { return leq(p, q) && leq(q, p); }

// Constraints of p that still hold on q, plus constraints of q that can take
// the place of a constraint of p without changing p.
Polyhedron widen(const Polyhedron& p, const Polyhedron& q) {
  require_same_space(p, q, "widen");
  if (p.is_bottom()) return q;
  if (!leq(p, q)) throw DomainError("widen: first argument is not included in the second");
  const std::vector<LinearConstraint> cp = inequalities(p.constraints());
  const ConstraintSet& cq = q.constraints();

  ConstraintSet out;
  for (const auto& k : cp) {
    if (entails(cq, k)) {
      out.add(k);
    } else if (k.is_strict() && entails(cq, k.closure())) {
      out.add(k.closure());
    }
  }
  for (const auto& b : inequalities(cq)) {
    for (std::size_t i = 0; i < cp.size(); ++i) {
      ConstraintSet swapped;
      for (std::size_t j = 0; j < cp.size(); ++j) {
        if (j != i) swapped.add(cp[j]);
      }
      swapped.add(b);
      if (entails(swapped, cp[i])) {
        out.add(b);
        break;
      }
    }
  }
  return Polyhedron::from_constraints(p.space(), out);
}

Polyhedron widen_upto(const Polyhedron& p, const Polyhedron& q, const std::vector<LinearConstraint>& thresholds) {
  Polyhedron w = widen(p, q);
  if (p.is_bottom() || thresholds.empty()) return w;
  ConstraintSet out = w.constraints();
  bool added = false;
  for (const auto& t : thresholds) {
    if (entails(p.constraints(), t) && entails(q.constraints(), t)) {
      out.add(t);
      added = true;
    }
  }
  return added ? Polyhedron::from_constraints(p.space(), out) : w;
}

std::string to_string(const Polyhedron& p) {
  if (p.is_bottom()) return "false";
  return to_string(p.constraints());
}

}  // namespace chcv
