#include <algorithm>

#include "chcv/linalg.hpp"
#include "simplex.hpp"

namespace chcv {
namespace {

struct Encoded {
  std::vector<Var> vars;
  lp::Problem problem;
  bool has_strict = false;
};

// Strict rows get a shared slack eps: a.x + eps <= b, 0 <= eps <= 1,
// maximize eps.
Encoded encode(const ConstraintSet& c) {
  Encoded e;
  VarSet vs = c.vars();
  e.vars.assign(vs.begin(), vs.end());
  std::map<Var, std::size_t> index;
  for (std::size_t i = 0; i < e.vars.size(); ++i) index[e.vars[i]] = i;
  e.has_strict = std::any_of(c.begin(), c.end(), [](const auto& k) { return k.is_strict(); });
  const std::size_t n = e.vars.size() + (e.has_strict ? 1 : 0);
  const std::size_t eps = e.vars.size();
  e.problem.num_vars = n;
  e.problem.nonneg.assign(n, false);
  for (const auto& k : c) {
    lp::Row row;
    row.a.assign(n, 0);
    for (const auto& [v, a] : k.coeffs()) row.a[index[v]] = a;
    row.b = k.bound();
    row.equality = k.is_equality();
    if (k.is_strict()) row.a[eps] = 1;
    e.problem.rows.push_back(std::move(row));
  }
  if (e.has_strict) {
    e.problem.nonneg[eps] = true;
    lp::Row cap;
    cap.a.assign(n, 0);
    cap.a[eps] = 1;
    cap.b = 1;
    e.problem.rows.push_back(std::move(cap));
    e.problem.objective.assign(n, 0);
    e.problem.objective[eps] = 1;
  }
  return e;
}

}  // namespace

std::optional<std::map<Var, Rational>> find_model(const ConstraintSet& c) {
  bool any_var = false;
  for (const auto& k : c) {
    if (k.is_trivially_false()) return std::nullopt;
    if (!k.coeffs().empty()) any_var = true;
  }
  if (!any_var) return std::map<Var, Rational>{};
  Encoded e = encode(c);
  lp::Result r = lp::solve(e.problem);
  if (r.status == lp::Status::Infeasible) return std::nullopt;
  if (e.has_strict && sgn(r.x[e.vars.size()]) <= 0) return std::nullopt;
  std::map<Var, Rational> model;
  for (std::size_t i = 0; i < e.vars.size(); ++i) model[e.vars[i]] = r.x[i];
  return model;
}

bool is_satisfiable(const ConstraintSet& c) { return find_model(c).has_value(); }

bool entails(const ConstraintSet& c, const LinearConstraint& d) {
  if (d.is_trivially_true()) return true;
  if (d.is_equality()) {
    for (const auto& half : d.as_inequalities()) {
      if (!entails(c, half)) return false;
    }
    return true;
  }
  ConstraintSet probe = c;
  probe.add(d.negation());
  return !is_satisfiable(probe);
}

bool entails(const ConstraintSet& c, const ConstraintSet& d) {
  return std::all_of(d.begin(), d.end(), [&](const auto& k) { return entails(c, k); });
}

bool equivalent(const ConstraintSet& a, const ConstraintSet& b) {
  return entails(a, b) && entails(b, a);
}

}  // namespace chcv
