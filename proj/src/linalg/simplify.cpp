#include <algorithm>

#include "chcv/linalg.hpp"
#include "internal.hpp"

namespace chcv {
namespace {

// Reduced row echelon form of the equalities, pivots chosen as the smallest
// variable name of each row.
std::vector<LinearConstraint> reduce_equalities(std::vector<LinearConstraint> eqs) {
  std::vector<LinearConstraint> done;
  while (!eqs.empty()) {
    // Row whose smallest variable is globally smallest.
    std::size_t pick = 0;
    for (std::size_t i = 1; i < eqs.size(); ++i) {
      if (eqs[i].coeffs().begin()->first < eqs[pick].coeffs().begin()->first) pick = i;
    }
    LinearConstraint row = eqs[pick];
    eqs.erase(eqs.begin() + static_cast<std::ptrdiff_t>(pick));
    const Var pivot = row.coeffs().begin()->first;
    LinearTerm t = detail::solve_for(row, pivot);
    for (auto& e : eqs) e = e.substituted(pivot, t);
    for (auto& d : done) d = d.substituted(pivot, t).normalized();
    std::erase_if(eqs, [](const auto& e) { return e.is_trivially_true(); });
    done.push_back(row.normalized());
  }
  return done;
}

}  // namespace

ConstraintSet simplify(const ConstraintSet& c) {
  std::vector<LinearConstraint> rows(c.begin(), c.end());
  detail::tidy(rows);
  if (rows.size() == 1 && rows[0].is_trivially_false()) return ConstraintSet::falsum();
  ConstraintSet all(rows);
  if (!is_satisfiable(all)) return ConstraintSet::falsum();

  // Implicit equalities among the non-strict inequalities.
  for (auto& r : rows) {
    if (r.rel() != Rel::Le) continue;
    std::map<Var, Rational> neg;
    for (const auto& [v, a] : r.coeffs()) neg[v] = -a;
    if (entails(all, LinearConstraint(neg, Rel::Le, -r.bound()))) r = r.with_rel(Rel::Eq);
  }

  std::vector<LinearConstraint> eqs, ineqs;
  for (auto& r : rows) (r.is_equality() ? eqs : ineqs).push_back(r);
  eqs = reduce_equalities(std::move(eqs));
  for (const auto& e : eqs) {
    const Var pivot = e.coeffs().begin()->first;
    LinearTerm t = detail::solve_for(e, pivot);
    for (auto& q : ineqs) q = q.substituted(pivot, t);
  }
  detail::tidy(ineqs);
  std::vector<LinearConstraint> out = eqs;
  out.insert(out.end(), ineqs.begin(), ineqs.end());
  detail::remove_redundant(out);
  std::sort(out.begin(), out.end());
  return ConstraintSet(std::move(out));
}

}  // namespace chcv
