#include <algorithm>

#include "chcv/linalg.hpp"
#include "internal.hpp"

namespace chcv {
namespace detail {

void tidy(std::vector<LinearConstraint>& rows) {
  std::vector<LinearConstraint> out;
  out.reserve(rows.size());
  for (const auto& r : rows) {
    LinearConstraint n = r.normalized();
    if (n.is_trivially_true()) continue;
    if (n.is_trivially_false()) {
      rows = {LinearConstraint::falsum()};
      return;
    }
    bool merged = false;
    for (auto& o : out) {
      if (o.coeffs() != n.coeffs()) continue;
      if (o.is_equality() || n.is_equality()) {
        if (o.is_equality() && n.is_equality()) {
          if (o.bound() != n.bound()) {
            rows = {LinearConstraint::falsum()};
            return;
          }
          merged = true;
        }
        continue;
      }
      // Same direction inequality: keep the tighter one.
      if (n.bound() < o.bound() || (n.bound() == o.bound() && n.is_strict())) o = n;
      merged = true;
      break;
    }
    if (!merged) out.push_back(std::move(n));
  }
  rows = std::move(out);
}

void remove_redundant(std::vector<LinearConstraint>& rows) {
  std::sort(rows.begin(), rows.end());
  for (std::size_t i = rows.size(); i-- > 0;) {
    if (rows[i].is_equality()) continue;
    ConstraintSet rest;
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (j != i) rest.add(rows[j]);
    }
    if (entails(rest, rows[i])) rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(i));
  }
}

LinearTerm solve_for(const LinearConstraint& eq, const Var& v) {
  // a v + rest = b  ->  v = (b - rest) / a
  const Rational a = eq.coeff(v);
  LinearTerm t(eq.bound());
  for (const auto& [w, c] : eq.coeffs()) {
    if (w != v) t -= LinearTerm(w) * c;
  }
  return t * (Rational(1) / a);
}

}  // namespace detail

namespace {

void check_cap(std::size_t n) {
  if (n > current_limits().fm_max_constraints) {
    throw ResourceError("Fourier-Motzkin constraint cap exceeded (" + std::to_string(n) + ")");
  }
}

bool eliminate_by_equality(std::vector<LinearConstraint>& rows, VarSet& elim) {
  for (const Var& v : elim) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (!rows[i].is_equality() || !rows[i].has_var(v)) continue;
      LinearTerm t = detail::solve_for(rows[i], v);
      rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(i));
      for (auto& r : rows) r = r.substituted(v, t);
      elim.erase(v);
      detail::tidy(rows);
      return true;
    }
  }
  return false;
}

void eliminate_by_fm(std::vector<LinearConstraint>& rows, VarSet& elim) {
  // Pick the variable with the smallest number of generated rows.
  const Var* best = nullptr;
  long best_cost = 0;
  for (const Var& v : elim) {
    long pos = 0, neg = 0;
    for (const auto& r : rows) {
      int s = sgn(r.coeff(v));
      if (s > 0) ++pos;
      if (s < 0) ++neg;
    }
    long cost = pos * neg - pos - neg;
    if (best == nullptr || cost < best_cost) {
      best = &v;
      best_cost = cost;
    }
  }
  const Var v = *best;
  std::vector<LinearConstraint> pos, neg, out;
  for (auto& r : rows) {
    int s = sgn(r.coeff(v));
    (s > 0 ? pos : s < 0 ? neg : out).push_back(r);
  }
  check_cap(out.size() + pos.size() * neg.size());
  for (const auto& p : pos) {
    for (const auto& n : neg) {
      const Rational a = p.coeff(v);
      const Rational b = -n.coeff(v);
      LinearConstraint c = combine({p, n}, {b, a});
      out.push_back(c);
    }
  }
  elim.erase(v);
  detail::tidy(out);
  if (out.size() > 1) detail::remove_redundant(out);
  rows = std::move(out);
}

}  // namespace

ConstraintSet project(const ConstraintSet& c, const VarSet& keep) {
  if (!is_satisfiable(c)) return ConstraintSet::falsum();
  std::vector<LinearConstraint> rows(c.begin(), c.end());
  detail::tidy(rows);
  VarSet elim;
  for (const Var& v : c.vars()) {
    if (!keep.count(v)) elim.insert(v);
  }
  while (!elim.empty()) {
    // Variables that no longer occur need no work.
    std::erase_if(elim, [&](const Var& v) {
      return std::none_of(rows.begin(), rows.end(), [&](const auto& r) { return r.has_var(v); });
    });
    if (elim.empty()) break;
    if (!eliminate_by_equality(rows, elim)) eliminate_by_fm(rows, elim);
    check_cap(rows.size());
  }
  return ConstraintSet(std::move(rows));
}

LinearConstraint combine(const std::vector<LinearConstraint>& rows,
                         const std::vector<Rational>& multipliers) {
  LinearTerm sum;
  Rational bound = 0;
  bool strict = false, all_eq = true, any = false;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Rational& y = multipliers[i];
    if (sgn(y) == 0) continue;
    any = true;
    for (const auto& [v, a] : rows[i].coeffs()) sum += LinearTerm(v) * Rational(a * y);
    bound += rows[i].bound() * y;
    if (rows[i].is_strict()) strict = true;
    if (!rows[i].is_equality()) all_eq = false;
  }
  Rel r = !any ? Rel::Le : all_eq ? Rel::Eq : strict ? Rel::Lt : Rel::Le;
  return LinearConstraint(sum.coeffs(), r, bound);
}

}  // namespace chcv
