#include "chcv/linalg.hpp"
#include "simplex.hpp"

namespace chcv {
namespace {

bool is_contradiction(const LinearConstraint& d) {
  if (!d.coeffs().empty()) return false;
  switch (d.rel()) {
    case Rel::Le: return sgn(d.bound()) < 0;
    case Rel::Lt: return sgn(d.bound()) <= 0;
    case Rel::Eq: return sgn(d.bound()) != 0;
  }
  return false;
}

std::vector<LinearConstraint> concat(const ConstraintSet& a, const ConstraintSet& b) {
  std::vector<LinearConstraint> rows(a.begin(), a.end());
  rows.insert(rows.end(), b.begin(), b.end());
  return rows;
}

}  // namespace

// Motzkin transposition: the system is infeasible iff some y (>= 0 on
// inequalities) has y.A = 0 and either y.b < 0, or y.b <= 0 with positive
// weight on a strict row. Maximize -y.b + sum(strict y) capped at 1.
FarkasCertificate farkas_refutation(const ConstraintSet& c1, const ConstraintSet& c2) {
  const std::vector<LinearConstraint> rows = concat(c1, c2);
  const std::size_t n = rows.size();
  VarSet vs;
  for (const auto& r : rows) {
    for (const auto& [v, a] : r.coeffs()) vs.insert(v);
  }

  lp::Problem p;
  p.num_vars = n;
  p.nonneg.resize(n);
  for (std::size_t i = 0; i < n; ++i) p.nonneg[i] = !rows[i].is_equality();
  for (const Var& v : vs) {
    lp::Row row;
    row.equality = true;
    row.a.resize(n);
    for (std::size_t i = 0; i < n; ++i) row.a[i] = rows[i].coeff(v);
    row.b = 0;
    p.rows.push_back(std::move(row));
  }
  lp::Row bsum;
  bsum.a.resize(n);
  for (std::size_t i = 0; i < n; ++i) bsum.a[i] = rows[i].bound();
  bsum.b = 0;
  p.rows.push_back(bsum);

  lp::Row sigma;
  sigma.a.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    sigma.a[i] = -rows[i].bound() + (rows[i].is_strict() ? 1 : 0);
  }
  sigma.b = 1;
  p.objective = sigma.a;
  p.rows.push_back(std::move(sigma));

  lp::Result r = lp::solve(p);
  if (r.status != lp::Status::Optimal || sgn(r.value) <= 0) {
    throw std::invalid_argument("farkas_refutation: constraint system is satisfiable");
  }
  FarkasCertificate cert;
  cert.multipliers = r.x;
  cert.c1_size = c1.size();
  cert.derived = combine(rows, cert.multipliers);
  std::vector<LinearConstraint> first(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(c1.size()));
  std::vector<Rational> y1(cert.multipliers.begin(),
                           cert.multipliers.begin() + static_cast<std::ptrdiff_t>(c1.size()));
  cert.c1_part = combine(first, y1);
  return cert;
}

bool validate(const FarkasCertificate& cert, const ConstraintSet& c1, const ConstraintSet& c2) {
  const std::vector<LinearConstraint> rows = concat(c1, c2);
  if (cert.multipliers.size() != rows.size() || cert.c1_size != c1.size()) return false;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].is_equality() && sgn(cert.multipliers[i]) < 0) return false;
  }
  if (combine(rows, cert.multipliers) != cert.derived) return false;
  if (!is_contradiction(cert.derived)) return false;
  std::vector<LinearConstraint> first(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(c1.size()));
  std::vector<Rational> y1(cert.multipliers.begin(),
                           cert.multipliers.begin() + static_cast<std::ptrdiff_t>(c1.size()));
  return combine(first, y1) == cert.c1_part;
}

}  // namespace chcv
