#include "simplex.hpp"

#include <cassert>

namespace chcv::lp {
namespace {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : t_(rows, std::vector<Rational>(cols + 1)), basis_(rows), cols_(cols) {}

  Rational& at(std::size_t i, std::size_t j) { return t_[i][j]; }
  Rational& rhs(std::size_t i) { return t_[i][cols_]; }
  std::size_t rows() const { return t_.size(); }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t r, std::size_t c) {
    Rational p = t_[r][c];
    for (auto& v : t_[r]) {
      if (sgn(v) != 0) v /= p;
    }
    for (std::size_t i = 0; i < t_.size(); ++i) {
      if (i == r || sgn(t_[i][c]) == 0) continue;
      Rational f = t_[i][c];
      for (std::size_t j = 0; j <= cols_; ++j) {
        if (sgn(t_[r][j]) != 0) t_[i][j] -= f * t_[r][j];
      }
    }
    basis_[r] = c;
  }

  /// Maximizes cost over columns allowed by `usable`. Returns false when
  /// unbounded.
  bool optimize(const std::vector<Rational>& cost, const std::vector<bool>& usable) {
    const std::size_t m = rows();
    for (;;) {
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < cols_ && enter == cols_; ++j) {
        if (!usable[j]) continue;
        Rational d = cost[j];
        for (std::size_t i = 0; i < m; ++i) {
          if (sgn(t_[i][j]) != 0 && sgn(cost[basis_[i]]) != 0) d -= cost[basis_[i]] * t_[i][j];
        }
        if (sgn(d) > 0) enter = j;
      }
      if (enter == cols_) return true;

      std::size_t leave = m;
      Rational best;
      for (std::size_t i = 0; i < m; ++i) {
        if (sgn(t_[i][enter]) <= 0) continue;
        Rational ratio = t_[i][cols_] / t_[i][enter];
        if (leave == m || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == m) return false;
      pivot(leave, enter);
    }
  }

  Rational value(const std::vector<Rational>& cost) const {
    Rational v = 0;
    for (std::size_t i = 0; i < t_.size(); ++i) v += cost[basis_[i]] * t_[i][cols_];
    return v;
  }

 private:
  std::vector<std::vector<Rational>> t_;
  std::vector<std::size_t> basis_;
  std::size_t cols_;
};

}  // namespace

Result solve(const Problem& p) {
  // Column layout: [x+ or x] [x- for free vars] [slacks] [artificials]
  std::vector<std::size_t> plus(p.num_vars), minus(p.num_vars, SIZE_MAX);
  std::size_t ncols = 0;
  for (std::size_t j = 0; j < p.num_vars; ++j) plus[j] = ncols++;
  for (std::size_t j = 0; j < p.num_vars; ++j) {
    if (!p.nonneg[j]) minus[j] = ncols++;
  }
  const std::size_t m = p.rows.size();
  std::vector<std::size_t> slack(m, SIZE_MAX);
  for (std::size_t i = 0; i < m; ++i) {
    if (!p.rows[i].equality) slack[i] = ncols++;
  }
  // An artificial is needed unless the slack can start in the basis.
  std::vector<std::size_t> artificial(m, SIZE_MAX);
  const std::size_t first_artificial = ncols;
  for (std::size_t i = 0; i < m; ++i) {
    if (p.rows[i].equality || sgn(p.rows[i].b) < 0) artificial[i] = ncols++;
  }

  Tableau tab(m, ncols);
  for (std::size_t i = 0; i < m; ++i) {
    const Row& row = p.rows[i];
    const int sign = sgn(row.b) < 0 ? -1 : 1;
    for (std::size_t j = 0; j < p.num_vars && j < row.a.size(); ++j) {
      if (sgn(row.a[j]) == 0) continue;
      tab.at(i, plus[j]) = sign * row.a[j];
      if (minus[j] != SIZE_MAX) tab.at(i, minus[j]) = -sign * row.a[j];
    }
    if (slack[i] != SIZE_MAX) tab.at(i, slack[i]) = sign;
    tab.rhs(i) = sign * row.b;
    if (artificial[i] != SIZE_MAX) {
      tab.at(i, artificial[i]) = 1;
      tab.basis()[i] = artificial[i];
    } else {
      tab.basis()[i] = slack[i];
    }
  }

  std::vector<bool> usable(ncols, true);
  if (first_artificial < ncols) {
    std::vector<Rational> phase1(ncols);
    for (std::size_t j = first_artificial; j < ncols; ++j) phase1[j] = -1;
    tab.optimize(phase1, usable);
    if (sgn(tab.value(phase1)) < 0) return Result{Status::Infeasible, 0, {}};
    for (std::size_t j = first_artificial; j < ncols; ++j) usable[j] = false;
    // Drive zero-valued artificials out of the basis where possible.
    for (std::size_t i = 0; i < m; ++i) {
      if (tab.basis()[i] < first_artificial) continue;
      for (std::size_t j = 0; j < first_artificial; ++j) {
        if (sgn(tab.at(i, j)) != 0) {
          tab.pivot(i, j);
          break;
        }
      }
    }
  }

  std::vector<Rational> cost(ncols);
  for (std::size_t j = 0; j < p.num_vars && j < p.objective.size(); ++j) {
    cost[plus[j]] = p.objective[j];
    if (minus[j] != SIZE_MAX) cost[minus[j]] = -p.objective[j];
  }
  Result res;
  if (!p.objective.empty() && !tab.optimize(cost, usable)) {
    res.status = Status::Unbounded;
  } else {
    res.status = Status::Optimal;
    res.value = tab.value(cost);
  }
  std::vector<Rational> colval(ncols);
  for (std::size_t i = 0; i < m; ++i) colval[tab.basis()[i]] = tab.rhs(i);
  res.x.resize(p.num_vars);
  for (std::size_t j = 0; j < p.num_vars; ++j) {
    res.x[j] = colval[plus[j]];
    if (minus[j] != SIZE_MAX) res.x[j] -= colval[minus[j]];
  }
  return res;
}

}  // namespace chcv::lp
