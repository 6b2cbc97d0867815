#pragma once

// Dense exact-rational two-phase simplex with Bland's rule.

#include <vector>

#include "chcv/linalg.hpp"

namespace chcv::lp {

struct Row {
  std::vector<Rational> a;
  bool equality = false;  // a.x = b, otherwise a.x <= b
  Rational b;
};

struct Problem {
  std::size_t num_vars = 0;
  std::vector<bool> nonneg;  // per variable; free when false
  std::vector<Row> rows;
  std::vector<Rational> objective;  // maximized; empty means feasibility only
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
  Status status = Status::Infeasible;
  Rational value;
  std::vector<Rational> x;
};

Result solve(const Problem& p);

}  // namespace chcv::lp
