#pragma once

#include <vector>

#include "chcv/linalg.hpp"

namespace chcv::detail {

/// Normalize rows, drop trivially true ones, merge parallel inequalities.
/// A contradiction collapses the whole vector to {0 <= -1}.
void tidy(std::vector<LinearConstraint>& rows);

/// Drop inequalities entailed by the remaining rows (canonical order).
void remove_redundant(std::vector<LinearConstraint>& rows);

/// v expressed from the equality eq.
LinearTerm solve_for(const LinearConstraint& eq, const Var& v);

}  // namespace chcv::detail
