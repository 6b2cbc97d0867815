#pragma once

// Constraint-propagation specialisation: strengthen each clause with the
// answer approximation of the query-answer program and drop dead clauses.

#include <string>
#include <vector>

#include "chcv/analysis.hpp"
#include "chcv/ast.hpp"

namespace chcv {

struct Strengthened {
  Program program;
  /// Ids of deleted clauses, in source order.
  std::vector<std::string> deleted;
};

/// qa_model must be a model of qa_transform(program, false).
Strengthened strengthen_detailed(const Program& program, const AbstractModel& qa_model);
Program strengthen(const Program& program, const AbstractModel& qa_model);

/// No clause has head false.
bool early_safe(const Program& program);

/// The strengthened program in source order, deleted clauses shown as
/// `cK. head :- false.`
std::string dump_specialised(const Program& source, const Strengthened& s);

}  // namespace chcv
