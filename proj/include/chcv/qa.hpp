#pragma once

// Query-answer transformation: p becomes p__q (calls) and p__a (answers),
// simulating left-to-right goal-directed evaluation bottom-up.

#include <string>

#include "chcv/ast.hpp"

namespace chcv {

std::string query_name(const std::string& predicate);
std::string answer_name(const std::string& predicate);

/// Per clause cK: answer clause cK_ans and query clauses cK_q1..cK_qn, plus
/// the goal clause `goal`. Throws ProgramError on a name collision.
Program qa_transform(const Program& program, const Atom& goal);

}  // namespace chcv
