#include "chcv/specialise.hpp"

#include <algorithm>
#include <sstream>

#include "chcv/qa.hpp"

namespace chcv {

Strengthened strengthen_detailed(const Program& program, const AbstractModel& qa_model) {
  Strengthened res;
  std::vector<Clause> kept;
  for (const auto& c : program.clauses()) {
    if (c.constrained_head) throw ProgramError("clause " + c.id + " has a constraint head; normalize first");
    const Polyhedron head_ans = qa_model.get(answer_name(c.head.predicate), c.head.arity());
    if (head_ans.is_bottom()) {
      res.deleted.push_back(c.id);
      continue;
    }
    ConstraintSet strengthened = c.constraint & head_ans.instantiate(c.head.args);
    ConstraintSet test = strengthened;
    bool dead = false;
    for (const auto& b : c.body) {
      Polyhedron f = qa_model.get(answer_name(b.predicate), b.arity());
      if (f.is_bottom()) {
        dead = true;
        break;
      }
      test.add_all(f.instantiate(b.args));
    }
    if (dead || !is_satisfiable(test)) {
      res.deleted.push_back(c.id);
      continue;
    }
    Clause n = c;
    n.constraint = simplify(strengthened);
    kept.push_back(std::move(n));
  }
  res.program = Program(std::move(kept));
  return res;
}

Program strengthen(const Program& program, const AbstractModel& qa_model) {
  return strengthen_detailed(program, qa_model).program;
}

bool early_safe(const Program& program) {
  return std::none_of(program.clauses().begin(), program.clauses().end(),
                      [](const Clause& c) { return c.is_integrity(); });
}

std::string dump_specialised(const Program& source, const Strengthened& s) {
  std::ostringstream os;
  for (const auto& c : source.clauses()) {
    if (const Clause* k = s.program.find(c.id)) {
      os << to_string(*k) << '\n';
    } else {
      os << c.id << ". " << to_string(c.head) << " :- false.\n";
    }
  }
  return os.str();
}

}  // namespace chcv
