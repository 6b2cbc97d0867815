#include "chcv/qa.hpp"

namespace chcv {
namespace {

Atom with_name(const Atom& a, std::string name) { return Atom{std::move(name), a.args}; }

}  // namespace

std::string query_name(const std::string& predicate) { return predicate + "__q"; }
std::string answer_name(const std::string& predicate) { return predicate + "__a"; }

Program qa_transform(const Program& program, const Atom& goal) {
  for (const auto& [name, arity] : program.predicates()) {
    for (const auto& other : {query_name(name), answer_name(name)}) {
      if (program.predicates().count(other)) {
        throw ProgramError("query-answer name " + other + " already used by the program");
      }
    }
  }
  std::vector<Clause> out;
  for (const auto& c : program.clauses()) {
    if (c.constrained_head) throw ProgramError("clause " + c.id + " has a constraint head; normalize first");
    const Atom hq = with_name(c.head, query_name(c.head.predicate));

    Clause ans;
    ans.id = c.id + "_ans";
    ans.head = with_name(c.head, answer_name(c.head.predicate));
    ans.constraint = c.constraint;
    ans.body.push_back(hq);
    for (const auto& b : c.body) ans.body.push_back(with_name(b, answer_name(b.predicate)));
    out.push_back(std::move(ans));

    for (std::size_t i = 0; i < c.body.size(); ++i) {
      Clause q;
      q.id = c.id + "_q" + std::to_string(i + 1);
      q.head = with_name(c.body[i], query_name(c.body[i].predicate));
      q.constraint = c.constraint;
      q.body.push_back(hq);
      for (std::size_t j = 0; j < i; ++j) q.body.push_back(with_name(c.body[j], answer_name(c.body[j].predicate)));
      out.push_back(std::move(q));
    }
  }
  Clause g;
  g.id = "goal";
  g.head = with_name(goal, query_name(goal.predicate));
  out.push_back(std::move(g));
  return Program(std::move(out));
}

}  // namespace chcv
