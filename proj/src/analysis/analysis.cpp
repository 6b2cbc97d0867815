#include "chcv/analysis.hpp"

#include <algorithm>
#include <sstream>

namespace chcv {
namespace {

const std::vector<WitnessEntry> kNoEntries;

// Odometer over index tuples; false once every tuple has been visited.
template <typename Size>
bool next_combination(std::vector<std::size_t>& pick, Size size_of) {
  for (std::size_t i = pick.size(); i-- > 0;) {
    if (++pick[i] < size_of(i)) return true;
    pick[i] = 0;
  }
  return false;
}

ConstraintSet body_constraints(const Clause& c, const std::vector<ConstraintSet>& body_facts) {
  ConstraintSet all = c.constraint;
  for (const auto& f : body_facts) all.add_all(f);
  return all;
}

// Projection of a clause body constraint onto the head, over canonical vars.
Polyhedron head_fact(const Clause& c, const ConstraintSet& body) {
  const std::vector<Var> space = canonical_args(c.head.arity());
  if (!is_satisfiable(body)) return Polyhedron::bottom(space);
  ConstraintSet onto = project(body, c.head_vars());
  Renaming r;
  for (std::size_t i = 0; i < c.head.args.size(); ++i) r.emplace(c.head.args[i], space[i]);
  return Polyhedron::from_constraints(space, onto.renamed(r));
}

void require_normalized(const Clause& c) {
  if (c.constrained_head) throw ProgramError("clause " + c.id + " has a constraint head; normalize first");
}

}  // namespace

std::vector<Var> canonical_args(std::size_t arity) {
  std::vector<Var> v;
  v.reserve(arity);
  for (std::size_t i = 0; i < arity; ++i) v.emplace_back("$" + std::to_string(i));
  return v;
}

// ---------------------------------------------------------------------------
// AbstractModel

AbstractModel AbstractModel::bottom(const Program& p) {
  AbstractModel m;
  for (const auto& [name, arity] : p.predicates()) m.set(name, Polyhedron::bottom(canonical_args(arity)));
  return m;
}

AbstractModel AbstractModel::top(const Program& p) {
  AbstractModel m;
  for (const auto& [name, arity] : p.predicates()) m.set(name, Polyhedron::top(canonical_args(arity)));
  return m;
}

Polyhedron AbstractModel::get(const std::string& predicate, std::size_t arity) const {
  auto it = facts_.find(predicate);
  if (it == facts_.end()) return Polyhedron::bottom(canonical_args(arity));
  if (it->second.dim() != arity) {
    throw DomainError("fact for " + predicate + " has arity " + std::to_string(it->second.dim()) + ", expected " +
                      std::to_string(arity));
  }
  return it->second;
}

void AbstractModel::set(const std::string& predicate, Polyhedron poly) { facts_[predicate] = std::move(poly); }

std::vector<ConstrainedFact> AbstractModel::constrained_facts() const {
  std::vector<ConstrainedFact> out;
  for (const auto& [name, poly] : facts_) out.push_back({name, poly.space(), poly});
  return out;
}

bool leq(const AbstractModel& a, const AbstractModel& b) {
  for (const auto& [name, poly] : a.facts()) {
    if (!leq(poly, b.get(name, poly.dim()))) return false;
  }
  return true;
}

const std::vector<WitnessEntry>& WitnessTable::entries(const std::string& predicate) const {
  auto it = table_.find(predicate);
  return it == table_.end() ? kNoEntries : it->second;
}

// ---------------------------------------------------------------------------
// Operators

Polyhedron clause_consequence(const Clause& c, const AbstractModel& m) {
  require_normalized(c);
  std::vector<ConstraintSet> facts;
  for (const auto& b : c.body) {
    Polyhedron f = m.get(b.predicate, b.arity());
    if (f.is_bottom()) return Polyhedron::bottom(canonical_args(c.head.arity()));
    facts.push_back(f.instantiate(b.args));
  }
  return head_fact(c, body_constraints(c, facts));
}

AbstractModel immediate_consequence(const Program& program, const AbstractModel& m) {
  AbstractModel out = AbstractModel::bottom(program);
  for (const auto& c : program.clauses()) {
    Polyhedron contrib = clause_consequence(c, m);
    if (contrib.is_bottom()) continue;
    out.set(c.head.predicate, hull(out.get(c.head.predicate, c.head.arity()), contrib));
  }
  return out;
}

ThresholdSet thresholds(const Program& program, const ThresholdOptions& opts) {
  using FactList = std::vector<ConstraintSet>;
  std::map<std::string, FactList> cur;
  for (const auto& [name, arity] : program.predicates()) cur[name] = {ConstraintSet{}};

  for (std::size_t step = 0; step < opts.iterations; ++step) {
    std::map<std::string, FactList> next;
    for (const auto& c : program.clauses()) {
      require_normalized(c);
      FactList& dest = next[c.head.predicate];
      // Enumerate body fact combinations in lexicographic order.
      std::vector<std::size_t> pick(c.body.size(), 0);
      if (std::any_of(c.body.begin(), c.body.end(), [&](const Atom& b) { return cur[b.predicate].empty(); })) {
        continue;
      }
      for (;;) {
        if (dest.size() >= opts.max_facts_per_predicate) break;
        std::vector<ConstraintSet> facts;
        for (std::size_t i = 0; i < c.body.size(); ++i) {
          Polyhedron f = Polyhedron::from_constraints(canonical_args(c.body[i].arity()),
                                                      cur[c.body[i].predicate][pick[i]]);
          facts.push_back(f.instantiate(c.body[i].args));
        }
        Polyhedron h = head_fact(c, body_constraints(c, facts));
        if (!h.is_bottom() && std::find(dest.begin(), dest.end(), h.constraints()) == dest.end()) {
          dest.push_back(h.constraints());
        }
        if (!next_combination(pick, [&](std::size_t i) { return cur[c.body[i].predicate].size(); })) break;
      }
    }
    for (const auto& [name, arity] : program.predicates()) next[name];
    cur = std::move(next);
  }

  ThresholdSet out;
  for (const auto& [name, facts] : cur) {
    std::vector<LinearConstraint>& dest = out[name];
    for (const auto& f : facts) {
      for (const auto& k : f) {
        std::vector<LinearConstraint> parts{k};
        if (k.is_equality()) {
          for (auto& h : k.as_inequalities()) parts.push_back(h.normalized());
        }
        for (auto& a : parts) {
          if (std::find(dest.begin(), dest.end(), a) == dest.end()) dest.push_back(a);
        }
      }
    }
    if (dest.empty()) out.erase(name);
  }
  return out;
}

AnalysisResult analyze(const Program& program, const ThresholdSet& t, const AnalysisOptions& opts) {
  AnalysisResult res;
  res.model = AbstractModel::bottom(program);
  const DependencyGraph g(program);
  static const std::vector<LinearConstraint> kNone;

  for (const auto& scc : g.sccs()) {
    const bool cyclic = g.is_cyclic(scc);
    const std::set<std::string> members(scc.begin(), scc.end());
    std::vector<const Clause*> clauses;
    for (const auto& c : program.clauses()) {
      if (members.count(c.head.predicate)) clauses.push_back(&c);
    }
    if (clauses.empty()) continue;

    for (std::size_t local = 1;; ++local) {
      if (++res.iterations > opts.max_iterations) {
        throw ResourceError("analysis iteration cap exceeded (" + std::to_string(opts.max_iterations) + ")");
      }
      // Jacobi step: all contributions read the model of the previous step.
      std::map<std::string, std::vector<std::pair<const Clause*, Polyhedron>>> contrib;
      for (const Clause* c : clauses) {
        Polyhedron f = clause_consequence(*c, res.model);
        if (!f.is_bottom()) contrib[c->head.predicate].emplace_back(c, std::move(f));
      }
      AbstractModel next = res.model;
      bool changed = false;
      for (const auto& p : scc) {
        auto it = contrib.find(p);
        if (it == contrib.end()) continue;
        const Polyhedron prev = res.model.get(p, program.predicates().at(p));
        Polyhedron joined = prev;
        const Clause* grew = nullptr;
        for (const auto& [c, f] : it->second) {
          if (!grew && !leq(f, prev)) grew = c;
          joined = hull(joined, f);
        }
        if (!grew) continue;
        if (cyclic && local > opts.widening_delay) {
          auto th = t.find(p);
          joined = widen_upto(prev, joined, th == t.end() ? kNone : th->second);
        }
        WitnessEntry e;
        e.iteration = res.iterations;
        e.clause_id = grew->id;
        for (const auto& b : grew->body) e.children.push_back({b.predicate, 0});
        res.witnesses.record(p, std::move(e));
        next.set(p, std::move(joined));
        changed = true;
      }
      res.model = std::move(next);
      if (!changed || !cyclic) break;
    }
  }
  return res;
}

Safety check_safety(const AbstractModel& m) {
  return m.get(std::string(kFalse), 0).is_bottom() ? Safety::Safe : Safety::PotentiallyUnsafe;
}

bool is_inductive_model(const Program& program, const AbstractModel& m) {
  for (const auto& c : program.clauses()) {
    Polyhedron f = clause_consequence(c, m);
    if (f.is_bottom()) continue;
    if (c.head.is_false()) return false;
    if (!leq(f, m.get(c.head.predicate, c.head.arity()))) return false;
  }
  return true;
}

ConstraintSet display_form(const ConstraintSet& c, std::size_t arity) {
  Renaming r;
  const auto canon = canonical_args(arity);
  for (std::size_t i = 0; i < arity; ++i) r.emplace(canon[i], Var(positional_name(i)));
  return c.renamed(r);
}

std::string dump_model(const AbstractModel& m) {
  std::ostringstream os;
  for (const auto& [name, poly] : m.facts()) {
    if (poly.is_bottom()) continue;
    Atom head{name, {}};
    for (std::size_t i = 0; i < poly.dim(); ++i) head.args.emplace_back(positional_name(i));
    os << to_string(head) << " :- " << display_form(poly.constraints(), poly.dim()) << ".\n";
  }
  return os.str();
}

}  // namespace chcv
