#include "chcv/refine.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace chcv {
namespace {

std::vector<Polyhedron> split_one(const Polyhedron& d, const ConstraintSet& interpolant) {
  std::vector<LinearConstraint> conj;
  for (const auto& k : interpolant) {
    for (const auto& h : k.as_inequalities()) {
      if (!entails(d.constraints(), h)) conj.push_back(h);
    }
  }
  if (conj.empty()) return {d};

  std::vector<Polyhedron> parts;
  auto keep = [&](const ConstraintSet& extra) {
    Polyhedron part = meet(d, Polyhedron::from_constraints(d.space(), extra));
    if (part.is_bottom()) return;
    for (const auto& q : parts) {
      if (equivalent(q, part)) return;
    }
    parts.push_back(std::move(part));
  };
  keep(ConstraintSet(conj));
  ConstraintSet prefix;
  for (const auto& c : conj) {
    ConstraintSet neg = prefix;
    neg.add(c.relaxed_negation());
    keep(neg);
    prefix.add(c);
  }
  return parts;
}

template <typename Size>
bool next_tuple(std::vector<std::size_t>& pick, Size size_of) {
  for (std::size_t i = pick.size(); i-- > 0;) {
    if (++pick[i] < size_of(i)) return true;
    pick[i] = 0;
  }
  return false;
}

}  // namespace

SplitModel split_facts(const AbstractModel& m, const std::map<std::string, std::vector<ConstraintSet>>& interp) {
  SplitModel out;
  for (const auto& [name, d] : m.facts()) {
    std::vector<Polyhedron>& parts = out[name];
    if (d.is_bottom()) continue;
    parts.push_back(d);
    auto it = interp.find(name);
    if (it == interp.end()) continue;
    for (const auto& i : it->second) {
      std::vector<Polyhedron> next;
      for (const auto& p : parts) {
        for (auto& q : split_one(p, i)) next.push_back(std::move(q));
      }
      parts = std::move(next);
    }
  }
  return out;
}

SplitModel split_facts(const AbstractModel& m, const TreeInterpolant& interp) {
  std::map<std::string, std::vector<ConstraintSet>> by_pred;
  for (const auto& f : interp.facts) {
    auto& list = by_pred[f.atom.predicate];
    ConstraintSet c = canonical_interpolant(f);
    if (std::find(list.begin(), list.end(), c) == list.end()) list.push_back(std::move(c));
  }
  return split_facts(m, by_pred);
}

std::string version_name(const std::string& predicate, std::size_t part) {
  return predicate + "_" + std::to_string(part);
}

Specialisation polyvariant_specialise(const Program& program, const SplitModel& s, const PolyvariantOptions& opts) {
  // A predicate absent from s keeps one unconstrained part.
  auto parts_of = [&](const Atom& a) -> std::vector<Polyhedron> {
    auto it = s.find(a.predicate);
    if (it == s.end()) return {Polyhedron::top(canonical_args(a.arity()))};
    return it->second;
  };

  std::vector<Clause> out;
  std::map<std::string, std::string> origin;
  std::set<std::string> used;
  for (const auto& c : program.clauses()) {
    if (c.constrained_head) throw ProgramError("clause " + c.id + " has a constraint head; normalize first");
    const bool versioned_head = !c.head.is_false();
    std::vector<std::vector<Polyhedron>> lists;
    std::vector<const Atom*> atoms;
    if (versioned_head) {
      lists.push_back(parts_of(c.head));
      atoms.push_back(&c.head);
    }
    for (const auto& b : c.body) {
      lists.push_back(parts_of(b));
      atoms.push_back(&b);
    }
    if (std::any_of(lists.begin(), lists.end(), [](const auto& l) { return l.empty(); })) continue;

    std::size_t emitted = 0;
    std::vector<std::size_t> pick(lists.size(), 0);
    do {
      ConstraintSet k = c.constraint;
      for (std::size_t i = 0; i < lists.size(); ++i) k.add_all(lists[i][pick[i]].instantiate(atoms[i]->args));
      if (!is_satisfiable(k)) continue;
      if (++emitted > opts.max_clauses_per_clause) {
        throw ResourceError("polyvariant specialisation of " + c.id + " exceeds " +
                            std::to_string(opts.max_clauses_per_clause) + " clauses");
      }
      Clause n;
      n.id = c.id;
      for (std::size_t j : pick) n.id += "_" + std::to_string(j + 1);
      for (std::size_t dup = 2; used.count(n.id); ++dup) n.id = n.id + "_x" + std::to_string(dup);
      used.insert(n.id);
      std::size_t a = 0;
      n.head = c.head;
      if (versioned_head) n.head.predicate = version_name(c.head.predicate, pick[a++] + 1);
      for (const auto& b : c.body) n.body.push_back(Atom{version_name(b.predicate, pick[a++] + 1), b.args});
      n.constraint = simplify(k);
      origin[n.id] = c.id;
      out.push_back(std::move(n));
    } while (next_tuple(pick, [&](std::size_t i) { return lists[i].size(); }));
  }

  const DependencyGraph g{Program(out)};
  const std::set<std::string> live = g.reachable_from(std::string(kFalse));
  Specialisation res;
  std::vector<Clause> kept;
  for (auto& c : out) {
    if (!live.count(c.head.predicate)) {
      origin.erase(c.id);
      continue;
    }
    kept.push_back(std::move(c));
  }
  res.program = Program(std::move(kept));
  res.origin = std::move(origin);
  for (const auto& [name, parts] : s) {
    for (std::size_t j = 1; j <= parts.size(); ++j) {
      const std::string v = version_name(name, j);
      if (res.program.predicates().count(v)) res.versions[{name, j}] = v;
    }
  }
  return res;
}

std::string dump_split(const SplitModel& s, const VersionMap& v) {
  std::ostringstream os;
  for (const auto& [name, parts] : s) {
    for (std::size_t j = 0; j < parts.size(); ++j) {
      Atom head{name, {}};
      for (std::size_t i = 0; i < parts[j].dim(); ++i) head.args.emplace_back(positional_name(i));
      os << to_string(head) << " :- " << display_form(parts[j].constraints(), parts[j].dim()) << ".\n";
    }
  }
  os << "% versions\n";
  for (const auto& [key, name] : v) os << "% " << key.first << " part " << key.second << " -> " << name << '\n';
  return os.str();
}

}  // namespace chcv
