#include <algorithm>
#include <functional>
#include <sstream>

#include "chcv/ast.hpp"

namespace chcv {

ParseError::ParseError(const std::string& msg, std::size_t line, std::size_t column)
    : ProgramError(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
      line_(line),
      column_(column) {}

VarSet Clause::head_vars() const { return VarSet(head.args.begin(), head.args.end()); }

VarSet Clause::vars() const {
  VarSet s = head_vars();
  for (const auto& a : body) s.insert(a.args.begin(), a.args.end());
  for (const auto& c : constraint) {
    for (const auto& [v, k] : c.coeffs()) s.insert(v);
  }
  for (const auto& c : head_constraint) {
    for (const auto& [v, k] : c.coeffs()) s.insert(v);
  }
  return s;
}

Program::Program(std::vector<Clause> clauses) : clauses_(std::move(clauses)) {
  std::set<std::string> ids;
  auto note = [&](const Atom& a) {
    auto [it, inserted] = arity_.emplace(a.predicate, a.arity());
    if (!inserted && it->second != a.arity()) {
      throw ProgramError("arity mismatch for predicate " + a.predicate + ": " +
                         std::to_string(it->second) + " vs " + std::to_string(a.arity()));
    }
  };
  for (const auto& c : clauses_) {
    if (!ids.insert(c.id).second) throw ProgramError("duplicate clause id " + c.id);
    if (c.head.is_false() && c.head.arity() != 0) throw ProgramError("false takes no arguments");
    if (!c.constrained_head) note(c.head);
    for (const auto& b : c.body) {
      if (b.is_false()) throw ProgramError("false may not occur in a clause body (" + c.id + ")");
      note(b);
    }
  }
}

const Clause* Program::find(std::string_view id) const {
  for (const auto& c : clauses_) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

std::size_t Program::index_of(std::string_view id) const {
  for (std::size_t i = 0; i < clauses_.size(); ++i) {
    if (clauses_[i].id == id) return i;
  }
  return clauses_.size();
}

bool Program::has_constrained_heads() const {
  return std::any_of(clauses_.begin(), clauses_.end(), [](const auto& c) { return c.constrained_head; });
}

// ---------------------------------------------------------------------------
// Renaming

namespace {

Var rename_var(const Var& v, const Renaming& r) {
  auto it = r.find(v);
  return it == r.end() ? v : it->second;
}

Atom rename_atom(const Atom& a, const Renaming& r) {
  Atom out{a.predicate, {}};
  for (const auto& v : a.args) out.args.push_back(rename_var(v, r));
  return out;
}

}  // namespace

Clause renamed(const Clause& c, const Renaming& r) {
  Clause out = c;
  out.head = rename_atom(c.head, r);
  for (auto& b : out.body) b = rename_atom(b, r);
  out.constraint = c.constraint.renamed(r);
  for (auto& h : out.head_constraint) h = h.renamed(r);
  return out;
}

Clause rename_apart(const Clause& c, NameSource& fresh) {
  Renaming r;
  for (const Var& v : c.vars()) r.emplace(v, fresh.fresh());
  return renamed(c, r);
}

Clause canonical_variant(const Clause& c) {
  Renaming r;
  std::size_t k = 0;
  auto visit = [&](const Var& v) {
    if (!r.count(v)) r.emplace(v, Var("_C" + std::to_string(++k)));
  };
  for (const auto& v : c.head.args) visit(v);
  for (const auto& b : c.body) {
    for (const auto& v : b.args) visit(v);
  }
  for (const auto& h : c.head_constraint) {
    for (const auto& [v, a] : h.coeffs()) visit(v);
  }
  for (const auto& k2 : c.constraint) {
    for (const auto& [v, a] : k2.coeffs()) visit(v);
  }
  Clause out = renamed(c, r);
  out.id.clear();
  return out;
}

bool alpha_equivalent(const Clause& a, const Clause& b) {
  return canonical_variant(a) == canonical_variant(b);
}

// ---------------------------------------------------------------------------
// Dependency graph (Tarjan)

DependencyGraph::DependencyGraph(const Program& p) {
  for (const auto& [name, arity] : p.predicates()) nodes_.insert(name);
  for (const auto& c : p.clauses()) {
    if (c.constrained_head) continue;
    for (const auto& b : c.body) edges_.emplace(c.head.predicate, b.predicate);
  }
  std::map<std::string, std::vector<std::string>> succ;
  for (const auto& [from, to] : edges_) succ[from].push_back(to);

  std::map<std::string, std::size_t> index, low;
  std::set<std::string> on_stack;
  std::vector<std::string> stack;
  std::size_t counter = 0;
  std::function<void(const std::string&)> visit = [&](const std::string& v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack.insert(v);
    for (const auto& w : succ[v]) {
      if (!index.count(w)) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack.count(w)) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::string> scc;
      std::string w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack.erase(w);
        scc.push_back(w);
      } while (w != v);
      std::sort(scc.begin(), scc.end());
      sccs_.push_back(std::move(scc));
    }
  };
  for (const auto& n : nodes_) {
    if (!index.count(n)) visit(n);
  }
}

bool DependencyGraph::is_cyclic(const std::vector<std::string>& scc) const {
  if (scc.size() > 1) return true;
  return !scc.empty() && edges_.count({scc[0], scc[0]}) != 0;
}

std::set<std::string> DependencyGraph::reachable_from(const std::string& root) const {
  std::set<std::string> seen{root};
  std::vector<std::string> work{root};
  while (!work.empty()) {
    std::string v = work.back();
    work.pop_back();
    for (auto it = edges_.lower_bound({v, std::string()}); it != edges_.end() && it->first == v; ++it) {
      if (seen.insert(it->second).second) work.push_back(it->second);
    }
  }
  return seen;
}

DependencyGraph dependency_graph(const Program& p) { return DependencyGraph(p); }

// ---------------------------------------------------------------------------
// Printing

std::string positional_name(std::size_t i) {
  std::string s(1, static_cast<char>('A' + i % 26));
  if (i >= 26) s += std::to_string(i / 26);
  return s;
}

std::string to_string(const Atom& a) {
  if (a.args.empty()) return a.predicate;
  std::string s = a.predicate + "(";
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (i) s += ",";
    s += a.args[i].name;
  }
  return s + ")";
}

std::string to_string(const Clause& c) {
  std::ostringstream os;
  os << c.id << ". ";
  if (c.constrained_head) {
    for (std::size_t i = 0; i < c.head_constraint.size(); ++i) os << (i ? ", " : "") << c.head_constraint[i];
  } else {
    os << to_string(c.head);
  }
  std::vector<std::string> items;
  for (const auto& k : c.constraint) items.push_back(to_string(k));
  for (const auto& b : c.body) items.push_back(to_string(b));
  if (!items.empty()) {
    os << " :- ";
    for (std::size_t i = 0; i < items.size(); ++i) os << (i ? ", " : "") << items[i];
  }
  os << '.';
  return os.str();
}

std::string to_string(const Program& p) {
  std::string s;
  for (const auto& c : p.clauses()) s += to_string(c) + "\n";
  return s;
}

// ---------------------------------------------------------------------------
// Integrity constraints with constraint heads

Program normalize_integrity(const Program& p) {
  std::vector<Clause> out;
  for (const auto& c : p.clauses()) {
    if (!c.constrained_head) {
      out.push_back(c);
      continue;
    }
    // not(c1 & ... & ck) = not c1 | ... | not ck ; not(t = b) = t < b | t > b
    std::vector<LinearConstraint> disjuncts;
    for (const auto& h : c.head_constraint) {
      if (h.is_equality()) {
        auto halves = h.as_inequalities();  // t <= b, -t <= -b
        disjuncts.push_back(halves[0].negation());  // t > b
        disjuncts.push_back(halves[1].negation());  // t < b
      } else {
        disjuncts.push_back(h.negation());
      }
    }
    std::size_t k = 0;
    for (const auto& d : disjuncts) {
      if (d.is_trivially_false()) continue;
      Clause n;
      n.id = disjuncts.size() == 1 ? c.id : c.id + "_n" + std::to_string(++k);
      n.head = Atom{std::string(kFalse), {}};
      n.constraint.add(d);
      n.constraint.add_all(c.constraint);
      n.body = c.body;
      out.push_back(std::move(n));
    }
  }
  return Program(std::move(out));
}

}  // namespace chcv
