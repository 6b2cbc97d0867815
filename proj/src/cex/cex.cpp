#include "chcv/cex.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace chcv {

// ---------------------------------------------------------------------------
// Trace terms

std::size_t TraceTerm::size() const {
  std::size_t n = 1;
  for (const auto& c : children) n += c.size();
  return n;
}

std::string to_string(const TraceTerm& t) {
  std::string s = t.clause_id;
  if (t.children.empty()) return s;
  s += '(';
  for (std::size_t i = 0; i < t.children.size(); ++i) {
    if (i) s += ',';
    s += to_string(t.children[i]);
  }
  return s + ')';
}

TraceTerm parse_trace(std::string_view text) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  std::function<TraceTerm()> term = [&]() -> TraceTerm {
    skip();
    const std::size_t start = pos;
    while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) ++pos;
    if (pos == start) throw std::invalid_argument("trace term: expected a clause id at offset " + std::to_string(pos));
    TraceTerm t{std::string(text.substr(start, pos - start)), {}};
    skip();
    if (pos < text.size() && text[pos] == '(') {
      ++pos;
      for (;;) {
        t.children.push_back(term());
        skip();
        if (pos < text.size() && text[pos] == ',') {
          ++pos;
          continue;
        }
        if (pos < text.size() && text[pos] == ')') {
          ++pos;
          break;
        }
        throw std::invalid_argument("trace term: expected ',' or ')' at offset " + std::to_string(pos));
      }
    }
    return t;
  };
  TraceTerm t = term();
  skip();
  if (pos != text.size()) throw std::invalid_argument("trace term: trailing input at offset " + std::to_string(pos));
  return t;
}

TraceTerm extract_trace(const WitnessTable& w, const std::string& root) {
  std::function<TraceTerm(const WitnessRef&, std::size_t)> expand = [&](const WitnessRef& ref, std::size_t bound) {
    const auto& entries = w.entries(ref.predicate);
    if (ref.entry >= entries.size()) throw CexError("no derivation witness for " + ref.predicate);
    const WitnessEntry& e = entries[ref.entry];
    if (e.iteration >= bound) throw CexError("witness for " + ref.predicate + " does not precede its parent");
    TraceTerm t{e.clause_id, {}};
    for (const auto& c : e.children) t.children.push_back(expand(c, e.iteration));
    return t;
  };
  return expand({root, 0}, static_cast<std::size_t>(-1));
}

bool well_formed(const Program& p, const TraceTerm& t) {
  const Clause* c = p.find(t.clause_id);
  if (!c || c->body.size() != t.children.size()) return false;
  for (std::size_t i = 0; i < t.children.size(); ++i) {
    const Clause* k = p.find(t.children[i].clause_id);
    if (!k || k->head.predicate != c->body[i].predicate || !well_formed(p, t.children[i])) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// AND-trees

AndTree build_and_tree(const Program& p, const TraceTerm& t) {
  AndTree tree;
  NameSource fresh("_T");
  std::function<void(const TraceTerm&, std::optional<std::size_t>, const Atom*)> build =
      [&](const TraceTerm& term, std::optional<std::size_t> parent, const Atom* atom) {
        const Clause* src = p.find(term.clause_id);
        if (!src) throw CexError("trace term uses unknown clause " + term.clause_id);
        if (src->body.size() != term.children.size()) {
          throw CexError("clause " + term.clause_id + " has " + std::to_string(src->body.size()) +
                         " body atoms but the trace gives " + std::to_string(term.children.size()));
        }
        if (atom && atom->predicate != src->head.predicate) {
          throw CexError("clause " + term.clause_id + " does not define " + atom->predicate);
        }
        AndNode n;
        n.clause = rename_apart(*src, fresh);
        n.parent = parent;
        n.constraints = n.clause.constraint;
        if (atom) {
          n.atom = *atom;
          for (std::size_t k = 0; k < atom->args.size(); ++k) {
            n.constraints.add(
                LinearConstraint::make(LinearTerm(n.clause.head.args[k]), RelOp::Eq, LinearTerm(atom->args[k])));
          }
        } else {
          n.atom = n.clause.head;
        }
        const std::size_t me = tree.nodes_.size();
        tree.nodes_.push_back(n);
        if (parent) tree.nodes_[*parent].children.push_back(me);
        for (std::size_t i = 0; i < term.children.size(); ++i) {
          const Atom body_atom = tree.nodes_[me].clause.body[i];
          build(term.children[i], me, &body_atom);
        }
      };
  build(t, std::nullopt, nullptr);
  return tree;
}

TraceTerm AndTree::trace(std::size_t i) const {
  TraceTerm t{nodes_.at(i).clause.id, {}};
  for (std::size_t c : nodes_[i].children) t.children.push_back(trace(c));
  return t;
}

std::vector<std::size_t> AndTree::subtree(std::size_t i) const {
  std::vector<std::size_t> out{i};
  for (std::size_t k = 0; k < out.size(); ++k) {
    for (std::size_t c : nodes_.at(out[k]).children) out.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

ConstraintSet AndTree::subtree_constraints(std::size_t i) const {
  ConstraintSet s;
  for (std::size_t k : subtree(i)) s.add_all(nodes_[k].constraints);
  return s;
}

ConstraintSet AndTree::outside_constraints(std::size_t i) const {
  const auto inside = subtree(i);
  ConstraintSet s;
  for (std::size_t k = 0; k < nodes_.size(); ++k) {
    if (!std::binary_search(inside.begin(), inside.end(), k)) s.add_all(nodes_[k].constraints);
  }
  return s;
}

ConstraintSet tree_constraints(const AndTree& t) { return t.subtree_constraints(0); }

bool feasible(const AndTree& t) { return is_satisfiable(tree_constraints(t)); }

ConstraintSet tree_projection(const AndTree& t, std::size_t i) {
  const Atom& a = t.node(i).atom;
  return project(t.subtree_constraints(i), VarSet(a.args.begin(), a.args.end()));
}

// ---------------------------------------------------------------------------
// Interpolation

namespace {

ConstraintSet as_conjunction(const LinearConstraint& k) {
  LinearConstraint n = k.normalized();
  if (n.is_trivially_true()) return {};
  if (n.is_trivially_false()) return ConstraintSet::falsum();
  return ConstraintSet{n};
}

void check_interpolant(const ConstraintSet& i, const ConstraintSet& c1, const ConstraintSet& c2, const VarSet& shared,
                       const std::string& where) {
  for (const Var& v : i.vars()) {
    if (!shared.count(v)) throw CexError(where + ": interpolant mentions non-shared variable " + v.name);
  }
  if (!entails(c1, i)) throw CexError(where + ": interpolant is not implied by its side");
  if (is_satisfiable(i & c2)) throw CexError(where + ": interpolant is consistent with the other side");
}

}  // namespace

ConstraintSet interpolate(const ConstraintSet& c1, const ConstraintSet& c2, const VarSet& shared) {
  if (is_satisfiable(c1 & c2)) throw CexError("interpolate: the two sides are jointly satisfiable");
  FarkasCertificate cert = farkas_refutation(c1, c2);
  ConstraintSet i = as_conjunction(cert.c1_part);
  check_interpolant(i, c1, c2, shared, "interpolate");
  return i;
}

TreeInterpolant tree_interpolants(const AndTree& t) {
  if (feasible(t)) throw CexError("tree_interpolants: the tree is feasible");
  const std::size_t n = t.size();

  // Row blocks per node; rows of different nodes are distinct because every
  // row mentions a variable fresh to its node.
  std::vector<LinearConstraint> rows;
  std::vector<std::size_t> owner;
  std::vector<bool> has_falsum(n, false);
  for (std::size_t k = 0; k < n; ++k) {
    for (const auto& r : t.node(k).constraints) {
      if (r.is_trivially_true()) continue;
      if (r.is_trivially_false()) has_falsum[k] = true;
      rows.push_back(r);
      owner.push_back(k);
    }
  }

  std::vector<Rational> y(rows.size(), Rational(0));
  const bool degenerate = std::find(has_falsum.begin(), has_falsum.end(), true) != has_falsum.end();
  if (!degenerate) {
    FarkasCertificate cert = farkas_refutation(ConstraintSet(rows), {});
    if (cert.multipliers.size() != rows.size()) throw CexError("tree_interpolants: duplicate rows in the tree");
    y = cert.multipliers;
  }

  TreeInterpolant out;
  std::vector<ConstraintSet> at(n);
  for (std::size_t k = 1; k < n; ++k) {
    const auto inside = t.subtree(k);
    if (degenerate) {
      bool f = std::any_of(inside.begin(), inside.end(), [&](std::size_t j) { return has_falsum[j]; });
      at[k] = f ? ConstraintSet::falsum() : ConstraintSet{};
    } else {
      std::vector<LinearConstraint> part;
      std::vector<Rational> ys;
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (std::binary_search(inside.begin(), inside.end(), owner[r])) {
          part.push_back(rows[r]);
          ys.push_back(y[r]);
        }
      }
      at[k] = as_conjunction(combine(part, ys));
    }
    const Atom& a = t.node(k).atom;
    check_interpolant(at[k], t.subtree_constraints(k), t.outside_constraints(k), VarSet(a.args.begin(), a.args.end()),
                      "node " + std::to_string(k));
  }
  // Children's interpolants with the node's own constraints imply the node's.
  for (std::size_t k = 1; k < n; ++k) {
    ConstraintSet premise = t.node(k).constraints;
    for (std::size_t c : t.node(k).children) premise.add_all(at[c]);
    if (!entails(premise, at[k])) throw CexError("node " + std::to_string(k) + ": children do not imply interpolant");
    out.facts.push_back({k, t.node(k).atom, at[k]});
  }
  return out;
}

ConstraintSet canonical_interpolant(const NodeInterpolant& n) {
  Renaming r;
  const auto canon = canonical_args(n.atom.arity());
  for (std::size_t i = 0; i < n.atom.args.size(); ++i) r.emplace(n.atom.args[i], canon[i]);
  return n.interpolant.renamed(r);
}

}  // namespace chcv
