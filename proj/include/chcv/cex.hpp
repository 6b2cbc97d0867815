#pragma once

// Counterexample analysis: trace terms, AND-trees, feasibility and tree
// interpolants from Farkas certificates.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chcv/analysis.hpp"
#include "chcv/ast.hpp"

namespace chcv {

struct TraceTerm {
  std::string clause_id;
  std::vector<TraceTerm> children;

  std::size_t size() const;
  friend bool operator==(const TraceTerm&, const TraceTerm&) = default;
};

/// Functional notation, e.g. `c1(c2(c5,c3))`.
std::string to_string(const TraceTerm& t);
/// Inverse of to_string; throws std::invalid_argument on malformed input.
TraceTerm parse_trace(std::string_view text);

class CexError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Expands first witness entries from `root`. Throws CexError if root has no
/// witness.
TraceTerm extract_trace(const WitnessTable& w, const std::string& root = std::string(kFalse));

/// Checks clause ids and child counts against the program.
bool well_formed(const Program& p, const TraceTerm& t);

struct AndNode {
  /// Label atom, over variables shared with the parent's body atom.
  Atom atom;
  /// Renamed-apart clause.
  Clause clause;
  /// Clause constraint plus the equalities identifying its head with atom.
  ConstraintSet constraints;
  std::vector<std::size_t> children;
  std::optional<std::size_t> parent;
};

/// Nodes in preorder; node 0 is the root.
class AndTree {
 public:
  const std::vector<AndNode>& nodes() const { return nodes_; }
  const AndNode& node(std::size_t i) const { return nodes_.at(i); }
  std::size_t size() const { return nodes_.size(); }

  TraceTerm trace(std::size_t i = 0) const;
  /// Node indices of the subtree rooted at i, preorder.
  std::vector<std::size_t> subtree(std::size_t i) const;
  ConstraintSet subtree_constraints(std::size_t i) const;
  /// Constraints of all nodes outside the subtree at i.
  ConstraintSet outside_constraints(std::size_t i) const;

 private:
  friend AndTree build_and_tree(const Program& p, const TraceTerm& t);
  std::vector<AndNode> nodes_;
};

/// Throws CexError on an unknown clause id or a child-count mismatch.
AndTree build_and_tree(const Program& p, const TraceTerm& t);
ConstraintSet tree_constraints(const AndTree& t);
bool feasible(const AndTree& t);

/// Projection of the subtree constraints at node i onto its atom variables.
ConstraintSet tree_projection(const AndTree& t, std::size_t i);

/// Conjunction I with c1 |= I, I & c2 unsatisfiable, vars(I) within shared.
/// Throws CexError if c1 & c2 is satisfiable or a check fails.
ConstraintSet interpolate(const ConstraintSet& c1, const ConstraintSet& c2, const VarSet& shared);

struct NodeInterpolant {
  std::size_t node = 0;
  Atom atom;
  ConstraintSet interpolant;
};

struct TreeInterpolant {
  std::vector<NodeInterpolant> facts;
};

/// One interpolant per non-root node, all read off a single refutation of
/// the whole tree. Throws CexError if the tree is feasible or a check fails.
TreeInterpolant tree_interpolants(const AndTree& t);

/// The interpolant over canonical_args of the node's predicate.
ConstraintSet canonical_interpolant(const NodeInterpolant& n);

}  // namespace chcv
