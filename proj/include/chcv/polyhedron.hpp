#pragma once

// Possibly-not-closed convex polyhedra in constraint form over an ordered
// variable space.

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "chcv/linalg.hpp"

namespace chcv {

class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class Polyhedron {
 public:
  Polyhedron() = default;

  static Polyhedron top(std::vector<Var> space);
  static Polyhedron bottom(std::vector<Var> space);
  /// Throws DomainError if cs mentions a variable outside space.
  static Polyhedron from_constraints(std::vector<Var> space, const ConstraintSet& cs);

  const std::vector<Var>& space() const { return space_; }
  std::size_t dim() const { return space_.size(); }
  bool is_bottom() const { return bottom_; }
  bool is_top() const { return !bottom_ && cs_.empty(); }
  /// Simplified constraints; {0 <= -1} for bottom.
  const ConstraintSet& constraints() const { return cs_; }

  /// Constraints with space()[i] replaced by args[i].
  ConstraintSet instantiate(const std::vector<Var>& args) const;

  friend bool operator==(const Polyhedron&, const Polyhedron&) = default;

 private:
  std::vector<Var> space_;
  ConstraintSet cs_;
  bool bottom_ = false;
};

Polyhedron meet(const Polyhedron& p, const Polyhedron& q);
Polyhedron hull(const Polyhedron& p, const Polyhedron& q);
bool leq(const Polyhedron& p, const Polyhedron& q);
bool equivalent(const Polyhedron& p, const Polyhedron& q);
/// Requires leq(p, q).
Polyhedron widen(const Polyhedron& p, const Polyhedron& q);
/// widen(p, q) plus every threshold entailed by both p and q.
Polyhedron widen_upto(const Polyhedron& p, const Polyhedron& q, const std::vector<LinearConstraint>& thresholds);

/// Candidate invariants per predicate, over the canonical fact variables.
using ThresholdSet = std::map<std::string, std::vector<LinearConstraint>>;

std::string to_string(const Polyhedron& p);

}  // namespace chcv
