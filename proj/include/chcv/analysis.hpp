#pragma once

// Convex polyhedral analysis of CHC programs: abstract models, the abstract
// immediate-consequence operator, threshold harvesting, the widening fixpoint
// engine with derivation witnesses, and model audits.

#include <map>
#include <string>
#include <vector>

#include "chcv/ast.hpp"
#include "chcv/polyhedron.hpp"

namespace chcv {

/// Fact variables "$0", "$1", ... used as the space of every predicate's
/// polyhedron. Printed as A, B, ... by the dump functions.
std::vector<Var> canonical_args(std::size_t arity);

struct ConstrainedFact {
  std::string predicate;
  std::vector<Var> args;
  Polyhedron poly;
};

/// One polyhedron per predicate; predicates without an entry are bottom.
class AbstractModel {
 public:
  AbstractModel() = default;

  static AbstractModel bottom(const Program& p);
  static AbstractModel top(const Program& p);

  /// Fact of `predicate`, bottom over canonical_args(arity) when absent.
  Polyhedron get(const std::string& predicate, std::size_t arity) const;
  bool has(const std::string& predicate) const { return facts_.count(predicate) != 0; }
  void set(const std::string& predicate, Polyhedron poly);
  const std::map<std::string, Polyhedron>& facts() const { return facts_; }
  std::vector<ConstrainedFact> constrained_facts() const;

 private:
  std::map<std::string, Polyhedron> facts_;
};

/// Pointwise inclusion over the predicates of either model.
bool leq(const AbstractModel& a, const AbstractModel& b);

struct WitnessRef {
  std::string predicate;
  std::size_t entry = 0;
  friend bool operator==(const WitnessRef&, const WitnessRef&) = default;
};

struct WitnessEntry {
  /// Global iteration at which the fact grew.
  std::size_t iteration = 0;
  std::string clause_id;
  /// One reference per body atom, to the child's first entry.
  std::vector<WitnessRef> children;
};

class WitnessTable {
 public:
  const std::vector<WitnessEntry>& entries(const std::string& predicate) const;
  void record(const std::string& predicate, WitnessEntry e) { table_[predicate].push_back(std::move(e)); }
  const std::map<std::string, std::vector<WitnessEntry>>& all() const { return table_; }

 private:
  std::map<std::string, std::vector<WitnessEntry>> table_;
};

/// Contribution of one clause: constraint meet body facts, projected onto
/// the head arguments and expressed over canonical_args.
Polyhedron clause_consequence(const Clause& c, const AbstractModel& m);

/// One application of the abstract operator; per-predicate hull of all clause
/// contributions in program order.
AbstractModel immediate_consequence(const Program& program, const AbstractModel& m);

struct ThresholdOptions {
  std::size_t iterations = 3;
  std::size_t max_facts_per_predicate = 30;
};

/// Atomic constraints of three concrete steps from the all-top
/// interpretation (disjunctive fact sets, not hulls).
ThresholdSet thresholds(const Program& program, const ThresholdOptions& opts = {});

struct AnalysisOptions {
  std::size_t widening_delay = 2;
  std::size_t max_iterations = 1000;
};

struct AnalysisResult {
  AbstractModel model;
  WitnessTable witnesses;
  std::size_t iterations = 0;
};

/// SCC-ordered fixpoint with widening-upto at predicates of cyclic SCCs.
/// Throws ResourceError when max_iterations is exceeded.
AnalysisResult analyze(const Program& program, const ThresholdSet& t, const AnalysisOptions& opts = {});

enum class Safety { Safe, PotentiallyUnsafe };
Safety check_safety(const AbstractModel& m);

/// Every clause contribution is included in its head fact, and false's
/// fact is bottom.
bool is_inductive_model(const Program& program, const AbstractModel& m);

/// Constrained-fact listing `p(A,B) :- ...` one per line, in predicate order.
/// Bottom facts are omitted.
std::string dump_model(const AbstractModel& m);

/// Renames canonical fact variables to A, B, ... for display.
ConstraintSet display_form(const ConstraintSet& c, std::size_t arity);

}  // namespace chcv
