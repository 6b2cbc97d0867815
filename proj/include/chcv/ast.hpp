#pragma once

// Constrained Horn clause programs: syntax objects, parsing, printing,
// integrity-constraint normalization, renaming and the predicate dependency
// graph.

#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chcv/linalg.hpp"

namespace chcv {

inline constexpr std::string_view kFalse = "false";

struct Atom {
  std::string predicate;
  std::vector<Var> args;

  std::size_t arity() const { return args.size(); }
  bool is_false() const { return predicate == kFalse; }
  friend bool operator==(const Atom&, const Atom&) = default;
};

struct Clause {
  std::string id;
  /// Predicate `false` for integrity constraints.
  Atom head;
  /// Extended input form `phi :- body`: the head is a constraint conjunction.
  /// Removed by normalize_integrity.
  bool constrained_head = false;
  std::vector<LinearConstraint> head_constraint;
  ConstraintSet constraint;
  std::vector<Atom> body;

  bool is_integrity() const { return head.is_false(); }
  VarSet vars() const;
  VarSet head_vars() const;
  friend bool operator==(const Clause&, const Clause&) = default;
};

class ProgramError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public ProgramError {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_, column_;
};

/// Ordered clause list; validates unique ids, consistent arities and that
/// `false` never occurs in a body.
class Program {
 public:
  Program() = default;
  explicit Program(std::vector<Clause> clauses);

  const std::vector<Clause>& clauses() const { return clauses_; }
  std::size_t size() const { return clauses_.size(); }
  /// predicate -> arity, for every predicate occurring in the program.
  const std::map<std::string, std::size_t>& predicates() const { return arity_; }
  const Clause* find(std::string_view id) const;
  /// Position of the clause in program order.
  std::size_t index_of(std::string_view id) const;
  bool has_constrained_heads() const;

 private:
  std::vector<Clause> clauses_;
  std::map<std::string, std::size_t> arity_;
};

struct ParseOptions {
  /// Reject predicate names that clash with generated names: `p__q`, `p__a`
  /// and version names `p_<digits>`.
  bool reserve_generated_names = true;
};

Program parse_program(std::string_view text, const ParseOptions& opts = {});

/// Replaces each `phi :- body` by `false :- d, body` for each disjunct d of
/// the negation of phi.
Program normalize_integrity(const Program& p);

/// Deterministic fresh-name generator. Names start with '_' so they print as
/// Prolog variables.
class NameSource {
 public:
  explicit NameSource(std::string prefix = "_V") : prefix_(std::move(prefix)) {}
  Var fresh() { return Var(prefix_ + std::to_string(++next_)); }

 private:
  std::string prefix_;
  std::size_t next_ = 0;
};

Clause renamed(const Clause& c, const Renaming& r);
Clause rename_apart(const Clause& c, NameSource& fresh);

/// Canonical alpha-variant (variables renamed by first occurrence).
Clause canonical_variant(const Clause& c);
bool alpha_equivalent(const Clause& a, const Clause& b);

class DependencyGraph {
 public:
  explicit DependencyGraph(const Program& p);

  const std::set<std::string>& nodes() const { return nodes_; }
  const std::set<std::pair<std::string, std::string>>& edges() const { return edges_; }
  /// Strongly connected components, callees before callers.
  const std::vector<std::vector<std::string>>& sccs() const { return sccs_; }
  bool is_cyclic(const std::vector<std::string>& scc) const;
  /// Predicates reachable from `root` (including root).
  std::set<std::string> reachable_from(const std::string& root) const;

 private:
  std::set<std::string> nodes_;
  std::set<std::pair<std::string, std::string>> edges_;
  std::vector<std::vector<std::string>> sccs_;
};

DependencyGraph dependency_graph(const Program& p);

std::string to_string(const Atom& a);
std::string to_string(const Clause& c);
std::string to_string(const Program& p);

/// Fact variable names A, B, ..., Z, A1, B1, ... by argument position.
std::string positional_name(std::size_t i);

}  // namespace chcv
