#pragma once

// The verification loop: specialise by constraint propagation, analyse,
// check the counterexample, refine by splitting, and repeat.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "chcv/analysis.hpp"
#include "chcv/cex.hpp"

namespace chcv {

enum class DumpKind { QA, Spec, Model, PS };

struct Config {
  std::size_t max_refinements = 10;
  std::size_t fm_max_constraints = 10000;
  std::size_t ps_max_clauses_per_clause = 512;
  std::size_t max_analysis_iterations = 1000;
  std::size_t widening_delay = 2;
  bool use_thresholds = true;
  std::set<DumpKind> dumps;
};

/// Throws std::invalid_argument if a cap is zero.
void validate(const Config& cfg);

enum class VerdictKind { Safe, Unsafe, Unknown };
std::string to_string(VerdictKind v);

struct Event {
  std::size_t iteration = 0;
  std::string stage;
  std::string detail;
};

struct Dump {
  /// File name, e.g. "iter0.spec.pl".
  std::string name;
  std::string content;
};

struct Verdict {
  VerdictKind kind = VerdictKind::Unknown;
  std::size_t refinements = 0;
  double time_ms = 0;

  /// Safe: a model of `program` with false bottom.
  AbstractModel model;
  /// The program the last analysis ran on.
  Program program;

  /// Unsafe: the feasible trace over `program`, the same trace over source
  /// clause ids, the tree's constraints and one solution of them.
  std::optional<TraceTerm> trace;
  std::optional<TraceTerm> source_trace;
  ConstraintSet witness_constraints;
  std::map<Var, Rational> witness_point;

  /// Unknown: why the loop stopped.
  std::string reason;

  std::vector<Event> events;
  std::vector<Dump> dumps;
};

/// Runs the loop on normalize_integrity(program). Resource caps and internal
/// failures become Unknown with a reason; no exception escapes for a valid
/// Config.
Verdict verify(const Program& program, const Config& cfg = {});

/// Object with verdict, iterations, time_ms, witness and events.
std::string to_json(const Verdict& v, const std::string& program_name);

/// One row: program, refinement count, result, time.
std::string to_table_row(const Verdict& v, const std::string& program_name);

}  // namespace chcv
