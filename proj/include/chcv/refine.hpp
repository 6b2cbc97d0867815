#pragma once

// Refinement by predicate splitting and polyvariant specialisation.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "chcv/analysis.hpp"
#include "chcv/cex.hpp"

namespace chcv {

/// Per predicate, the polyhedra (over canonical_args) whose union covers its
/// model fact. A bottom fact has no parts.
using SplitModel = std::map<std::string, std::vector<Polyhedron>>;

/// (predicate, 1-based part index) -> version predicate.
using VersionMap = std::map<std::pair<std::string, std::size_t>, std::string>;

/// Splits each fact D by its interpolants: D & I, then D & i1 & ... &
/// i(k-1) & not ik for each conjunct ik, with negations relaxed to their
/// closure. Several interpolants for one predicate split successively.
SplitModel split_facts(const AbstractModel& m, const TreeInterpolant& interp);

/// Same, from interpolants already over canonical_args.
SplitModel split_facts(const AbstractModel& m, const std::map<std::string, std::vector<ConstraintSet>>& interp);

struct PolyvariantOptions {
  std::size_t max_clauses_per_clause = 512;
};

struct Specialisation {
  Program program;
  VersionMap versions;
  /// New clause id -> id of the clause it was instantiated from.
  std::map<std::string, std::string> origin;
};

std::string version_name(const std::string& predicate, std::size_t part);

/// One clause per satisfiable choice of head and body parts; versions not
/// reachable from false are dropped. Throws ResourceError when one clause
/// would produce more than max_clauses_per_clause instances.
Specialisation polyvariant_specialise(const Program& program, const SplitModel& s,
                                      const PolyvariantOptions& opts = {});

/// Text listing of the split model, then the version map.
std::string dump_split(const SplitModel& s, const VersionMap& v);

}  // namespace chcv
