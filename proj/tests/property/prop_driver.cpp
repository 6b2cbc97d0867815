#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "chcv/driver.hpp"
#include "gen.hpp"
#include "oracle.hpp"

using namespace chcv;

TEST_CASE("random programs: verdicts agree with the bounded oracle") {
  std::mt19937 rng(51);
  Config cfg;
  cfg.max_refinements = 4;
  cfg.fm_max_constraints = 2000;
  cfg.ps_max_clauses_per_clause = 64;
  cfg.max_analysis_iterations = 300;

  int cases = 0, oracle_unsafe = 0;
  std::map<VerdictKind, int> kinds;
  for (int attempt = 0; cases < 250 && attempt < 5000; ++attempt) {
    Program p = gen::program(rng);
    bool bad;
    try {
      bad = oracle::derives_false(p, 5, 2000);
    } catch (const oracle::Overflow&) {
      continue;
    }
    ++cases;
    if (bad) ++oracle_unsafe;
    Verdict v = verify(p, cfg);
    ++kinds[v.kind];
    CAPTURE(to_string(p));
    CAPTURE(v.reason);
    if (bad) CHECK(v.kind != VerdictKind::Safe);
    switch (v.kind) {
      case VerdictKind::Safe:
        CHECK(is_inductive_model(v.program, v.model));
        CHECK(v.model.get("false", 0).is_bottom());
        break;
      case VerdictKind::Unsafe: {
        REQUIRE(v.source_trace);
        CHECK(is_satisfiable(v.witness_constraints));
        // the counterexample replays in the input program
        CHECK(oracle::trace_answer(normalize_integrity(p), *v.source_trace).has_value());
        break;
      }
      case VerdictKind::Unknown:
        CHECK_FALSE(v.reason.empty());
        break;
    }
  }
  CHECK(cases == 250);
  CHECK(oracle_unsafe > 20);
  CHECK(kinds[VerdictKind::Safe] > 20);
  MESSAGE("safe " << kinds[VerdictKind::Safe] << ", unsafe " << kinds[VerdictKind::Unsafe] << ", unknown "
                  << kinds[VerdictKind::Unknown]);
}
