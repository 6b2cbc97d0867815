#include "chcv/driver.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>

#include "chcv/qa.hpp"
#include "chcv/refine.hpp"
#include "chcv/specialise.hpp"
#include "json.hpp"

namespace chcv {
namespace {

class Run {
 public:
  explicit Run(const Config& cfg) : cfg_(cfg) {}

  Verdict go(const Program& input) {
    ScopedLimits limits({cfg_.fm_max_constraints});
    Program p = normalize_integrity(input);
    for (const auto& c : p.clauses()) origin_[c.id] = c.id;
    for (std::size_t k = 0;; ++k) {
      iter_ = k;
      v_.refinements = k;

      Program qa = qa_transform(p, Atom{std::string(kFalse), {}});
      dump(DumpKind::QA, "qa.pl", to_string(qa));
      AnalysisResult qa_res = analyze(qa, harvest(qa), analysis_options());
      Strengthened s = strengthen_detailed(p, qa_res.model);
      dump(DumpKind::Spec, "spec.pl", dump_specialised(p, s));
      event("cps", std::to_string(s.program.size()) + " clauses kept, " + std::to_string(s.deleted.size()) +
                       " deleted");
      const Program& ps = s.program;
      v_.program = ps;

      AnalysisResult res = analyze(ps, harvest(ps), analysis_options());
      dump(DumpKind::Model, "model.txt", dump_model(res.model));
      if (early_safe(ps)) {
        event("cps", "no clause with head false remains");
        return safe(ps, res.model);
      }
      if (check_safety(res.model) == Safety::Safe) {
        event("cpa", "no constrained fact for false");
        return safe(ps, res.model);
      }

      TraceTerm trace = extract_trace(res.witnesses);
      AndTree tree = build_and_tree(ps, trace);
      event("cex", "trace " + to_string(trace));
      if (feasible(tree)) return unsafe(trace, tree);
      event("cex", "trace is infeasible");

      if (k >= cfg_.max_refinements) {
        return unknown("refinement limit " + std::to_string(cfg_.max_refinements) + " reached");
      }
      TreeInterpolant ti = tree_interpolants(tree);
      for (const auto& f : ti.facts) {
        event("interpolant",
              f.atom.predicate + ": " + to_string(display_form(canonical_interpolant(f), f.atom.arity())));
      }
      SplitModel split = split_facts(res.model, ti);
      Specialisation next =
          polyvariant_specialise(ps, split, PolyvariantOptions{cfg_.ps_max_clauses_per_clause});
      dump(DumpKind::PS, "ps.pl", to_string(next.program) + dump_split(split, next.versions));
      event("ps", std::to_string(next.program.size()) + " clauses, " + std::to_string(next.versions.size()) +
                      " predicate versions");

      std::map<std::string, std::string> o;
      for (const auto& [id, from] : next.origin) o[id] = origin_.at(from);
      origin_ = std::move(o);
      p = std::move(next.program);
    }
  }

  Verdict& verdict() { return v_; }

  Verdict unknown(const std::string& reason) {
    event("stop", reason);
    v_.kind = VerdictKind::Unknown;
    v_.reason = reason;
    return v_;
  }

 private:
  AnalysisOptions analysis_options() const { return {cfg_.widening_delay, cfg_.max_analysis_iterations}; }

  ThresholdSet harvest(const Program& p) const { return cfg_.use_thresholds ? thresholds(p) : ThresholdSet{}; }

  void event(std::string stage, std::string detail) { v_.events.push_back({iter_, std::move(stage), std::move(detail)}); }

  void dump(DumpKind k, const std::string& suffix, std::string content) {
    if (cfg_.dumps.count(k)) v_.dumps.push_back({"iter" + std::to_string(iter_) + "." + suffix, std::move(content)});
  }

  Verdict safe(const Program& p, const AbstractModel& m) {
    if (!is_inductive_model(p, m)) return unknown("internal: safety model failed the inductiveness audit");
    v_.kind = VerdictKind::Safe;
    v_.model = m;
    return v_;
  }

  Verdict unsafe(const TraceTerm& trace, const AndTree& tree) {
    ConstraintSet k = tree_constraints(tree);
    auto point = find_model(k);
    if (!point) return unknown("internal: feasible trace without a solution");
    std::function<TraceTerm(const TraceTerm&)> map_ids = [&](const TraceTerm& t) {
      auto it = origin_.find(t.clause_id);
      TraceTerm out{it == origin_.end() ? t.clause_id : it->second, {}};
      for (const auto& c : t.children) out.children.push_back(map_ids(c));
      return out;
    };
    v_.kind = VerdictKind::Unsafe;
    v_.trace = trace;
    v_.source_trace = map_ids(trace);
    v_.witness_constraints = std::move(k);
    v_.witness_point = std::move(*point);
    event("cex", "trace is feasible; source trace " + to_string(*v_.source_trace));
    return v_;
  }

  const Config& cfg_;
  Verdict v_;
  std::size_t iter_ = 0;
  std::map<std::string, std::string> origin_;
};

}  // namespace

void validate(const Config& cfg) {
  if (cfg.fm_max_constraints == 0 || cfg.ps_max_clauses_per_clause == 0 || cfg.max_analysis_iterations == 0) {
    throw std::invalid_argument("configuration caps must be positive");
  }
}

std::string to_string(VerdictKind v) {
  switch (v) {
    case VerdictKind::Safe: return "safe";
    case VerdictKind::Unsafe: return "unsafe";
    case VerdictKind::Unknown: return "unknown";
  }
  return "unknown";
}

Verdict verify(const Program& program, const Config& cfg) {
  validate(cfg);
  const auto start = std::chrono::steady_clock::now();
  Run run(cfg);
  Verdict v;
  try {
    v = run.go(program);
  } catch (const ResourceError& e) {
    v = run.unknown(std::string("resource limit: ") + e.what());
  } catch (const CexError& e) {
    v = run.unknown(std::string("counterexample analysis failed: ") + e.what());
  } catch (const std::exception& e) {
    v = run.unknown(std::string("internal: ") + e.what());
  }
  v.time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return v;
}

std::string to_json(const Verdict& v, const std::string& program_name) {
  nlohmann::json j;
  j["program"] = program_name;
  j["verdict"] = to_string(v.kind);
  j["iterations"] = v.refinements;
  j["time_ms"] = v.time_ms;
  switch (v.kind) {
    case VerdictKind::Safe: {
      nlohmann::json facts = nlohmann::json::array();
      std::istringstream lines(dump_model(v.model));
      for (std::string line; std::getline(lines, line);) facts.push_back(line);
      j["witness"] = facts;
      break;
    }
    case VerdictKind::Unsafe: {
      j["witness"] = to_string(*v.trace);
      j["source_trace"] = to_string(*v.source_trace);
      nlohmann::json point = nlohmann::json::object();
      for (const auto& [var, val] : v.witness_point) point[var.name] = val.get_str();
      j["witness_point"] = point;
      break;
    }
    case VerdictKind::Unknown:
      j["witness"] = nullptr;
      j["reason"] = v.reason;
      break;
  }
  nlohmann::json events = nlohmann::json::array();
  for (const auto& e : v.events) events.push_back({{"iteration", e.iteration}, {"stage", e.stage}, {"detail", e.detail}});
  j["events"] = events;
  return j.dump(2);
}

std::string to_table_row(const Verdict& v, const std::string& program_name) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2fs", v.time_ms / 1000.0);
  std::ostringstream os;
  os << program_name << " | " << v.refinements << " | " << to_string(v.kind) << " | " << buf;
  return os.str();
}

}  // namespace chcv
