#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "chcv/driver.hpp"
#include "chcverify.h"

struct chcv_program {
  chcv::Program program;
};

struct chcv_result {
  chcv::Verdict verdict;
  std::string witness;
  std::string json;
};

namespace {

thread_local std::string last_error;

chcv_status fail(chcv_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

chcv_status parse_into(std::string_view text, chcv_program** out) {
  try {
    auto* p = new chcv_program{chcv::normalize_integrity(chcv::parse_program(text))};
    *out = p;
    last_error.clear();
    return CHCV_OK;
  } catch (const chcv::ProgramError& e) {
    return fail(CHCV_ERR_PARSE, e.what());
  } catch (const std::exception& e) {
    return fail(CHCV_ERR_INTERNAL, e.what());
  }
}

}  // namespace

extern "C" {

void chcv_config_default(chcv_config* cfg) {
  if (!cfg) return;
  const chcv::Config d;
  cfg->max_refinements = d.max_refinements;
  cfg->fm_max_constraints = d.fm_max_constraints;
  cfg->ps_max_clauses_per_clause = d.ps_max_clauses_per_clause;
  cfg->max_analysis_iterations = d.max_analysis_iterations;
  cfg->use_thresholds = d.use_thresholds ? 1 : 0;
  cfg->dumps = 0;
}

chcv_status chcv_program_parse(const char* text, size_t len, chcv_program** out) {
  if (!text || !out) return fail(CHCV_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return parse_into(std::string_view(text, len), out);
}

chcv_status chcv_program_parse_file(const char* path, chcv_program** out) {
  if (!path || !out) return fail(CHCV_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  std::ifstream in(path, std::ios::binary);
  if (!in) return fail(CHCV_ERR_IO, std::string("cannot open ") + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_into(ss.str(), out);
}

size_t chcv_program_clause_count(const chcv_program* p) { return p ? p->program.size() : 0; }

chcv_status chcv_program_to_string(const chcv_program* p, char** out) {
  if (!p || !out) return fail(CHCV_ERR_INVALID_ARGUMENT, "null argument");
  const std::string s = chcv::to_string(p->program);
  *out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!*out) return fail(CHCV_ERR_INTERNAL, "out of memory");
  std::memcpy(*out, s.c_str(), s.size() + 1);
  return CHCV_OK;
}

void chcv_program_free(chcv_program* p) { delete p; }

chcv_status chcv_verify(const chcv_program* p, const chcv_config* cfg, chcv_result** out) {
  if (!p || !out) return fail(CHCV_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  chcv::Config c;
  if (cfg) {
    c.max_refinements = cfg->max_refinements;
    c.fm_max_constraints = cfg->fm_max_constraints;
    c.ps_max_clauses_per_clause = cfg->ps_max_clauses_per_clause;
    c.max_analysis_iterations = cfg->max_analysis_iterations;
    c.use_thresholds = cfg->use_thresholds != 0;
    if (cfg->dumps & CHCV_DUMP_QA) c.dumps.insert(chcv::DumpKind::QA);
    if (cfg->dumps & CHCV_DUMP_SPEC) c.dumps.insert(chcv::DumpKind::Spec);
    if (cfg->dumps & CHCV_DUMP_MODEL) c.dumps.insert(chcv::DumpKind::Model);
    if (cfg->dumps & CHCV_DUMP_PS) c.dumps.insert(chcv::DumpKind::PS);
  }
  try {
    chcv::validate(c);
  } catch (const std::invalid_argument& e) {
    return fail(CHCV_ERR_INVALID_ARGUMENT, e.what());
  }
  try {
    auto* r = new chcv_result{chcv::verify(p->program, c), {}, {}};
    if (r->verdict.kind == chcv::VerdictKind::Unsafe) {
      r->witness = chcv::to_string(*r->verdict.source_trace);
    } else if (r->verdict.kind == chcv::VerdictKind::Safe) {
      r->witness = chcv::dump_model(r->verdict.model);
    }
    *out = r;
    last_error.clear();
    return CHCV_OK;
  } catch (const std::exception& e) {
    return fail(CHCV_ERR_INTERNAL, e.what());
  }
}

chcv_verdict chcv_result_verdict(const chcv_result* r) {
  if (!r) return CHCV_UNKNOWN;
  switch (r->verdict.kind) {
    case chcv::VerdictKind::Safe: return CHCV_SAFE;
    case chcv::VerdictKind::Unsafe: return CHCV_UNSAFE;
    case chcv::VerdictKind::Unknown: return CHCV_UNKNOWN;
  }
  return CHCV_UNKNOWN;
}

size_t chcv_result_refinements(const chcv_result* r) { return r ? r->verdict.refinements : 0; }
double chcv_result_time_ms(const chcv_result* r) { return r ? r->verdict.time_ms : 0.0; }
const char* chcv_result_witness(const chcv_result* r) { return r ? r->witness.c_str() : ""; }
const char* chcv_result_reason(const chcv_result* r) { return r ? r->verdict.reason.c_str() : ""; }

const char* chcv_result_json(const chcv_result* r, const char* program_name) {
  if (!r) return "";
  auto* m = const_cast<chcv_result*>(r);
  m->json = chcv::to_json(r->verdict, program_name ? program_name : "");
  return m->json.c_str();
}

size_t chcv_result_dump_count(const chcv_result* r) { return r ? r->verdict.dumps.size() : 0; }

const char* chcv_result_dump_name(const chcv_result* r, size_t i) {
  if (!r || i >= r->verdict.dumps.size()) return nullptr;
  return r->verdict.dumps[i].name.c_str();
}

const char* chcv_result_dump_content(const chcv_result* r, size_t i) {
  if (!r || i >= r->verdict.dumps.size()) return nullptr;
  return r->verdict.dumps[i].content.c_str();
}

void chcv_result_free(chcv_result* r) { delete r; }
void chcv_string_free(char* s) { std::free(s); }
const char* chcv_last_error(void) { return last_error.c_str(); }
const char* chcv_version(void) { return "0.1.0"; }

}  // extern "C"
