/* C interface to the CHC verifier. All handles are opaque; every function
 * that can fail returns a chcv_status and leaves a message retrievable with
 * chcv_last_error() on the calling thread. */
#ifndef CHCVERIFY_H
#define CHCVERIFY_H

#include <stddef.h>

#if defined(_WIN32)
#define CHCV_API __declspec(dllexport)
#else
#define CHCV_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct chcv_program chcv_program;
typedef struct chcv_result chcv_result;

typedef enum chcv_status {
  CHCV_OK = 0,
  CHCV_ERR_PARSE = 1,
  CHCV_ERR_INVALID_ARGUMENT = 2,
  CHCV_ERR_INTERNAL = 3,
  CHCV_ERR_IO = 4
} chcv_status;

typedef enum chcv_verdict { CHCV_SAFE = 0, CHCV_UNSAFE = 1, CHCV_UNKNOWN = 2 } chcv_verdict;

/* Bit flags for chcv_config.dumps. */
enum {
  CHCV_DUMP_QA = 1 << 0,
  CHCV_DUMP_SPEC = 1 << 1,
  CHCV_DUMP_MODEL = 1 << 2,
  CHCV_DUMP_PS = 1 << 3
};

typedef struct chcv_config {
  size_t max_refinements;
  size_t fm_max_constraints;
  size_t ps_max_clauses_per_clause;
  size_t max_analysis_iterations;
  int use_thresholds;
  unsigned dumps;
} chcv_config;

CHCV_API void chcv_config_default(chcv_config* cfg);

/* Parses and normalizes integrity constraints with constraint heads. */
CHCV_API chcv_status chcv_program_parse(const char* text, size_t len, chcv_program** out);
CHCV_API chcv_status chcv_program_parse_file(const char* path, chcv_program** out);
CHCV_API size_t chcv_program_clause_count(const chcv_program* p);
/* Caller frees *out with chcv_string_free. */
CHCV_API chcv_status chcv_program_to_string(const chcv_program* p, char** out);
CHCV_API void chcv_program_free(chcv_program* p);

/* cfg may be NULL for defaults. */
CHCV_API chcv_status chcv_verify(const chcv_program* p, const chcv_config* cfg, chcv_result** out);

CHCV_API chcv_verdict chcv_result_verdict(const chcv_result* r);
CHCV_API size_t chcv_result_refinements(const chcv_result* r);
CHCV_API double chcv_result_time_ms(const chcv_result* r);
/* Strings below are owned by the result and valid until chcv_result_free. */
/* Unsafe: the trace term over source clause ids; Safe: the model listing. */
CHCV_API const char* chcv_result_witness(const chcv_result* r);
CHCV_API const char* chcv_result_reason(const chcv_result* r);
CHCV_API const char* chcv_result_json(const chcv_result* r, const char* program_name);
CHCV_API size_t chcv_result_dump_count(const chcv_result* r);
CHCV_API const char* chcv_result_dump_name(const chcv_result* r, size_t i);
CHCV_API const char* chcv_result_dump_content(const chcv_result* r, size_t i);
CHCV_API void chcv_result_free(chcv_result* r);

CHCV_API void chcv_string_free(char* s);
CHCV_API const char* chcv_last_error(void);
CHCV_API const char* chcv_version(void);

#ifdef __cplusplus
}
#endif

#endif
