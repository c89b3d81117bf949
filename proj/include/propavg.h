/* propavg: exact fair-division toolkit around averaged-min-value share
 * allocations of indivisible goods.
 *
 * All functions returning propavg_status leave their outputs untouched on
 * failure; propavg_last_error() describes the most recent failure on the
 * calling thread. Handles are freed with their matching *_free function.
 * Every computation uses exact int64 arithmetic; instance construction
 * rejects valuation rows whose total could overflow downstream comparisons
 * (n*(n+1)*row_total must fit in int64), so certificates can be re-checked
 * with plain integer math.
 */
#ifndef PROPAVG_H
#define PROPAVG_H

#include <stdint.h>

#if defined(_WIN32)
#define PROPAVG_API __declspec(dllexport)
#else
#define PROPAVG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct propavg_instance propavg_instance;
typedef struct propavg_allocation propavg_allocation;
typedef struct propavg_report propavg_report;
typedef struct propavg_trace propavg_trace;

typedef enum propavg_status {
  PROPAVG_OK = 0,
  PROPAVG_ERR_INPUT = 1,    /* malformed input, bad index, unparsable document */
  PROPAVG_ERR_INTERNAL = 2, /* broken library guarantee; a bug, report it */
  PROPAVG_ERR_BUDGET = 3    /* enumeration space exceeds the given budget */
} propavg_status;

typedef enum propavg_notion {
  PROPAVG_NOTION_PROP = 0,
  PROPAVG_NOTION_PROP1 = 1,
  PROPAVG_NOTION_PROPM = 2,
  PROPAVG_NOTION_PROPAVG = 3,
  PROPAVG_NOTION_AVG_EFX = 4,
  PROPAVG_NOTION_PROPX = 5,
  PROPAVG_NOTION_EF = 6,
  PROPAVG_NOTION_EF1 = 7,
  PROPAVG_NOTION_EFX = 8
} propavg_notion;

PROPAVG_API const char* propavg_version(void);

/* Message for the most recent failing call on this thread; never NULL. */
PROPAVG_API const char* propavg_last_error(void);

/* Canonical notion name ("PROPAVG", "EF1", ...) or NULL for an unknown code;
 * the parse direction returns -1 for an unknown name. */
PROPAVG_API const char* propavg_notion_name(propavg_notion notion);
PROPAVG_API int propavg_notion_parse(const char* name);

/* ---- instances ---- */

/* values is row-major with n_agents rows of n_goods non-negative entries. */
PROPAVG_API propavg_status propavg_instance_create(int32_t n_agents, int32_t n_goods,
                                                   const int64_t* values, propavg_instance** out);

/* Seed-deterministic uniform values in [0, max_value]. */
PROPAVG_API propavg_status propavg_instance_generate(int32_t n_agents, int32_t n_goods,
                                                     int64_t max_value, uint64_t seed,
                                                     propavg_instance** out);

PROPAVG_API propavg_status propavg_instance_from_json(const char* text, propavg_instance** out);
PROPAVG_API propavg_status propavg_instance_to_json(const propavg_instance* inst, char** out_text);
PROPAVG_API void propavg_instance_free(propavg_instance* inst);

PROPAVG_API int32_t propavg_instance_agents(const propavg_instance* inst);
PROPAVG_API int32_t propavg_instance_goods(const propavg_instance* inst);
/* -1 on a bad index (and the thread error message is set). */
PROPAVG_API int64_t propavg_instance_value(const propavg_instance* inst, int32_t agent, int32_t good);

/* ---- allocations ---- */

/* bundle_sizes has one entry per agent; goods concatenates the bundles in
 * agent order. The allocation must partition the instance's goods. */
PROPAVG_API propavg_status propavg_allocation_create(const propavg_instance* inst,
                                                     const int32_t* bundle_sizes,
                                                     const int32_t* goods,
                                                     propavg_allocation** out);

/* Parses a bare bundle array or any object carrying an "allocation" array,
 * then validates it against the instance. */
PROPAVG_API propavg_status propavg_allocation_from_json(const propavg_instance* inst, const char* text,
                                                        propavg_allocation** out);

PROPAVG_API void propavg_allocation_free(propavg_allocation* alloc);
PROPAVG_API int32_t propavg_allocation_agents(const propavg_allocation* alloc);
PROPAVG_API int32_t propavg_allocation_bundle_size(const propavg_allocation* alloc, int32_t agent);
/* Copies the agent's bundle (ascending good indices) into buf; cap must be at
 * least the bundle size. */
PROPAVG_API propavg_status propavg_allocation_bundle(const propavg_allocation* alloc, int32_t agent,
                                                     int32_t* buf, int32_t cap);

/* ---- solving ---- */

/* Always succeeds on a valid instance (polynomial time); the result passes
 * the PROPAVG verifier by construction. out_trace may be NULL. */
PROPAVG_API propavg_status propavg_solve(const propavg_instance* inst, propavg_allocation** out,
                                         propavg_trace** out_trace);

PROPAVG_API void propavg_trace_free(propavg_trace* trace);
PROPAVG_API int32_t propavg_trace_levels(const propavg_trace* trace);
PROPAVG_API int32_t propavg_trace_level_agents(const propavg_trace* trace, int32_t level);
PROPAVG_API int32_t propavg_trace_level_goods(const propavg_trace* trace, int32_t level);
PROPAVG_API int32_t propavg_trace_level_awards(const propavg_trace* trace, int32_t level);
PROPAVG_API int32_t propavg_trace_level_iterations(const propavg_trace* trace, int32_t level);
/* Slot the last agent of the level picked, or -1 when the level was resolved
 * by singleton awards or the single-agent base case. */
PROPAVG_API int32_t propavg_trace_level_chooser_slot(const propavg_trace* trace, int32_t level);

/* ---- verification ---- */

/* Per-agent verdicts with the exact integer comparison (satisfied iff
 * lhs >= rhs) that decided each one. */
PROPAVG_API propavg_status propavg_verify(const propavg_instance* inst,
                                          const propavg_allocation* alloc, propavg_notion notion,
                                          propavg_report** out);

PROPAVG_API void propavg_report_free(propavg_report* report);
PROPAVG_API int propavg_report_all_satisfied(const propavg_report* report);
PROPAVG_API int propavg_report_agent_satisfied(const propavg_report* report, int32_t agent);
PROPAVG_API int64_t propavg_report_lhs(const propavg_report* report, int32_t agent);
PROPAVG_API int64_t propavg_report_rhs(const propavg_report* report, int32_t agent);

/* ---- exhaustive oracle ---- */

/* Counts satisfying allocations over all n_agents^n_goods assignments.
 * Fails with PROPAVG_ERR_BUDGET when that space exceeds budget. out_first
 * (optional) receives the first satisfying allocation in counter order, or
 * NULL when the count is zero. */
PROPAVG_API propavg_status propavg_enumerate(const propavg_instance* inst, propavg_notion notion,
                                             uint64_t budget, uint64_t* out_count,
                                             propavg_allocation** out_first);

/* Early-exit variant: sets *out_exists without counting everything. */
PROPAVG_API propavg_status propavg_exists(const propavg_instance* inst, propavg_notion notion,
                                          uint64_t budget, int* out_exists);

/* ---- documents ---- */

/* Result document: allocation, certificates for the listed notions, and the
 * trace when non-NULL. Byte-deterministic for equal inputs. */
PROPAVG_API propavg_status propavg_result_to_json(const propavg_instance* inst,
                                                  const propavg_allocation* alloc,
                                                  const propavg_trace* trace,
                                                  const propavg_notion* notions, int32_t n_notions,
                                                  char** out_text);

PROPAVG_API void propavg_string_free(char* text);

#ifdef __cplusplus
}
#endif

#endif /* PROPAVG_H */
