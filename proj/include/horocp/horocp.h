/* C interface to the horocp library. All strings are UTF-8 and owned by the
 * library; they stay valid until the next call on the same context. */
#ifndef HOROCP_H
#define HOROCP_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  define HOROCP_API __declspec(dllexport)
#elif defined(__GNUC__)
#  define HOROCP_API __attribute__((visibility("default")))
#else
#  define HOROCP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum horocp_status {
  HOROCP_OK = 0,
  HOROCP_ERR_INVALID_ARGUMENT = 1,
  HOROCP_ERR_GROUP_MISMATCH = 2,
  HOROCP_ERR_CAP_EXCEEDED = 3,
  HOROCP_ERR_OUT_OF_BALL = 4,
  HOROCP_ERR_DEGENERATE = 5,
  HOROCP_ERR_NOT_CONVERGED = 6,
  HOROCP_ERR_UNDECIDABLE = 7,
  HOROCP_ERR_NULL_HANDLE = 50,
  HOROCP_ERR_INTERNAL = 99
} horocp_status;

typedef struct horocp_context horocp_context;
typedef struct horocp_length horocp_length;

HOROCP_API const char* horocp_version(void);
HOROCP_API const char* horocp_status_string(horocp_status status);

/* Command runner: set key=value options, then run a CLI command. */
HOROCP_API horocp_status horocp_context_create(horocp_context** out);
HOROCP_API void horocp_context_destroy(horocp_context* ctx);
HOROCP_API horocp_status horocp_context_set(horocp_context* ctx, const char* key, const char* value);
HOROCP_API horocp_status horocp_context_clear(horocp_context* ctx);
/* exit_code receives 0 (ok), 1 (check failed) or 2 (usage error / cap). */
HOROCP_API horocp_status horocp_context_run(horocp_context* ctx, const char* command, int* exit_code);
HOROCP_API const char* horocp_context_output(const horocp_context* ctx);
HOROCP_API const char* horocp_context_last_error(const horocp_context* ctx);
/* Merges key=value lines ('#' comments) into the context options. */
HOROCP_API horocp_status horocp_context_load_config(horocp_context* ctx, const char* text);

/* Command table for front ends. Indices are 0-based; out-of-range gives NULL. */
HOROCP_API size_t horocp_command_count(void);
HOROCP_API const char* horocp_command_name(size_t i);
HOROCP_API const char* horocp_command_help(size_t i);
HOROCP_API size_t horocp_command_option_count(size_t i);
/* field: 0 = key, 1 = default, 2 = help */
HOROCP_API const char* horocp_command_option(size_t i, size_t j, int field);

/* Length functions on a named group ("Z2", "H3", ...), generating set
 * ("standard", "diamond", ...) and kind ("word", "l1", "l2", "linf"). */
HOROCP_API horocp_status horocp_length_create(const char* group, const char* gens, const char* kind,
                                              horocp_length** out);
HOROCP_API void horocp_length_destroy(horocp_length* len);
HOROCP_API horocp_status horocp_length_eval(horocp_length* len, const int64_t* coords, size_t n,
                                            double* out);
HOROCP_API horocp_status horocp_length_ball_size(horocp_length* len, double radius, size_t* out);
HOROCP_API const char* horocp_length_last_error(const horocp_length* len);

#ifdef __cplusplus
}
#endif

#endif /* HOROCP_H */
