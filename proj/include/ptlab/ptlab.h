#ifndef PTLAB_H
#define PTLAB_H

#include <stdint.h>

#if defined(_WIN32)
#define PTLAB_API __declspec(dllexport)
#else
#define PTLAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct ptlab_instance ptlab_instance;

typedef enum ptlab_status {
  PTLAB_OK = 0,
  PTLAB_INVALID_ARGUMENT = 1,
  PTLAB_RESOURCE_LIMIT = 2,
  PTLAB_CONTRACT_VIOLATION = 3,
  PTLAB_UNSUPPORTED = 4,
  PTLAB_IO = 5,
  PTLAB_VERIFY_FAILED = 6,
  PTLAB_INTERNAL = 7
} ptlab_status;

/* Message of the last failing call on this thread; "" after a success. */
PTLAB_API const char* ptlab_last_error(void);
PTLAB_API const char* ptlab_status_name(ptlab_status s);

/* Strings returned through char** are owned by the caller. */
PTLAB_API void ptlab_string_free(char* s);

/* family: mono, bb15, unate, onelevel, fi. world: yes, no. storage: explicit, lazy (NULL = explicit). */
PTLAB_API ptlab_status ptlab_instance_sample(const char* family, uint32_t n, const char* world, uint64_t seed,
                                             const char* storage, ptlab_instance** out);
PTLAB_API ptlab_status ptlab_instance_from_json(const char* json, ptlab_instance** out);
PTLAB_API ptlab_status ptlab_instance_load(const char* path, ptlab_instance** out);
PTLAB_API ptlab_status ptlab_instance_to_json(const ptlab_instance* inst, char** out);
PTLAB_API void ptlab_instance_free(ptlab_instance* inst);

PTLAB_API uint32_t ptlab_instance_dimension(const ptlab_instance* inst);
PTLAB_API const char* ptlab_instance_family(const ptlab_instance* inst);

/* x as hex (bit k of the integer is x_{k+1}). */
PTLAB_API ptlab_status ptlab_instance_eval_hex(const ptlab_instance* inst, const char* hex, int* value);

/* {"signature":..., "value":..., "eval":...} for a middle-layer x; PTLAB_CONTRACT_VIOLATION outside. */
PTLAB_API ptlab_status ptlab_instance_signature_json(const ptlab_instance* inst, const char* hex, char** out);

/* JSON array of m hex strings drawn from the given seed. With middle_only, only
 * strings inside the family's middle band are returned. */
PTLAB_API ptlab_status ptlab_instance_random_points(const ptlab_instance* inst, uint64_t m, uint64_t seed,
                                                    int middle_only, char** out);

/* attack: bb15, two_level, edge. tester_json may be NULL. Writes the verdict as JSON. */
PTLAB_API ptlab_status ptlab_attack(const ptlab_instance* inst, const char* attack, const char* tester_json,
                                    char** verdict_json);

/* options_json keys: samples, seed, exhaustive (bool). May be NULL. */
PTLAB_API ptlab_status ptlab_distance_json(const ptlab_instance* inst, const char* options_json, char** out);

/* Comma-separated experiment names. */
PTLAB_API ptlab_status ptlab_experiment_names(char** out);

/* Runs and persists an experiment. out: {"directory","config_hash","csv","rows"}. */
PTLAB_API ptlab_status ptlab_experiment_run(const char* config_json, char** out);

/* Reruns without writing and checks expectations plus any stored rows for the
 * same config hash. out: {"ok","lines","config_hash"}. Returns PTLAB_VERIFY_FAILED
 * when a check fails (out is still filled). */
PTLAB_API ptlab_status ptlab_experiment_verify(const char* config_json, char** out);

#ifdef __cplusplus
}
#endif

#endif
