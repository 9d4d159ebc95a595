/* C interface to the sticktile pipeline shared library.
 *
 * All payloads are JSON strings. Operations are dispatched by name through
 * st_op on an opaque pipeline handle carrying options and the last error.
 * Return codes: 0 ok, 2 verification failure, 3 cap exceeded, 4 malformed
 * or unsupported input, 1 internal error.
 */
#ifndef STICKTILE_H
#define STICKTILE_H

#ifdef _WIN32
#define ST_API __declspec(dllexport)
#else
#define ST_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct st_pipeline st_pipeline;

ST_API const char* st_version(void);

ST_API st_pipeline* st_pipeline_new(void);
ST_API void st_pipeline_free(st_pipeline* p);

/* Options: "cap" (default 10000), "torus_w", "torus_h" (default 2),
 * "window_rows", "window_cols" (defaults 0 = one period), "toy" (0/1),
 * "seed". Values are decimal strings. Returns 0 or 4. */
ST_API int st_pipeline_set_option(st_pipeline* p, const char* key, const char* value);

/* Runs one named operation. Supported ops:
 *   wang_to_ab, solve_wang, solve_ab, verify_bijection, build_table,
 *   solve_to_assignment, fill_assignment, decode_assignment,
 *   check_assignment, assignment_to_schematic, schematic_to_assignment,
 *   validate_schematic, base_rules, marking_rules, synthesize_weave,
 *   check_patch, solve_stick, encode_check, build_geometry, verify_planar,
 *   emit_svg, staple_check
 * input_json carries the operation's named inputs; *output_json receives a
 * malloc'd string to release with st_string_free. */
ST_API int st_op(st_pipeline* p, const char* op, const char* input_json, char** output_json);

ST_API const char* st_last_error(const st_pipeline* p);
ST_API void st_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* STICKTILE_H */
