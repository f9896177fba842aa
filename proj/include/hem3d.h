/* C API for the hem3d design-space exploration engine.
 *
 * All entry points are exported from the shared library with C linkage.
 * Objects are opaque handles; every fallible call returns a status code.
 * Strings returned through out-parameters are heap-allocated and must be
 * released with hem3d_free_string().
 */
#ifndef HEM3D_H
#define HEM3D_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hem3d_status {
  HEM3D_OK = 0,
  HEM3D_ERR_CONFIG = 1,     /* usage / configuration error */
  HEM3D_ERR_RUNTIME = 2,    /* runtime failure */
  HEM3D_ERR_INFEASIBLE = 3, /* PT selection constraint unsatisfiable */
} hem3d_status;

typedef struct hem3d_design hem3d_design;
typedef struct hem3d_archive hem3d_archive;

const char* hem3d_version(void);
void hem3d_free_string(char* s);

/* ---- command-level API (config is a JSON document, see README) ---- */

hem3d_status hem3d_cmd_generate(const char* config_json, char** error_out);
hem3d_status hem3d_cmd_optimize(const char* config_json, char** error_out);
hem3d_status hem3d_cmd_evaluate(const char* config_json, char** result_json_out,
                                char** error_out);
/* On HEM3D_ERR_INFEASIBLE the result JSON is still produced. */
hem3d_status hem3d_cmd_select(const char* config_json, char** result_json_out,
                              char** error_out);
hem3d_status hem3d_cmd_plot(const char* config_json, char** error_out);

/* ---- object-level API ---- */

hem3d_status hem3d_design_parse(const char* json, hem3d_design** out,
                                char** error_out);
hem3d_status hem3d_design_emit(const hem3d_design* design, char** json_out);
/* HEM3D_OK when valid; HEM3D_ERR_RUNTIME with the first violated rule in
 * error_out otherwise. */
hem3d_status hem3d_design_validate(const hem3d_design* design, int max_degree,
                                   char** error_out);
int hem3d_design_tile_count(const hem3d_design* design);
int hem3d_design_link_count(const hem3d_design* design);
void hem3d_design_free(hem3d_design* design);

hem3d_status hem3d_archive_parse(const char* json, hem3d_archive** out,
                                 char** error_out);
int hem3d_archive_size(const hem3d_archive* archive);
double hem3d_archive_hypervolume(const hem3d_archive* archive);
void hem3d_archive_free(hem3d_archive* archive);

#ifdef __cplusplus
}
#endif

#endif /* HEM3D_H */
