/* C API for the ground-plane antenna workbench.
 *
 * All entry points return gpb_status; on failure, gpb_last_error() describes
 * the problem (thread-local, valid until the next call on that thread).
 * Strings returned through char** are heap-allocated; release them with
 * gpb_string_free(). Opaque handles are released with their _free function.
 */
#ifndef GPBENCH_H
#define GPBENCH_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gpb_status {
    GPB_OK = 0,
    GPB_ERR_INVALID_ARGUMENT = 1,
    GPB_ERR_RUNTIME = 2,
    GPB_ERR_IO = 3
} gpb_status;

const char* gpb_version(void);
const char* gpb_last_error(void);
void gpb_string_free(char* s);

/* ---- meshing ---- */

typedef struct gpb_mesh gpb_mesh;

/* Builds the ground-plane + element mesh described by a scenario config file
 * (the `geometry`/`coax` sections are used; other sections may be omitted).
 * edge_mm <= 0 uses the file's mesh.edge_mm (or its default). */
gpb_status gpb_mesh_create(const char* scenario_path, double edge_mm, gpb_mesh** out);
gpb_status gpb_mesh_triangle_count(const gpb_mesh* mesh, size_t* out);
gpb_status gpb_mesh_write_stl(const gpb_mesh* mesh, const char* path);
/* Quality/area/topology report as a JSON string. */
gpb_status gpb_mesh_report_json(const gpb_mesh* mesh, char** out);
void gpb_mesh_free(gpb_mesh* mesh);

/* ---- solving and studies ---- */

/* Frequency sweep of one scenario; persists response.csv, pattern.csv, SVG
 * plots and manifest.json into out_dir (NULL uses the config's output.dir). */
gpb_status gpb_run_scenario(const char* scenario_path, const char* out_dir);

/* Parametric sweep; persists per-point artifacts and sweep.csv. */
gpb_status gpb_run_sweep(const char* plan_path, const char* out_dir);

/* Far-field cut of a scenario at one frequency. cut is 'E' or 'H'; the
 * output format follows the file extension (.csv or .svg). */
gpb_status gpb_pattern_cut(const char* scenario_path, double freq_hz, char cut,
                           const char* out_path);

/* ---- closed-form element pattern ---- */

/* Normalized vertical-element pattern over a perfect ground for electrical
 * height kh, sampled at `points` polar angles; .csv or .svg by extension. */
gpb_status gpb_analytic_pattern(double kh, int points, const char* out_path);

/* ---- fabrication planning ---- */

/* Conductor skin depth in mm; sigma_s_m <= 0 selects copper. */
gpb_status gpb_skin_depth_mm(double freq_hz, double sigma_s_m, double* out_mm);

/* Plating current from an area ratio against a reference recipe stored as
 * JSON: {"area_mm2":..,"current_a":..,"duration_h":..,"thickness_mm":..}. */
gpb_status gpb_plating_current_a(double target_area_mm2, const char* reference_json_path,
                                 double duration_h, double* out_a);

/* ---- reference-table integrity ---- */

/* Runs the trend/consistency suite over the checked-in reference tables.
 * all_passed receives 0/1; report receives a human-readable summary. */
gpb_status gpb_fixtures_check(const char* fixtures_dir, int* all_passed, char** report);

#ifdef __cplusplus
}
#endif

#endif /* GPBENCH_H */
