#ifndef DFVM_H
#define DFVM_H

/* C interface to the dual finite-volume solver library.
 *
 * Conventions:
 *  - Fallible calls return dfvm_status; DFVM_OK is 0.  On failure the
 *    thread-local message from dfvm_last_error() describes the problem and
 *    stays valid until the next failing call on the same thread.
 *  - Objects returned through out-pointers are owned by the caller and must
 *    be released with the matching *_free function.  Strings returned through
 *    char** must be released with dfvm_string_free.
 *  - Scheme codes: 0 = CE (central), 1 = FU (fully upwind), 2 = IS (isotone).
 */

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dfvm_status {
  DFVM_OK = 0,
  DFVM_ERR_INVALID_ARGUMENT = 1,
  DFVM_ERR_PARSE = 2,
  DFVM_ERR_IO = 3,
  DFVM_ERR_SOLVER = 4,
  DFVM_ERR_INTERNAL = 5
} dfvm_status;

#define DFVM_SCHEME_CE 0
#define DFVM_SCHEME_FU 1
#define DFVM_SCHEME_IS 2

typedef struct dfvm_model_params {
  double m;       /* diffusion exponent, > 0 */
  double p_exp;   /* pressure exponent, < m */
  double q;       /* evaporation exponent, > 0 */
  double E_s;     /* evaporation rate, >= 0 */
  double alpha;   /* inclination, |alpha| <= pi/2 */
  double epsilon; /* regularization, > 0 */
} dfvm_model_params;

typedef struct dfvm_graph_mesh dfvm_graph_mesh;
typedef struct dfvm_tri_mesh dfvm_tri_mesh;
typedef struct dfvm_sim dfvm_sim;

const char* dfvm_version(void);
const char* dfvm_last_error(void);
void dfvm_string_free(char* s);

/* ---- model primitives ---- */

void dfvm_model_params_init(dfvm_model_params* mp); /* fills the defaults */
dfvm_status dfvm_model_params_validate(const dfvm_model_params* mp);

dfvm_status dfvm_regularize(double u, double epsilon, double* out);
double dfvm_bernoulli(double x);
dfvm_status dfvm_evap_exact(double u, double tau, double q, double E_s, double* out);

/* One-interface fitted flux as seen from the sigma side of a 1-D cell.
 * Any of flux/u_bar/pe may be NULL. */
dfvm_status dfvm_flux_1d(double u_i, double u_mu, double sigma, double l, double cell_alpha,
                         const dfvm_model_params* mp, int scheme, double* flux, double* u_bar,
                         double* pe);

/* ---- meshes ---- */

dfvm_status dfvm_graph_mesh_load(const char* path, dfvm_graph_mesh** out);
dfvm_status dfvm_graph_mesh_chain(int n_nodes, double spacing, int reversed,
                                  dfvm_graph_mesh** out);
void dfvm_graph_mesh_free(dfvm_graph_mesh* mesh);
int dfvm_graph_mesh_n_nodes(const dfvm_graph_mesh* mesh);
int dfvm_graph_mesh_n_cells(const dfvm_graph_mesh* mesh);
double dfvm_graph_mesh_total_measure(const dfvm_graph_mesh* mesh);
dfvm_status dfvm_graph_mesh_info_json(const dfvm_graph_mesh* mesh, char** out);

dfvm_status dfvm_tri_mesh_load(const char* path, dfvm_tri_mesh** out);
dfvm_status dfvm_tri_mesh_strip(int nx, int ny, double h, dfvm_tri_mesh** out);
void dfvm_tri_mesh_free(dfvm_tri_mesh* mesh);
int dfvm_tri_mesh_n_points(const dfvm_tri_mesh* mesh);
int dfvm_tri_mesh_n_triangles(const dfvm_tri_mesh* mesh);
double dfvm_tri_mesh_total_area(const dfvm_tri_mesh* mesh);
dfvm_status dfvm_tri_mesh_info_json(const dfvm_tri_mesh* mesh, char** out);

/* ---- simulation ---- */

dfvm_status dfvm_sim_create_graph(const dfvm_graph_mesh* mesh, const dfvm_model_params* mp,
                                  int scheme, dfvm_sim** out);
dfvm_status dfvm_sim_create_tri(const dfvm_tri_mesh* mesh, const dfvm_model_params* mp,
                                int scheme, dfvm_sim** out);
void dfvm_sim_free(dfvm_sim* sim);

dfvm_status dfvm_sim_set_theta(dfvm_sim* sim, double theta);
dfvm_status dfvm_sim_set_initial(dfvm_sim* sim, const double* u, int n);
/* Constant-in-time Dirichlet values at the listed nodes. */
dfvm_status dfvm_sim_set_dirichlet(dfvm_sim* sim, const int* nodes, const double* values,
                                   int count);
dfvm_status dfvm_sim_step(dfvm_sim* sim, double dt, long n_steps);

int dfvm_sim_n_nodes(const dfvm_sim* sim);
double dfvm_sim_time(const dfvm_sim* sim);
long dfvm_sim_step_count(const dfvm_sim* sim);
double dfvm_sim_mass(const dfvm_sim* sim);
dfvm_status dfvm_sim_get_u(const dfvm_sim* sim, double* out, int n);

/* ---- configured runs ---- */

/* Executes the JSON run configuration; relative paths inside the text resolve
 * against base_dir (may be NULL or empty for the working directory).  On
 * success *summary_json receives a JSON object with steps, t_final,
 * mass_initial, mass_final, min_u_overall, any_dominance_violation,
 * output_dir. */
dfvm_status dfvm_run_config_text(const char* config_json, const char* base_dir,
                                 char** summary_json);
dfvm_status dfvm_run_config_file(const char* path, char** summary_json);

/* ---- verification ---- */

/* Scans the flux monotonicity conditions on [0, grid_max]^2 and reports the
 * violation count plus a JSON report.  Either out-pointer may be NULL. */
dfvm_status dfvm_check_isotonicity(int scheme, const dfvm_model_params* mp, double sigma,
                                   double l, double grid_max, double grid_step, double fd_step,
                                   long* n_violations, char** report_json);

/* 1 if the fully-upwind closed-form bound holds at (m, pe), 0 if not,
 * -1 on invalid arguments. */
int dfvm_fu_bound(double m, double pe);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* DFVM_H */
