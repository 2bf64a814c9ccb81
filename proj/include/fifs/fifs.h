/* fifs: fuzzy iterated function systems on discretized compact domains.
 *
 * C API over the core library. All handles are opaque; every function that
 * can fail returns a fifs_status and leaves a human-readable message in
 * fifs_last_error() (thread-local). Strings returned through char** are
 * heap-allocated; release them with fifs_string_free(). Handles are released
 * with their matching *_free().
 */
#ifndef FIFS_H
#define FIFS_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define FIFS_API __declspec(dllexport)
#else
#define FIFS_API __attribute__((visibility("default")))
#endif

typedef enum fifs_status {
  FIFS_OK = 0,
  FIFS_EINVAL = -1,   /* bad argument or malformed spec string */
  FIFS_EPARSE = -2,   /* config / FZY1 / address text failed to parse */
  FIFS_EIO = -3,      /* file could not be read or written */
  FIFS_EDOMAIN = -4,  /* grid escape, frame mismatch, inadmissible system */
  FIFS_ENOCONV = -5,  /* iteration hit max_iter without reaching tol */
  FIFS_EBUDGET = -6   /* enumeration larger than the configured budget */
} fifs_status;

typedef struct fifs_system fifs_system; /* IFS + grey tables + grid frame */
typedef struct fifs_set fifs_set;       /* quantized fuzzy set on a grid */

FIFS_API const char* fifs_version(void);
/* Message from the most recent failing call on this thread; never NULL. */
FIFS_API const char* fifs_last_error(void);
FIFS_API void fifs_string_free(char* s);

/* --- systems ------------------------------------------------------- */

FIFS_API int fifs_system_load(const char* path, fifs_system** out);
FIFS_API int fifs_system_parse(const char* text, fifs_system** out);
/* Canonical config text; parsing it reproduces the system exactly. */
FIFS_API int fifs_system_format(const fifs_system* sys, char** out_text);
/* Copy with a different resolution (cells per axis) and/or level count;
 * pass -1 to keep a value. Level changes need symbolic grey tables. */
FIFS_API int fifs_system_override(const fifs_system* sys, int grid_cells,
                                  int levels, fifs_system** out);
FIFS_API int fifs_system_branches(const fifs_system* sys);
FIFS_API void fifs_system_free(fifs_system* sys);

/* --- fuzzy sets ----------------------------------------------------- */

FIFS_API int fifs_set_load(const char* path, fifs_set** out);
FIFS_API int fifs_set_save(const fifs_set* set, const char* path);
FIFS_API int fifs_set_format(const fifs_set* set, char** out_text);
/* Plain PGM (P2) rendering, 255 = the top level. */
FIFS_API int fifs_set_render_pgm(const fifs_set* set, const char* path);
FIFS_API int fifs_set_equal(const fifs_set* a, const fifs_set* b, int* out);
FIFS_API void fifs_set_free(fifs_set* set);

/* --- distances ------------------------------------------------------ */

/* kind: dhf | dh | dh0 | dinf | hausdorff.
 * metric: euclid | proj:<axis> | wmax:<w1,...>. */
FIFS_API int fifs_distance(const fifs_set* u, const fifs_set* v,
                           const char* kind, const char* metric, double* out);

/* --- attractors ----------------------------------------------------- */

/* Fixed-point iteration of the fuzzy Hutchinson operator from u0 (or, when
 * u0 is NULL, from the Dirac set at the snapped domain center). tol < 0
 * selects the default tolerance of one cell diagonal. The report carries
 * the per-step distance trace and the fixed-point certificate. */
FIFS_API int fifs_attract_iterate(const fifs_system* sys, const fifs_set* u0,
                                  const char* kind, const char* metric,
                                  double tol, int max_iter, fifs_set** out_set,
                                  char** out_report);

/* Depth-limited code-space enumeration: branch compositions applied to the
 * seed point (NULL = domain center), grey tables folded along each address,
 * leaf contributions max-merged. budget <= 0 selects the default (2^22). */
FIFS_API int fifs_attract_project(const fifs_system* sys, int depth,
                                  const double* seed_xy, long budget,
                                  fifs_set** out_set, char** out_report);

/* --- diagnostics ----------------------------------------------------- */

/* Per-branch contraction witnesses checked on sampled point pairs, grey
 * admissibility, invariant box, fiber-diameter decay table. Returns FIFS_OK
 * when every verdict passes and FIFS_EDOMAIN otherwise; the report is
 * written either way. */
FIFS_API int fifs_verify(const fifs_system* sys, int samples,
                         unsigned long long seed, char** out_report);

/* Address text: "121" or "1,2,1". Writes the snapped point coordinates into
 * out_xy[0..1] and the folded grey level into *out_level. */
FIFS_API int fifs_project_address(const fifs_system* sys, const char* address,
                                  double* out_xy, int* out_level);

/* name: hypo_vs_dhf | dirac_pair | halving | multimetric_agreement.
 * options: whitespace-separated key=value pairs
 * (grid, levels, nlist=2,4,8, nmax, a, b, metric); "" for defaults.
 * Returns FIFS_OK when every verdict in the report passes, FIFS_EDOMAIN on
 * a failing verdict; the report is written either way. */
FIFS_API int fifs_experiment(const char* name, const char* options,
                             char** out_report);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* FIFS_H */
