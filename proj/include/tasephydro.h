/* tasephydro: inhomogeneous TASEP / last-passage hydrodynamics toolkit.
 *
 * C API over the C++ core. All functions return th_status unless noted;
 * objects are opaque handles that must be released with the matching _free.
 * Handles are safe to share across threads for read-only use.
 */
#ifndef TASEPHYDRO_H
#define TASEPHYDRO_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
    TH_OK = 0,
    TH_EINVAL = 1,  /* invalid argument */
    TH_EPARSE = 2,  /* config / description parse error */
    TH_EMEM = 3,    /* memory budget exceeded */
    TH_ERUN = 4,    /* run invalidated (e.g. boundary overrun, cap exceeded) */
    TH_EIO = 5,     /* file system error */
    TH_EUNKNOWN = 6
} th_status;

/* Message for the most recent failing call on this thread. */
const char* th_last_error(void);
const char* th_version(void);

/* ---- speed fields -------------------------------------------------------- */

typedef struct th_field th_field;

/* Key=value description text; see the README for the grammar. */
th_status th_field_parse(const char* text, th_field** out);
th_status th_field_open(const char* path, th_field** out);
void th_field_free(th_field* f);

/* Point evaluation (lower-semicontinuous convention on curves). */
double th_field_eval(const th_field* f, double x, double y);
/* liminf / limsup over shrinking balls. */
th_status th_field_envelopes(const th_field* f, double x, double y, double* lo, double* hi);
/* certified range on [x0,x1] x [y0,y1]. */
th_status th_field_bounds(const th_field* f, double x0, double y0, double x1, double y1,
                          double* lo, double* hi);
/* particle-frame view c~(x,y) = c(x+y, y), and its inverse. */
th_status th_field_shear(const th_field* f, th_field** out);
th_status th_field_unshear(const th_field* f, th_field** out);

/* ---- closed forms --------------------------------------------------------- */

double th_gamma_shape(double x, double y); /* (sqrt x + sqrt y)^2, NaN on bad input */
double th_psi(double y);                   /* negative Legendre dual of rho(1-rho) */

/* ---- experiments ----------------------------------------------------------- */

typedef struct th_run th_run;

/* cfg_text is flat key=value configuration (same format as config files).
 * Runs the experiment, writes outputs and manifest.json into the out dir.
 * Returns TH_OK when the run executed; *out reports pass/fail. */
th_status th_run_experiment(const char* cfg_text, th_run** out);
int th_run_passed(const th_run* r);               /* 1 if all assertions held */
const char* th_run_manifest(const th_run* r);     /* manifest JSON */
const char* th_run_summary(const th_run* r);      /* one-line summary */
void th_run_free(th_run* r);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* TASEPHYDRO_H */
