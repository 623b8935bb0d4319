#ifndef CONVPOW_CONVPOW_H
#define CONVPOW_CONVPOW_H

/* C interface to the convpow library. Every fallible call returns a
 * cp_status; on failure cp_last_error() describes the problem for the
 * calling thread. Strings returned through char** are owned by the caller
 * and released with cp_string_free. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(CONVPOW_BUILDING)
#    define CP_API __declspec(dllexport)
#  else
#    define CP_API __declspec(dllimport)
#  endif
#else
#  define CP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cp_status {
  CP_OK = 0,
  CP_INVALID_ARGUMENT = 1,
  CP_NUMERICAL = 2,
  CP_PARSE = 3,
  CP_IO = 4,
  CP_OUT_OF_MEMORY = 5,
  CP_INTERNAL = 6
} cp_status;

typedef struct cp_complex {
  double re;
  double im;
} cp_complex;

typedef struct cp_function cp_function;
typedef struct cp_analysis cp_analysis;
typedef struct cp_report cp_report;

CP_API const char* cp_version(void);
CP_API const char* cp_last_error(void);
CP_API const char* cp_status_name(cp_status status);
CP_API void cp_string_free(char* s);

/* Functions on Z. */
CP_API cp_status cp_function_from_entries(const int64_t* x, const double* re, const double* im, size_t count,
                                          cp_function** out);
CP_API cp_status cp_function_parse(const char* text, cp_function** out);
CP_API cp_status cp_function_load(const char* path, cp_function** out);
/* name: ex1, airy, lazywalk, threepoint (params a0, a+, a-; none for the default 8, 2, -1). */
CP_API cp_status cp_function_builtin(const char* name, const double* params, size_t param_count, cp_function** out);
CP_API void cp_function_free(cp_function* f);
CP_API cp_status cp_function_support(const cp_function* f, int64_t* min_x, int64_t* max_x);
CP_API cp_status cp_function_value(const cp_function* f, int64_t x, cp_complex* out);
CP_API cp_status cp_function_scale(const cp_function* f, cp_complex factor, cp_function** out);
CP_API cp_status cp_function_emit(const cp_function* f, char** text);
CP_API cp_status cp_function_csv(const cp_function* f, char** csv);
CP_API cp_status cp_symbol(const cp_function* f, double xi, cp_complex* out);

/* Convolution powers. */
typedef enum cp_power_method { CP_POWER_DIRECT = 0, CP_POWER_DFT = 1 } cp_power_method;

CP_API cp_status cp_power(const cp_function* f, int64_t n, cp_power_method method, cp_function** out);
CP_API cp_status cp_sup_norm(const cp_function* f, double* value, int64_t* first_argmax);
CP_API cp_status cp_parseval_gap(const cp_function* f, int64_t n, double* gap);

/* Symbol analysis. */
typedef struct cp_max_point {
  double xi;
  cp_complex symbol_value;
  int point_type; /* 1 or 2 */
  int order_m;
  double alpha;
  cp_complex beta;
  int k;          /* 0 when absent */
  int has_gamma;
  double gamma;
} cp_max_point;

CP_API cp_status cp_analyze(const cp_function* f, cp_analysis** out);
CP_API void cp_analysis_free(cp_analysis* a);
CP_API double cp_analysis_sup(const cp_analysis* a);
CP_API int cp_analysis_m_phi(const cp_analysis* a);
CP_API size_t cp_analysis_point_count(const cp_analysis* a);
CP_API cp_status cp_analysis_point(const cp_analysis* a, size_t index, cp_max_point* out);
CP_API size_t cp_analysis_drift_group_count(const cp_analysis* a);
CP_API int cp_analysis_strong_hypothesis(const cp_analysis* a);
CP_API cp_status cp_analysis_json(const cp_analysis* a, char** json);

/* Local limit approximations of A^{-n} f^(n)(x). */
CP_API cp_status cp_strong_approx(const cp_analysis* a, int64_t n, int64_t x, cp_complex* out);
CP_API cp_status cp_weak_approx(const cp_analysis* a, int64_t n, size_t group, double z, int64_t* x, cp_complex* out);

/* Attractors H_m^beta. */
typedef enum cp_scheme { CP_SCHEME_AUTO = 0, CP_SCHEME_REAL_LINE = 1, CP_SCHEME_ROTATED_RAYS = 2 } cp_scheme;

CP_API cp_status cp_attractor_eval(int m, cp_complex beta, double x, double eps, cp_scheme scheme, cp_complex* out,
                                   double* tail_bound);
CP_API cp_status cp_attractor_grid(int m, cp_complex beta, double z0, double h, size_t count, double eps,
                                   cp_complex* out);
CP_API cp_status cp_attractor_csv(int m, cp_complex beta, double z0, double h, size_t count, double eps, char** csv);
CP_API cp_status cp_airy(double x, double* out);

/* Reports. */
typedef enum cp_mode { CP_MODE_STRONG = 0, CP_MODE_WEAK = 1, CP_MODE_SUPNORM = 2, CP_MODE_PACKET = 3 } cp_mode;

typedef struct cp_report_options {
  size_t group;   /* weak: drift group */
  double z_lo;    /* weak: window */
  double z_hi;
  double z_step;
  double K;       /* packet half width in units of n^{1/m} */
  double eps;     /* attractor accuracy */
  int cross_check;
} cp_report_options;

CP_API void cp_report_options_default(cp_report_options* opts);
CP_API cp_status cp_report_run(const cp_function* f, cp_mode mode, const int64_t* n, size_t n_count,
                               const cp_report_options* opts, cp_report** out);
CP_API void cp_report_free(cp_report* r);
CP_API size_t cp_report_row_count(const cp_report* r);
CP_API size_t cp_report_column_count(const cp_report* r);
CP_API const char* cp_report_column_name(const cp_report* r, size_t column);
CP_API cp_status cp_report_row(const cp_report* r, size_t row, int64_t* n, double* values, size_t capacity);
/* NaN-free extras; each returns CP_INVALID_ARGUMENT when the report lacks it. */
CP_API cp_status cp_report_cross_check(const cp_report* r, double* out);
CP_API cp_status cp_report_csv(const cp_report* r, char** csv);
CP_API cp_status cp_report_json(const cp_report* r, char** json);

/* Figure data for one n. */
CP_API cp_status cp_weak_curve_csv(const cp_function* f, int64_t n, size_t group, double z_lo, double z_hi,
                                   double z_step, char** csv);
CP_API cp_status cp_strong_curve_csv(const cp_function* f, int64_t n, char** csv);

/* A gnuplot script plotting the named columns (comma separated) of a CSV
 * file against its first column; csv_text supplies the header row. */
CP_API cp_status cp_gnuplot_script(const char* csv_path, const char* csv_text, const char* columns, const char* title,
                                   char** script);

CP_API cp_status cp_packet_check(const cp_function* f, int64_t n, double K, int* ok, double* k_needed);

#ifdef __cplusplus
}
#endif

#endif
