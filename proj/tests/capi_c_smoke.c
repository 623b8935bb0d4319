/* Compiled as C to check that the public header is valid C. */
#include <math.h>
#include <string.h>

#include "convpow/convpow.h"

int capi_c_smoke(void) {
  cp_function* f = NULL;
  cp_function* p = NULL;
  cp_analysis* a = NULL;
  int ok = 1;
  if (cp_function_builtin("lazywalk", NULL, 0, &f) != CP_OK) return 0;
  if (cp_power(f, 4, CP_POWER_DFT, &p) != CP_OK) ok = 0;
  if (ok) {
    cp_complex v;
    ok = cp_function_value(p, 0, &v) == CP_OK && fabs(v.re - 70.0 / 256.0) < 1e-14 && fabs(v.im) < 1e-14;
  }
  if (ok) ok = cp_analyze(f, &a) == CP_OK && cp_analysis_m_phi(a) == 2 && cp_analysis_point_count(a) == 1;
  if (ok) ok = cp_function_builtin("missing", NULL, 0, &p) == CP_INVALID_ARGUMENT && p == NULL &&
               strstr(cp_last_error(), "missing") != NULL;
  cp_analysis_free(a);
  cp_function_free(f);
  return ok;
}
