// Exercises the shared library through its C header only.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <cstring>
#include <string>
#include <vector>

#include "convpow/convpow.h"

extern "C" int capi_c_smoke(void);

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  cp_string_free(s);
  return out;
}

bool contains(const std::string& s, const char* part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST_CASE("header compiles as C and the basic lifecycle works from C") { CHECK(capi_c_smoke() == 1); }

TEST_CASE("status names and version") {
  CHECK(std::string(cp_version()).size() > 0);
  CHECK(std::string(cp_status_name(CP_OK)) == "ok");
  CHECK(std::string(cp_status_name(CP_PARSE)) == "parse error");
  CHECK(std::string(cp_status_name(static_cast<cp_status>(99))) == "unknown status");
}

TEST_CASE("function handles") {
  const int64_t x[] = {-1, 0, 1};
  const double re[] = {0.25, 0.5, 0.25};
  const double im[] = {0.0, 0.0, 0.0};
  cp_function* f = nullptr;
  REQUIRE(cp_function_from_entries(x, re, im, 3, &f) == CP_OK);
  CHECK(std::string(cp_last_error()).empty());
  int64_t lo = 0, hi = 0;
  REQUIRE(cp_function_support(f, &lo, &hi) == CP_OK);
  CHECK(lo == -1);
  CHECK(hi == 1);
  cp_complex v{};
  REQUIRE(cp_function_value(f, 5, &v) == CP_OK);
  CHECK(v.re == 0.0);
  REQUIRE(cp_symbol(f, 0.0, &v) == CP_OK);
  CHECK(v.re == doctest::Approx(1.0));

  char* text = nullptr;
  REQUIRE(cp_function_emit(f, &text) == CP_OK);
  cp_function* g = nullptr;
  REQUIRE(cp_function_parse(text, &g) == CP_OK);
  cp_string_free(text);
  REQUIRE(cp_function_value(g, 0, &v) == CP_OK);
  CHECK(v.re == 0.5);
  cp_function_free(g);

  cp_function* s = nullptr;
  REQUIRE(cp_function_scale(f, {0.0, 2.0}, &s) == CP_OK);
  REQUIRE(cp_function_value(s, 1, &v) == CP_OK);
  CHECK(v.im == 0.5);
  cp_function_free(s);

  double sup = 0.0;
  int64_t argmax = 99;
  REQUIRE(cp_sup_norm(f, &sup, &argmax) == CP_OK);
  CHECK(sup == 0.5);
  CHECK(argmax == 0);
  double gap = 1.0;
  REQUIRE(cp_parseval_gap(f, 20, &gap) == CP_OK);
  CHECK(gap < 1e-12);

  cp_function* p1 = nullptr;
  cp_function* p2 = nullptr;
  REQUIRE(cp_power(f, 37, CP_POWER_DFT, &p1) == CP_OK);
  REQUIRE(cp_power(f, 37, CP_POWER_DIRECT, &p2) == CP_OK);
  for (int64_t k = -37; k <= 37; ++k) {
    cp_complex a{}, b{};
    cp_function_value(p1, k, &a);
    cp_function_value(p2, k, &b);
    CHECK(std::abs(a.re - b.re) < 1e-15);
  }
  CHECK(cp_power(f, 0, CP_POWER_DFT, &p1) == CP_INVALID_ARGUMENT);
  CHECK(p1 == nullptr);
  cp_function_free(p2);
  cp_function_free(f);
  cp_function_free(nullptr);
}

TEST_CASE("errors map to status codes and set the last error") {
  cp_function* f = reinterpret_cast<cp_function*>(0x1);
  CHECK(cp_function_parse("0 1 0\n0 2 0\n", &f) == CP_PARSE);
  CHECK(f == nullptr);
  CHECK(contains(cp_last_error(), "duplicate x = 0"));
  CHECK(cp_function_load("/nonexistent/dir/f.txt", &f) == CP_IO);
  CHECK(contains(cp_last_error(), "/nonexistent/dir/f.txt"));
  CHECK(cp_function_parse(nullptr, &f) == CP_INVALID_ARGUMENT);
  CHECK(contains(cp_last_error(), "text is null"));
  CHECK(cp_function_builtin("ex1", nullptr, 0, nullptr) == CP_INVALID_ARGUMENT);
  const int64_t x[] = {0};
  const double re[] = {NAN};
  const double im[] = {0.0};
  CHECK(cp_function_from_entries(x, re, im, 1, &f) == CP_INVALID_ARGUMENT);
  const double bad[] = {-1.0, 1.0, 1.0};
  CHECK(cp_function_builtin("threepoint", bad, 3, &f) == CP_INVALID_ARGUMENT);
  CHECK(contains(cp_last_error(), "a0 > 0"));
  double y = 0.0;
  CHECK(cp_airy(100.0, &y) == CP_INVALID_ARGUMENT);
  // A successful call clears the message.
  REQUIRE(cp_airy(0.0, &y) == CP_OK);
  CHECK(std::string(cp_last_error()).empty());
  CHECK(y == doctest::Approx(0.355028053887817239));
}

TEST_CASE("analysis through the C API") {
  cp_function* f = nullptr;
  REQUIRE(cp_function_builtin("airy", nullptr, 0, &f) == CP_OK);
  cp_analysis* a = nullptr;
  REQUIRE(cp_analyze(f, &a) == CP_OK);
  CHECK(cp_analysis_sup(a) == doctest::Approx(1.0));
  CHECK(cp_analysis_m_phi(a) == 3);
  CHECK(cp_analysis_point_count(a) == 2);
  CHECK(cp_analysis_drift_group_count(a) == 2);
  CHECK(cp_analysis_strong_hypothesis(a) == 1);
  cp_max_point p{};
  REQUIRE(cp_analysis_point(a, 0, &p) == CP_OK);
  CHECK(p.order_m == 3);
  CHECK(p.point_type == 2);
  CHECK(std::abs(std::abs(p.alpha) - 2.0) < 1e-9);
  CHECK(std::abs(p.beta.re) < 1e-12);
  CHECK(std::abs(std::abs(p.beta.im) - 5.0 / 3.0) < 1e-9);
  CHECK(cp_analysis_point(a, 2, &p) == CP_INVALID_ARGUMENT);
  char* json = nullptr;
  REQUIRE(cp_analysis_json(a, &json) == CP_OK);
  CHECK(contains(take(json), "\"m_phi\": 3"));

  cp_complex v{};
  REQUIRE(cp_strong_approx(a, 100, 200, &v) == CP_OK);
  CHECK(std::isfinite(v.re));
  int64_t wx = 0;
  REQUIRE(cp_weak_approx(a, 100, 1, 0.0, &wx, &v) == CP_OK);
  CHECK(wx == 200);
  CHECK(cp_weak_approx(a, 100, 5, 0.0, &wx, &v) == CP_INVALID_ARGUMENT);
  cp_analysis_free(a);
  cp_function_free(f);

  REQUIRE(cp_function_builtin("ex1", nullptr, 0, &f) == CP_OK);
  REQUIRE(cp_analyze(f, &a) == CP_OK);
  CHECK(cp_analysis_strong_hypothesis(a) == 0);
  CHECK(cp_strong_approx(a, 100, 0, &v) == CP_INVALID_ARGUMENT);
  CHECK(contains(cp_last_error(), "weak_approx"));
  cp_analysis_free(a);
  cp_function_free(f);
}

TEST_CASE("attractors through the C API") {
  cp_complex h{};
  double tail = -1.0;
  REQUIRE(cp_attractor_eval(2, {1.0, 0.0}, 0.5, 1e-10, CP_SCHEME_AUTO, &h, &tail) == CP_OK);
  CHECK(h.re == doctest::Approx(std::exp(-0.0625) / std::sqrt(4 * M_PI)).epsilon(1e-12));
  CHECK(cp_attractor_eval(1, {1.0, 0.0}, 0.0, 1e-10, CP_SCHEME_AUTO, &h, nullptr) == CP_INVALID_ARGUMENT);
  CHECK(cp_attractor_eval(4, {-1.0, 0.0}, 0.0, 1e-10, CP_SCHEME_AUTO, &h, nullptr) == CP_INVALID_ARGUMENT);
  std::vector<cp_complex> grid(21);
  REQUIRE(cp_attractor_grid(3, {0.0, 1.0 / 3}, -5.0, 0.5, grid.size(), 1e-10, grid.data()) == CP_OK);
  double ai = 0.0;
  REQUIRE(cp_airy(-5.0, &ai) == CP_OK);
  CHECK(std::abs(grid[0].re - ai) < 1e-9);
  char* csv = nullptr;
  REQUIRE(cp_attractor_csv(2, {1.0, 0.0}, -1.0, 0.5, 5, 1e-10, &csv) == CP_OK);
  CHECK(take(csv).rfind("z,re,im,abs\r\n", 0) == 0);
}

TEST_CASE("reports through the C API") {
  cp_function* f = nullptr;
  REQUIRE(cp_function_builtin("ex1", nullptr, 0, &f) == CP_OK);
  cp_report_options o;
  cp_report_options_default(&o);
  CHECK(o.z_lo == -3.0);
  CHECK(o.z_hi == 3.0);
  CHECK(o.z_step == 0.25);
  CHECK(o.cross_check == 1);
  const int64_t ns[] = {100, 400};
  cp_report* r = nullptr;
  REQUIRE(cp_report_run(f, CP_MODE_WEAK, ns, 2, &o, &r) == CP_OK);
  CHECK(cp_report_row_count(r) == 2);
  REQUIRE(cp_report_column_count(r) == 2);
  CHECK(std::string(cp_report_column_name(r, 0)) == "residual");
  CHECK(cp_report_column_name(r, 7) == nullptr);
  int64_t n = 0;
  double vals[2];
  REQUIRE(cp_report_row(r, 1, &n, vals, 2) == CP_OK);
  CHECK(n == 400);
  CHECK(vals[0] > 0.0);
  CHECK(cp_report_row(r, 0, &n, vals, 1) == CP_INVALID_ARGUMENT);
  double cc = 1.0;
  REQUIRE(cp_report_cross_check(r, &cc) == CP_OK);
  CHECK(cc < 1e-10);
  char* s = nullptr;
  REQUIRE(cp_report_csv(r, &s) == CP_OK);
  CHECK(take(s).rfind("n,residual,z_at_max\r\n100,", 0) == 0);
  REQUIRE(cp_report_json(r, &s) == CP_OK);
  CHECK(contains(take(s), "\"mode\": \"weak\""));
  cp_report_free(r);

  CHECK(cp_report_run(f, CP_MODE_STRONG, ns, 2, &o, &r) == CP_INVALID_ARGUMENT);
  CHECK(r == nullptr);
  CHECK(cp_report_run(f, static_cast<cp_mode>(9), ns, 2, &o, &r) == CP_INVALID_ARGUMENT);

  REQUIRE(cp_weak_curve_csv(f, 100, 0, -1.0, 1.0, 0.5, &s) == CP_OK);
  const auto curve = take(s);
  CHECK(curve.rfind("z,x,exact_re", 0) == 0);
  REQUIRE(cp_gnuplot_script("c.csv", curve.c_str(), "exact_re,approx_re", "ex1", &s) == CP_OK);
  const auto script = take(s);
  CHECK(contains(script, "using 1:3"));
  CHECK(contains(script, "using 1:6"));
  CHECK(cp_gnuplot_script("c.csv", curve.c_str(), "nope", "ex1", &s) == CP_INVALID_ARGUMENT);
  cp_function_free(f);

  REQUIRE(cp_function_builtin("airy", nullptr, 0, &f) == CP_OK);
  int ok = 0;
  double k = 0.0;
  REQUIRE(cp_packet_check(f, 500, 10.0, &ok, &k) == CP_OK);
  CHECK(ok == 1);
  CHECK(k < 10.0);
  REQUIRE(cp_strong_curve_csv(f, 50, &s) == CP_OK);
  CHECK(take(s).rfind("x,exact_re", 0) == 0);
  cp_function_free(f);
}
