// convpow command line front end. Talks to the library only through the C API.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "convpow/convpow.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct Failure {
  int code;
  std::string message;
};

void check(cp_status s) {
  if (s == CP_OK) return;
  const int code = (s == CP_NUMERICAL || s == CP_INTERNAL || s == CP_OUT_OF_MEMORY) ? kExitNumerical : kExitUsage;
  throw Failure{code, std::string(cp_status_name(s)) + ": " + cp_last_error()};
}

struct FunctionDeleter {
  void operator()(cp_function* f) const { cp_function_free(f); }
};
struct AnalysisDeleter {
  void operator()(cp_analysis* a) const { cp_analysis_free(a); }
};
struct ReportDeleter {
  void operator()(cp_report* r) const { cp_report_free(r); }
};
struct StringDeleter {
  void operator()(char* s) const { cp_string_free(s); }
};
using FunctionPtr = std::unique_ptr<cp_function, FunctionDeleter>;
using AnalysisPtr = std::unique_ptr<cp_analysis, AnalysisDeleter>;
using ReportPtr = std::unique_ptr<cp_report, ReportDeleter>;

std::string take(char* s) {
  std::unique_ptr<char, StringDeleter> guard(s);
  return s ? std::string(s) : std::string();
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw Failure{kExitUsage, "cannot open '" + path + "' for writing"};
  const bool ok = std::fwrite(text.data(), 1, text.size(), f) == text.size();
  if (std::fclose(f) != 0 || !ok) throw Failure{kExitUsage, "write to '" + path + "' failed"};
}

void emit_gnuplot(const std::string& script_path, const std::string& csv_path, const std::string& csv,
                  const std::string& columns, const std::string& title) {
  if (script_path.empty()) return;
  if (csv_path.empty() || csv_path == "-") throw Failure{kExitUsage, "--gnuplot needs --out with a file path"};
  char* s = nullptr;
  check(cp_gnuplot_script(csv_path.c_str(), csv.c_str(), columns.c_str(), title.c_str(), &s));
  emit(take(s), script_path);
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

struct Input {
  std::string example;
  std::vector<double> params;
  std::string file;

  void add_to(CLI::App* app) {
    auto* e = app->add_option("--example", example, "built-in function: ex1, airy, threepoint, lazywalk");
    app->add_option("--params", params, "threepoint parameters a0,a+,a- (default 8,2,-1)")->delimiter(',');
    auto* f = app->add_option("--file", file, "function file ('x re im' lines or JSON)");
    e->excludes(f);
  }

  FunctionPtr load() const {
    cp_function* out = nullptr;
    if (!file.empty()) check(cp_function_load(file.c_str(), &out));
    else if (!example.empty()) check(cp_function_builtin(example.c_str(), params.data(), params.size(), &out));
    else throw Failure{kExitUsage, "give --example or --file"};
    return FunctionPtr(out);
  }
};

int run_analyze(const Input& in, bool as_json, const std::string& out) {
  auto f = in.load();
  cp_analysis* raw = nullptr;
  check(cp_analyze(f.get(), &raw));
  AnalysisPtr a(raw);
  if (as_json) {
    char* s = nullptr;
    check(cp_analysis_json(a.get(), &s));
    emit(take(s), out);
    return kExitOk;
  }
  std::ostringstream os;
  os << "A = " << fmt(cp_analysis_sup(a.get())) << "\n";
  os << "m_phi = " << cp_analysis_m_phi(a.get()) << "\n";
  os << "strong hypothesis: " << (cp_analysis_strong_hypothesis(a.get()) ? "holds" : "fails") << "\n";
  for (size_t i = 0; i < cp_analysis_point_count(a.get()); ++i) {
    cp_max_point p;
    check(cp_analysis_point(a.get(), i, &p));
    os << "xi = " << fmt(p.xi) << "  type" << p.point_type << "  m = " << p.order_m << "  alpha = " << fmt(p.alpha)
       << "  beta = " << fmt(p.beta.re) << (p.beta.im < 0 ? " - " : " + ") << fmt(std::abs(p.beta.im)) << "i";
    if (p.k) os << "  k = " << p.k;
    if (p.has_gamma) os << "  gamma = " << fmt(p.gamma);
    os << "\n";
  }
  emit(os.str(), out);
  return kExitOk;
}

int run_power(const Input& in, std::int64_t n, const std::string& method, bool normalize, bool csv,
              const std::string& out, const std::string& gnuplot) {
  auto f = in.load();
  if (normalize) {
    cp_analysis* raw = nullptr;
    check(cp_analyze(f.get(), &raw));
    AnalysisPtr a(raw);
    cp_function* g = nullptr;
    check(cp_function_scale(f.get(), {1.0 / cp_analysis_sup(a.get()), 0.0}, &g));
    f.reset(g);
  }
  cp_function* raw = nullptr;
  check(cp_power(f.get(), n, method == "direct" ? CP_POWER_DIRECT : CP_POWER_DFT, &raw));
  FunctionPtr p(raw);
  char* s = nullptr;
  if (csv) {
    check(cp_function_csv(p.get(), &s));
    const auto text = take(s);
    emit(text, out);
    emit_gnuplot(gnuplot, out, text, "re,abs", "convolution power n = " + std::to_string(n));
  } else {
    check(cp_function_emit(p.get(), &s));
    emit(take(s), out);
  }
  return kExitOk;
}

int run_attractor(int m, const std::vector<double>& beta, std::optional<double> x, const std::vector<double>& grid,
                  double eps, const std::string& scheme, const std::string& out, const std::string& gnuplot) {
  if (beta.size() != 2) throw Failure{kExitUsage, "--beta takes re,im"};
  const cp_complex b{beta[0], beta[1]};
  if (x) {
    const cp_scheme sc = scheme == "real-line" ? CP_SCHEME_REAL_LINE
                         : scheme == "rays"    ? CP_SCHEME_ROTATED_RAYS
                                               : CP_SCHEME_AUTO;
    cp_complex v;
    double tail = 0.0;
    check(cp_attractor_eval(m, b, *x, eps, sc, &v, &tail));
    emit(fmt(v.re) + " " + fmt(v.im) + "\n", out);
    return kExitOk;
  }
  if (grid.size() != 3 || !(grid[2] > 0.0) || grid[1] < grid[0])
    throw Failure{kExitUsage, "--grid takes lo hi step with lo <= hi and step > 0"};
  const auto count = static_cast<size_t>(std::floor((grid[1] - grid[0]) / grid[2] + 1e-9)) + 1;
  char* s = nullptr;
  check(cp_attractor_csv(m, b, grid[0], grid[2], count, eps, &s));
  const auto text = take(s);
  emit(text, out);
  emit_gnuplot(gnuplot, out, text, "re,im,abs", "H_" + std::to_string(m) + " beta = " + fmt(b.re) + "," + fmt(b.im));
  return kExitOk;
}

struct VerifyArgs {
  std::string mode;
  std::vector<std::int64_t> n;
  std::size_t q = 0;
  std::vector<double> window{-3.0, 3.0};
  double step = 0.25;
  double K = 10.0;
  double eps = 1e-10;
  bool no_cross_check = false;
  std::optional<double> max_final;
  double slack = 0.0;
  double max_ratio = 5.0;
  std::vector<double> band;
  bool as_json = false;
  std::string out;
  std::string curve_out;
  std::int64_t curve_n = 0;
  std::string gnuplot;
};

std::vector<std::int64_t> default_n(const std::string& mode) {
  if (mode == "strong") return {500, 2000, 5000};
  if (mode == "weak") return {100, 1000, 10000};
  if (mode == "supnorm") return {100, 300, 1000, 3000, 10000};
  return {500, 1000, 2000};
}

int run_verify(const Input& in, VerifyArgs v) {
  auto f = in.load();
  if (v.n.empty()) v.n = default_n(v.mode);
  if (v.window.size() != 2) throw Failure{kExitUsage, "--window takes lo,hi"};
  cp_report_options o;
  cp_report_options_default(&o);
  o.group = v.q;
  o.z_lo = v.window[0];
  o.z_hi = v.window[1];
  o.z_step = v.step;
  o.K = v.K;
  o.eps = v.eps;
  o.cross_check = v.no_cross_check ? 0 : 1;
  const cp_mode mode = v.mode == "strong" ? CP_MODE_STRONG
                       : v.mode == "weak" ? CP_MODE_WEAK
                       : v.mode == "supnorm" ? CP_MODE_SUPNORM
                                             : CP_MODE_PACKET;
  cp_report* raw = nullptr;
  check(cp_report_run(f.get(), mode, v.n.data(), v.n.size(), &o, &raw));
  ReportPtr r(raw);

  char* s = nullptr;
  if (v.as_json) check(cp_report_json(r.get(), &s));
  else check(cp_report_csv(r.get(), &s));
  emit(take(s), v.out);

  if (!v.curve_out.empty()) {
    const std::int64_t cn = v.curve_n > 0 ? v.curve_n : v.n.back();
    if (mode == CP_MODE_WEAK) check(cp_weak_curve_csv(f.get(), cn, v.q, o.z_lo, o.z_hi, o.z_step, &s));
    else if (mode == CP_MODE_STRONG) check(cp_strong_curve_csv(f.get(), cn, &s));
    else throw Failure{kExitUsage, "--curve-out applies to the strong and weak modes"};
    const auto text = take(s);
    emit(text, v.curve_out);
    emit_gnuplot(v.gnuplot, v.curve_out, text, "exact_abs,approx_abs", v.mode + " limit, n = " + std::to_string(cn));
  }

  // Pass criteria.
  const size_t rows = cp_report_row_count(r.get());
  const size_t cols = cp_report_column_count(r.get());
  std::vector<std::vector<double>> values(rows, std::vector<double>(cols));
  for (size_t i = 0; i < rows; ++i) check(cp_report_row(r.get(), i, nullptr, values[i].data(), cols));
  std::vector<std::string> failures;
  if (mode == CP_MODE_STRONG || mode == CP_MODE_WEAK) {
    const double final_cap = v.max_final.value_or(mode == CP_MODE_STRONG ? 0.05 : 0.02);
    for (size_t i = 1; i < rows; ++i)
      if (!(values[i][0] < values[i - 1][0] * (1.0 + v.slack)))
        failures.push_back("residual does not decrease at row " + std::to_string(i));
    if (rows && !(values.back()[0] < final_cap))
      failures.push_back("final residual " + fmt(values.back()[0]) + " >= " + fmt(final_cap));
  } else if (mode == CP_MODE_SUPNORM) {
    double lo = INFINITY, hi = 0.0;
    for (const auto& row : values) lo = std::min(lo, row[2]), hi = std::max(hi, row[2]);
    if (!(lo > 0.0) || !(hi / lo < v.max_ratio)) failures.push_back("s_n max/min = " + fmt(hi / lo) + " >= " + fmt(v.max_ratio));
    if (v.band.size() == 2 && (lo < v.band[0] || hi > v.band[1]))
      failures.push_back("s_n leaves [" + fmt(v.band[0]) + ", " + fmt(v.band[1]) + "]");
  } else {
    for (size_t i = 0; i < rows; ++i)
      if (values[i][0] != 1.0) failures.push_back("argmax outside the packets at row " + std::to_string(i));
  }
  for (const auto& msg : failures) std::fprintf(stderr, "verify %s: FAIL %s\n", v.mode.c_str(), msg.c_str());
  if (failures.empty()) std::fprintf(stderr, "verify %s: PASS\n", v.mode.c_str());
  return failures.empty() ? kExitOk : kExitVerifyFailed;
}

int run_example(const std::string& name, const std::vector<double>& params, const std::string& out) {
  if (name.empty()) {
    emit("ex1\nairy\nthreepoint\nlazywalk\n", out);
    return kExitOk;
  }
  cp_function* raw = nullptr;
  check(cp_function_builtin(name.c_str(), params.data(), params.size(), &raw));
  FunctionPtr f(raw);
  char* s = nullptr;
  check(cp_function_emit(f.get(), &s));
  emit("name " + name + "\n" + take(s), out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convolution powers of finitely supported functions on Z"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(cp_version()));

  Input analyze_in;
  bool analyze_json = false;
  std::string analyze_out;
  auto* analyze = app.add_subcommand("analyze", "locate and classify the maxima of |fhat|");
  analyze_in.add_to(analyze);
  analyze->add_flag("--json", analyze_json, "emit JSON");
  analyze->add_option("-o,--out", analyze_out, "output path (default stdout)");

  Input power_in;
  std::int64_t power_n = 1;
  std::string power_method = "dft";
  bool power_normalize = false, power_csv = false;
  std::string power_out, power_gnuplot;
  auto* power = app.add_subcommand("power", "n-th convolution power");
  power_in.add_to(power);
  power->add_option("-n", power_n, "power")->required()->check(CLI::PositiveNumber);
  power->add_option("--method", power_method, "dft or direct")->check(CLI::IsMember({"dft", "direct"}))->capture_default_str();
  power->add_flag("--normalize", power_normalize, "divide f by A = sup|fhat| first");
  power->add_flag("--csv", power_csv, "CSV with columns x,re,im,abs");
  power->add_option("-o,--out", power_out, "output path (default stdout)");
  power->add_option("--gnuplot", power_gnuplot, "also write a gnuplot script here (needs --csv and --out)");

  int att_m = 2;
  std::vector<double> att_beta{1.0, 0.0};
  std::optional<double> att_x;
  std::vector<double> att_grid;
  double att_eps = 1e-10;
  std::string att_scheme = "auto", att_out, att_gnuplot;
  auto* attractor = app.add_subcommand("attractor", "evaluate H_m^beta");
  attractor->add_option("--m", att_m, "order m >= 2")->capture_default_str();
  attractor->add_option("--beta", att_beta, "re,im")->delimiter(',')->expected(2);
  auto* xo = attractor->add_option("--x", att_x, "single point");
  auto* go = attractor->add_option("--grid", att_grid, "lo hi step")->expected(3);
  xo->excludes(go);
  attractor->add_option("--eps", att_eps, "absolute accuracy")->capture_default_str();
  attractor->add_option("--scheme", att_scheme, "auto, real-line or rays")
      ->check(CLI::IsMember({"auto", "real-line", "rays"}))
      ->capture_default_str();
  attractor->add_option("-o,--out", att_out, "output path (default stdout)");
  attractor->add_option("--gnuplot", att_gnuplot, "also write a gnuplot script here (needs --out)");

  Input verify_in;
  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "residual and sup-norm checks; exit 0 iff they pass");
  verify->add_option("mode", va.mode, "strong, weak, supnorm or packet")
      ->required()
      ->check(CLI::IsMember({"strong", "weak", "supnorm", "packet"}));
  verify_in.add_to(verify);
  verify->add_option("--n", va.n,
                     "powers (defaults: strong 500,2000,5000; weak 100,1000,10000; supnorm 100,300,1000,3000,10000; "
                     "packet 500,1000,2000)")
      ->delimiter(',');
  verify->add_option("--q", va.q, "drift group for weak mode")->capture_default_str();
  verify->add_option("--window", va.window, "weak z-window lo,hi")->delimiter(',')->expected(2)->capture_default_str();
  verify->add_option("--step", va.step, "weak z-step")->capture_default_str();
  verify->add_option("--K", va.K, "packet half width in units of n^(1/m)")->capture_default_str();
  verify->add_option("--eps", va.eps, "attractor accuracy")->capture_default_str();
  verify->add_flag("--no-cross-check", va.no_cross_check, "skip the direct-power cross-check at the largest n");
  verify->add_option("--max-final", va.max_final, "residual cap at the largest n (strong 0.05, weak 0.02)");
  verify->add_option("--slack", va.slack, "allowed relative growth between rows")->capture_default_str();
  verify->add_option("--max-ratio", va.max_ratio, "supnorm: bound on max/min of s_n")->capture_default_str();
  verify->add_option("--band", va.band, "supnorm: s_n must lie in lo,hi")->delimiter(',')->expected(2);
  verify->add_flag("--json", va.as_json, "emit the report as JSON instead of CSV");
  verify->add_option("-o,--out", va.out, "report path (default stdout)");
  verify->add_option("--curve-out", va.curve_out, "write the exact and approximate curves for one n");
  verify->add_option("--curve-n", va.curve_n, "n for --curve-out (default largest)");
  verify->add_option("--gnuplot", va.gnuplot, "gnuplot script for --curve-out");

  std::string ex_name, ex_out;
  std::vector<double> ex_params;
  auto* example = app.add_subcommand("example", "list built-ins, or print one as a function file");
  example->add_option("name", ex_name, "ex1, airy, threepoint or lazywalk");
  example->add_option("--params", ex_params, "threepoint a0,a+,a-")->delimiter(',');
  example->add_option("-o,--out", ex_out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*analyze) return run_analyze(analyze_in, analyze_json, analyze_out);
    if (*power) {
      if (!power_gnuplot.empty() && !power_csv) throw Failure{kExitUsage, "--gnuplot needs --csv"};
      return run_power(power_in, power_n, power_method, power_normalize, power_csv, power_out, power_gnuplot);
    }
    if (*attractor) {
      if (!att_x && att_grid.empty()) throw Failure{kExitUsage, "give --x or --grid"};
      return run_attractor(att_m, att_beta, att_x, att_grid, att_eps, att_scheme, att_out, att_gnuplot);
    }
    if (*verify) return run_verify(verify_in, va);
    if (*example) return run_example(ex_name, ex_params, ex_out);
  } catch (const Failure& f) {
    std::fprintf(stderr, "convpow: %s\n", f.message.c_str());
    return f.code;
  }
  return kExitUsage;
}
