#include "convpow/convpow.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <string_view>
#include <vector>

#include "convpow/attractor.hpp"
#include "convpow/engine.hpp"
#include "convpow/error.hpp"
#include "convpow/io.hpp"
#include "convpow/limits.hpp"
#include "convpow/symbol.hpp"

struct cp_function {
  convpow::LatticeFunction f;
};

struct cp_analysis {
  convpow::SymbolAnalysis sa;
};

struct cp_report {
  convpow::LimitReport r;
};

namespace {

thread_local std::string last_error;

cp_status record(cp_status s, const char* what) {
  last_error = what;
  return s;
}

template <class Body>
cp_status guarded(Body body) {
  try {
    body();
    last_error.clear();
    return CP_OK;
  } catch (const convpow::Error& e) {
    switch (e.kind()) {
      case convpow::ErrorKind::invalid_argument: return record(CP_INVALID_ARGUMENT, e.what());
      case convpow::ErrorKind::numerical: return record(CP_NUMERICAL, e.what());
      case convpow::ErrorKind::parse: return record(CP_PARSE, e.what());
      case convpow::ErrorKind::io: return record(CP_IO, e.what());
    }
    return record(CP_INTERNAL, e.what());
  } catch (const std::bad_alloc&) {
    return record(CP_OUT_OF_MEMORY, "out of memory");
  } catch (const std::exception& e) {
    return record(CP_INTERNAL, e.what());
  } catch (...) {
    return record(CP_INTERNAL, "unknown error");
  }
}

void need(const void* p, const char* what) {
  if (!p) convpow::fail(convpow::ErrorKind::invalid_argument, std::string(what) + " is null");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

cp_complex to_c(convpow::cplx z) { return {z.real(), z.imag()}; }
convpow::cplx from_c(cp_complex z) { return {z.re, z.im}; }

cp_function* wrap(convpow::LatticeFunction f) { return new cp_function{std::move(f)}; }

}  // namespace

extern "C" {

const char* cp_version(void) { return "1.0.0"; }

const char* cp_last_error(void) { return last_error.c_str(); }

const char* cp_status_name(cp_status status) {
  switch (status) {
    case CP_OK: return "ok";
    case CP_INVALID_ARGUMENT: return "invalid argument";
    case CP_NUMERICAL: return "numerical error";
    case CP_PARSE: return "parse error";
    case CP_IO: return "i/o error";
    case CP_OUT_OF_MEMORY: return "out of memory";
    case CP_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void cp_string_free(char* s) { std::free(s); }

cp_status cp_function_from_entries(const int64_t* x, const double* re, const double* im, size_t count,
                                   cp_function** out) {
  return guarded([&] {
    need(out, "out");
    *out = nullptr;
    if (count > 0) need(x, "x"), need(re, "re"), need(im, "im");
    std::vector<convpow::Entry> e(count);
    for (size_t i = 0; i < count; ++i) {
      if (!std::isfinite(re[i]) || !std::isfinite(im[i]))
        convpow::fail(convpow::ErrorKind::invalid_argument, "entry " + std::to_string(i) + " is not finite");
      e[i] = {x[i], {re[i], im[i]}};
    }
    *out = wrap(convpow::LatticeFunction::from_entries(e));
  });
}

cp_status cp_function_parse(const char* text, cp_function** out) {
  return guarded([&] {
    need(out, "out");
    *out = nullptr;
    need(text, "text");
    *out = wrap(convpow::parse_function_file(text).function);
  });
}

cp_status cp_function_load(const char* path, cp_function** out) {
  return guarded([&] {
    need(out, "out");
    *out = nullptr;
    need(path, "path");
    *out = wrap(convpow::load_function_file(path).function);
  });
}

cp_status cp_function_builtin(const char* name, const double* params, size_t param_count, cp_function** out) {
  return guarded([&] {
    need(out, "out");
    *out = nullptr;
    need(name, "name");
    if (param_count > 0) need(params, "params");
    *out = wrap(convpow::builtin_example(name, std::span<const double>(params, param_count)));
  });
}

void cp_function_free(cp_function* f) { delete f; }

cp_status cp_function_support(const cp_function* f, int64_t* min_x, int64_t* max_x) {
  return guarded([&] {
    need(f, "f"), need(min_x, "min_x"), need(max_x, "max_x");
    if (f->f.is_zero()) convpow::fail(convpow::ErrorKind::invalid_argument, "zero function has empty support");
    *min_x = f->f.min_support();
    *max_x = f->f.max_support();
  });
}

cp_status cp_function_value(const cp_function* f, int64_t x, cp_complex* out) {
  return guarded([&] {
    need(f, "f"), need(out, "out");
    *out = to_c(f->f(x));
  });
}

cp_status cp_function_scale(const cp_function* f, cp_complex factor, cp_function** out) {
  return guarded([&] {
    need(f, "f"), need(out, "out");
    *out = nullptr;
    *out = wrap(f->f.scaled(from_c(factor)));
  });
}

cp_status cp_function_emit(const cp_function* f, char** text) {
  return guarded([&] {
    need(f, "f"), need(text, "text");
    *text = dup_string(convpow::emit_function_file(f->f));
  });
}

cp_status cp_function_csv(const cp_function* f, char** csv) {
  return guarded([&] {
    need(f, "f"), need(csv, "csv");
    *csv = dup_string(convpow::power_csv(f->f));
  });
}

cp_status cp_symbol(const cp_function* f, double xi, cp_complex* out) {
  return guarded([&] {
    need(f, "f"), need(out, "out");
    *out = to_c(convpow::evaluate_symbol(f->f, xi));
  });
}

cp_status cp_power(const cp_function* f, int64_t n, cp_power_method method, cp_function** out) {
  return guarded([&] {
    need(f, "f"), need(out, "out");
    *out = nullptr;
    if (method == CP_POWER_DIRECT) *out = wrap(convpow::power_direct(f->f, n).result);
    else if (method == CP_POWER_DFT) *out = wrap(convpow::power_dft(f->f, n).result);
    else convpow::fail(convpow::ErrorKind::invalid_argument, "unknown power method");
  });
}

cp_status cp_sup_norm(const cp_function* f, double* value, int64_t* first_argmax) {
  return guarded([&] {
    need(f, "f"), need(value, "value");
    const auto s = convpow::sup_norm(f->f);
    *value = s.value;
    if (first_argmax) *first_argmax = s.argmax.empty() ? 0 : s.argmax.front();
  });
}

cp_status cp_parseval_gap(const cp_function* f, int64_t n, double* gap) {
  return guarded([&] {
    need(f, "f"), need(gap, "gap");
    *gap = convpow::parseval_gap(f->f, n);
  });
}

cp_status cp_analyze(const cp_function* f, cp_analysis** out) {
  return guarded([&] {
    need(f, "f"), need(out, "out");
    *out = nullptr;
    *out = new cp_analysis{convpow::analyze(f->f)};
  });
}

void cp_analysis_free(cp_analysis* a) { delete a; }

double cp_analysis_sup(const cp_analysis* a) { return a ? a->sa.A : 0.0; }

int cp_analysis_m_phi(const cp_analysis* a) { return a ? a->sa.m_phi : 0; }

size_t cp_analysis_point_count(const cp_analysis* a) { return a ? a->sa.omega.size() : 0; }

cp_status cp_analysis_point(const cp_analysis* a, size_t index, cp_max_point* out) {
  return guarded([&] {
    need(a, "a"), need(out, "out");
    if (index >= a->sa.omega.size()) convpow::fail(convpow::ErrorKind::invalid_argument, "point index out of range");
    const auto& p = a->sa.omega[index];
    out->xi = p.xi;
    out->symbol_value = to_c(p.symbol_value);
    out->point_type = p.point_type == convpow::PointType::type1 ? 1 : 2;
    out->order_m = p.order_m;
    out->alpha = p.drift_alpha;
    out->beta = to_c(p.beta);
    out->k = p.k.value_or(0);
    out->has_gamma = p.gamma.has_value();
    out->gamma = p.gamma.value_or(0.0);
  });
}

size_t cp_analysis_drift_group_count(const cp_analysis* a) { return a ? a->sa.drift_groups.size() : 0; }

int cp_analysis_strong_hypothesis(const cp_analysis* a) { return a && convpow::strong_hypothesis_holds(a->sa); }

cp_status cp_analysis_json(const cp_analysis* a, char** json) {
  return guarded([&] {
    need(a, "a"), need(json, "json");
    *json = dup_string(convpow::analysis_json(a->sa));
  });
}

cp_status cp_strong_approx(const cp_analysis* a, int64_t n, int64_t x, cp_complex* out) {
  return guarded([&] {
    need(a, "a"), need(out, "out");
    *out = to_c(convpow::strong_approx(a->sa, n, x));
  });
}

cp_status cp_weak_approx(const cp_analysis* a, int64_t n, size_t group, double z, int64_t* x, cp_complex* out) {
  return guarded([&] {
    need(a, "a"), need(out, "out");
    const auto w = convpow::weak_approx(a->sa, n, group, z);
    if (x) *x = w.x;
    *out = to_c(w.value);
  });
}

cp_status cp_attractor_eval(int m, cp_complex beta, double x, double eps, cp_scheme scheme, cp_complex* out,
                            double* tail_bound) {
  return guarded([&] {
    need(out, "out");
    convpow::AttractorOptions opts;
    switch (scheme) {
      case CP_SCHEME_AUTO: opts.scheme = convpow::SchemeChoice::automatic; break;
      case CP_SCHEME_REAL_LINE: opts.scheme = convpow::SchemeChoice::real_line; break;
      case CP_SCHEME_ROTATED_RAYS: opts.scheme = convpow::SchemeChoice::rotated_rays; break;
      default: convpow::fail(convpow::ErrorKind::invalid_argument, "unknown quadrature scheme");
    }
    const auto v = convpow::attractor_eval({m, from_c(beta)}, x, eps, opts);
    *out = to_c(v.value);
    if (tail_bound) *tail_bound = v.cert.tail_bound;
  });
}

cp_status cp_attractor_grid(int m, cp_complex beta, double z0, double h, size_t count, double eps, cp_complex* out) {
  return guarded([&] {
    if (count > 0) need(out, "out");
    const auto g = convpow::attractor_grid({m, from_c(beta)}, z0, h, count, eps);
    for (size_t i = 0; i < count; ++i) out[i] = to_c(g[i]);
  });
}

cp_status cp_attractor_csv(int m, cp_complex beta, double z0, double h, size_t count, double eps, char** csv) {
  return guarded([&] {
    need(csv, "csv");
    const auto g = convpow::attractor_grid({m, from_c(beta)}, z0, h, count, eps);
    std::vector<double> z(count);
    for (size_t i = 0; i < count; ++i) z[i] = z0 + static_cast<double>(i) * h;
    *csv = dup_string(convpow::attractor_csv(z, g));
  });
}

cp_status cp_airy(double x, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = convpow::airy_oracle(x);
  });
}

void cp_report_options_default(cp_report_options* opts) {
  if (!opts) return;
  opts->group = 0;
  opts->z_lo = -3.0;
  opts->z_hi = 3.0;
  opts->z_step = 0.25;
  opts->K = 10.0;
  opts->eps = 1e-10;
  opts->cross_check = 1;
}

cp_status cp_report_run(const cp_function* f, cp_mode mode, const int64_t* n, size_t n_count,
                        const cp_report_options* opts, cp_report** out) {
  return guarded([&] {
    need(f, "f"), need(out, "out");
    *out = nullptr;
    if (n_count > 0) need(n, "n");
    cp_report_options o;
    cp_report_options_default(&o);
    if (opts) o = *opts;
    std::vector<std::int64_t> ns(n, n + n_count);
    convpow::ResidualOptions ro;
    ro.eps = o.eps;
    ro.cross_check = o.cross_check != 0;
    convpow::LimitReport r;
    switch (mode) {
      case CP_MODE_STRONG:
        r = convpow::residual_report(f->f, ns, convpow::LimitMode::strong, 0, o.z_lo, o.z_hi, o.z_step, ro);
        break;
      case CP_MODE_WEAK:
        r = convpow::residual_report(f->f, ns, convpow::LimitMode::weak, o.group, o.z_lo, o.z_hi, o.z_step, ro);
        break;
      case CP_MODE_SUPNORM: r = convpow::supnorm_scaling(f->f, ns); break;
      case CP_MODE_PACKET: r = convpow::packet_report(f->f, ns, o.K); break;
      default: convpow::fail(convpow::ErrorKind::invalid_argument, "unknown report mode");
    }
    *out = new cp_report{std::move(r)};
  });
}

void cp_report_free(cp_report* r) { delete r; }

size_t cp_report_row_count(const cp_report* r) { return r ? r->r.rows.size() : 0; }

size_t cp_report_column_count(const cp_report* r) { return r ? r->r.columns.size() : 0; }

const char* cp_report_column_name(const cp_report* r, size_t column) {
  if (!r || column >= r->r.columns.size()) return nullptr;
  return r->r.columns[column].c_str();
}

cp_status cp_report_row(const cp_report* r, size_t row, int64_t* n, double* values, size_t capacity) {
  return guarded([&] {
    need(r, "r");
    if (row >= r->r.rows.size()) convpow::fail(convpow::ErrorKind::invalid_argument, "row index out of range");
    const auto& rw = r->r.rows[row];
    if (n) *n = rw.n;
    if (capacity < rw.values.size())
      convpow::fail(convpow::ErrorKind::invalid_argument,
                    "values buffer holds " + std::to_string(capacity) + ", need " + std::to_string(rw.values.size()));
    if (!rw.values.empty()) need(values, "values");
    for (size_t i = 0; i < rw.values.size(); ++i) values[i] = rw.values[i];
  });
}

cp_status cp_report_cross_check(const cp_report* r, double* out) {
  return guarded([&] {
    need(r, "r"), need(out, "out");
    if (!r->r.cross_check) convpow::fail(convpow::ErrorKind::invalid_argument, "report has no cross-check");
    *out = *r->r.cross_check;
  });
}

cp_status cp_report_csv(const cp_report* r, char** csv) {
  return guarded([&] {
    need(r, "r"), need(csv, "csv");
    *csv = dup_string(convpow::report_csv(r->r));
  });
}

cp_status cp_report_json(const cp_report* r, char** json) {
  return guarded([&] {
    need(r, "r"), need(json, "json");
    *json = dup_string(convpow::report_json(r->r));
  });
}

cp_status cp_weak_curve_csv(const cp_function* f, int64_t n, size_t group, double z_lo, double z_hi, double z_step,
                            char** csv) {
  return guarded([&] {
    need(f, "f"), need(csv, "csv");
    *csv = dup_string(convpow::weak_curve_csv(convpow::weak_curve(f->f, n, group, z_lo, z_hi, z_step)));
  });
}

cp_status cp_strong_curve_csv(const cp_function* f, int64_t n, char** csv) {
  return guarded([&] {
    need(f, "f"), need(csv, "csv");
    *csv = dup_string(convpow::strong_curve_csv(convpow::strong_curve(f->f, n)));
  });
}

cp_status cp_gnuplot_script(const char* csv_path, const char* csv_text, const char* columns, const char* title,
                            char** script) {
  return guarded([&] {
    need(csv_path, "csv_path"), need(csv_text, "csv_text"), need(columns, "columns"), need(script, "script");
    const auto split = [](std::string_view s) {
      std::vector<std::string> out;
      std::size_t pos = 0;
      while (true) {
        const auto comma = s.find(',', pos);
        out.emplace_back(s.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
      }
      return out;
    };
    std::string_view text(csv_text);
    auto header = split(text.substr(0, text.find_first_of("\r\n")));
    std::vector<std::size_t> idx;
    for (const auto& name : split(columns)) {
      const auto it = std::find(header.begin(), header.end(), name);
      if (it == header.end()) convpow::fail(convpow::ErrorKind::invalid_argument, "CSV has no column '" + name + "'");
      idx.push_back(static_cast<std::size_t>(it - header.begin()));
    }
    *script = dup_string(convpow::gnuplot_script(csv_path, header, idx, title ? title : ""));
  });
}

cp_status cp_packet_check(const cp_function* f, int64_t n, double K, int* ok, double* k_needed) {
  return guarded([&] {
    need(f, "f"), need(ok, "ok");
    const auto p = convpow::packet_check(f->f, n, K);
    *ok = p.ok ? 1 : 0;
    if (k_needed) *k_needed = p.k_needed;
  });
}

}  // extern "C"
