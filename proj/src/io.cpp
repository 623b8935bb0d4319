#include "convpow/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "convpow/error.hpp"

namespace convpow {

namespace {

using json = nlohmann::json;

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v'; }

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::string where(std::size_t line, const char* field) {
  return "line " + std::to_string(line) + ", field " + field;
}

std::int64_t parse_int(std::string_view tok, const std::string& at) {
  std::int64_t v = 0;
  const char* first = tok.data();
  if (!tok.empty() && tok.front() == '+') ++first;
  const auto [p, ec] = std::from_chars(first, tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size())
    fail(ErrorKind::parse, at + ": malformed integer '" + std::string(tok) + "'");
  return v;
}

double parse_real(std::string_view tok, const std::string& at) {
  double v = 0.0;
  const char* first = tok.data();
  if (!tok.empty() && tok.front() == '+') ++first;
  const auto [p, ec] = std::from_chars(first, tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size() || !std::isfinite(v))
    fail(ErrorKind::parse, at + ": malformed number '" + std::string(tok) + "'");
  return v;
}

struct Collected {
  std::vector<Entry> entries;
  std::map<std::int64_t, std::string> seen;  // x -> where first defined
};

void add_entry(Collected& c, std::int64_t x, cplx v, const std::string& at) {
  const auto [it, inserted] = c.seen.emplace(x, at);
  if (!inserted) fail(ErrorKind::parse, at + ": duplicate x = " + std::to_string(x) + " (first defined at " + it->second + ")");
  c.entries.push_back({x, v});
}

LatticeFunction finish(const Collected& c) {
  auto f = LatticeFunction::from_entries(c.entries);
  if (f.is_zero()) fail(ErrorKind::parse, "empty support: the file has no nonzero entry");
  return f;
}

FunctionFile parse_lines(std::string_view text) {
  FunctionFile out;
  Collected c;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto fields = split_fields(line);
    if (fields.empty()) continue;
    if (fields[0] == "name") {
      if (fields.size() < 2) fail(ErrorKind::parse, where(line_no, "name") + ": missing value");
      std::string name(fields[1]);
      for (std::size_t i = 2; i < fields.size(); ++i) name += " " + std::string(fields[i]);
      out.name = name;
      continue;
    }
    if (fields.size() != 3)
      fail(ErrorKind::parse, "line " + std::to_string(line_no) + ": expected 3 fields 'x re im', got " +
                                 std::to_string(fields.size()));
    const auto x = parse_int(fields[0], where(line_no, "x"));
    const double re = parse_real(fields[1], where(line_no, "re"));
    const double im = parse_real(fields[2], where(line_no, "im"));
    add_entry(c, x, {re, im}, "line " + std::to_string(line_no));
  }
  out.function = finish(c);
  return out;
}

FunctionFile parse_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::parse, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail(ErrorKind::parse, "JSON function file must be an object");
  FunctionFile out;
  if (auto it = doc.find("name"); it != doc.end()) {
    if (!it->is_string()) fail(ErrorKind::parse, "name: expected a string");
    out.name = it->get<std::string>();
  }
  const auto it = doc.find("entries");
  if (it == doc.end() || !it->is_array()) fail(ErrorKind::parse, "entries: expected an array");
  Collected c;
  for (std::size_t i = 0; i < it->size(); ++i) {
    const auto& e = (*it)[i];
    const std::string at = "entries[" + std::to_string(i) + "]";
    if (!e.is_object()) fail(ErrorKind::parse, at + ": expected an object");
    const auto field = [&](const char* key) -> const json& {
      const auto f = e.find(key);
      if (f == e.end()) fail(ErrorKind::parse, at + "." + key + ": missing");
      return *f;
    };
    const auto& jx = field("x");
    if (!jx.is_number_integer()) fail(ErrorKind::parse, at + ".x: expected an integer");
    const auto real = [&](const char* key) {
      const auto& v = field(key);
      if (!v.is_number()) fail(ErrorKind::parse, at + "." + key + ": malformed number");
      const double d = v.get<double>();
      if (!std::isfinite(d)) fail(ErrorKind::parse, at + "." + key + ": malformed number");
      return d;
    };
    add_entry(c, jx.get<std::int64_t>(), {real("re"), real("im")}, at);
  }
  out.function = finish(c);
  return out;
}

// Integral values go out as JSON integers so that 0 prints as 0, not 0.0.
json number(double v) {
  if (!std::isfinite(v)) fail(ErrorKind::numerical, "refusing to serialize a non-finite number");
  if (v == std::floor(v) && std::abs(v) < 9.0e15) return static_cast<std::int64_t>(v);
  return v;
}

json complex_pair(cplx z) { return json::array({number(z.real()), number(z.imag())}); }

std::string line_csv(std::initializer_list<std::string> fields) {
  std::string out;
  bool first = true;
  for (const auto& f : fields) {
    if (!first) out += ',';
    out += f;
    first = false;
  }
  out += "\r\n";
  return out;
}

}  // namespace

FunctionFile parse_function_file(std::string_view text) {
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
  std::size_t i = 0;
  while (i < text.size() && (is_space(text[i]) || text[i] == '\n')) ++i;
  if (i < text.size() && text[i] == '{') return parse_json(text.substr(i));
  return parse_lines(text);
}

FunctionFile load_function_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::io, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_function_file(ss.str());
  } catch (const Error& e) {
    fail(e.kind(), path + ": " + e.what());
  }
}

std::string format_number(double v) {
  if (!std::isfinite(v)) fail(ErrorKind::numerical, "refusing to format a non-finite number");
  if (v == 0.0) v = 0.0;  // drops the sign of -0
  char buf[64];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

std::string emit_function_file(const LatticeFunction& f, const std::optional<std::string>& name) {
  std::string out;
  if (name) out += "name " + *name + "\n";
  for (const auto& e : f.entries())
    out += std::to_string(e.x) + " " + format_number(e.value.real()) + " " + format_number(e.value.imag()) + "\n";
  return out;
}

LatticeFunction threepoint(double a0, double a_plus, double a_minus) {
  if (!std::isfinite(a0) || !std::isfinite(a_plus) || !std::isfinite(a_minus))
    fail(ErrorKind::invalid_argument, "threepoint needs finite parameters");
  if (!(a0 > 0.0)) fail(ErrorKind::invalid_argument, "threepoint needs a0 > 0");
  if (a_plus == 0.0 && a_minus == 0.0) fail(ErrorKind::invalid_argument, "threepoint needs a+ or a- nonzero");
  return LatticeFunction(-1, {a_minus, a0, a_plus});
}

LatticeFunction builtin_example(std::string_view name, std::span<const double> params) {
  const auto no_params = [&] {
    if (!params.empty()) fail(ErrorKind::invalid_argument, std::string(name) + " takes no parameters");
  };
  if (name == "ex1") {
    no_params();
    return LatticeFunction(-2, {-1.0 / 16, {2.0 / 8, 1.0 / 8}, {5.0 / 8, -2.0 / 8}, {2.0 / 8, 1.0 / 8}, -1.0 / 16});
  }
  if (name == "airy") {
    no_params();
    const cplx i3{0.0, 1.0 / 3};
    return LatticeFunction(-4, {1.0 / 16, i3, -0.25, 0.0, 3.0 / 8, 0.0, -0.25, i3, 1.0 / 16});
  }
  if (name == "lazywalk") {
    no_params();
    return LatticeFunction(-1, {0.25, 0.5, 0.25});
  }
  if (name == "threepoint") {
    if (params.empty()) return threepoint(8.0, 2.0, -1.0);
    if (params.size() != 3) fail(ErrorKind::invalid_argument, "threepoint takes three parameters a0, a+, a-");
    return threepoint(params[0], params[1], params[2]);
  }
  fail(ErrorKind::invalid_argument, "unknown example '" + std::string(name) + "'");
}

std::vector<std::string> builtin_names() { return {"ex1", "airy", "threepoint", "lazywalk"}; }

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string analysis_json(const SymbolAnalysis& sa, int indent) {
  json j;
  j["A"] = number(sa.A);
  j["m_phi"] = sa.m_phi;
  j["max_order_indices"] = sa.max_order_indices;
  j["drift_groups"] = sa.drift_groups;
  j["warnings"] = sa.warnings;
  json pts = json::array();
  for (const auto& p : sa.omega) {
    json q;
    q["xi"] = number(p.xi);
    q["symbol_value"] = complex_pair(p.symbol_value);
    q["type"] = p.point_type == PointType::type1 ? "type1" : "type2";
    q["order_m"] = p.order_m;
    q["alpha"] = number(p.drift_alpha);
    q["beta"] = complex_pair(p.beta);
    q["k"] = p.k ? json(*p.k) : json(nullptr);
    q["gamma"] = p.gamma ? number(*p.gamma) : json(nullptr);
    pts.push_back(std::move(q));
  }
  j["omega"] = std::move(pts);
  return j.dump(indent) + "\n";
}

std::string power_csv(const LatticeFunction& f) {
  std::string out = line_csv({"x", "re", "im", "abs"});
  const auto v = f.values();
  for (std::size_t i = 0; i < v.size(); ++i)
    out += line_csv({std::to_string(f.offset() + static_cast<std::int64_t>(i)), format_number(v[i].real()),
                     format_number(v[i].imag()), format_number(std::abs(v[i]))});
  return out;
}

std::string report_csv(const LimitReport& r) {
  std::string out = "n";
  for (const auto& c : r.columns) out += "," + csv_field(c);
  out += "\r\n";
  for (const auto& row : r.rows) {
    out += std::to_string(row.n);
    for (double v : row.values) out += "," + format_number(v);
    out += "\r\n";
  }
  return out;
}

std::string report_json(const LimitReport& r, int indent) {
  json j;
  j["mode"] = to_string(r.mode);
  j["columns"] = r.columns;
  json rows = json::array();
  for (const auto& row : r.rows) {
    json vals = json::array();
    for (double v : row.values) vals.push_back(number(v));
    rows.push_back({{"n", row.n}, {"values", std::move(vals)}});
  }
  j["rows"] = std::move(rows);
  j["analysis"] = json::parse(analysis_json(r.analysis, -1));
  if (r.drift_index) j["drift_index"] = *r.drift_index;
  if (r.window) j["window"] = json::array({number(r.window->first), number(r.window->second)});
  if (r.step) j["step"] = number(*r.step);
  if (r.packet_k) j["K"] = number(*r.packet_k);
  if (r.cross_check) j["cross_check"] = number(*r.cross_check);
  if (r.column_min) j["min"] = number(*r.column_min);
  if (r.column_max) j["max"] = number(*r.column_max);
  return j.dump(indent) + "\n";
}

std::string weak_curve_csv(const WeakCurve& c) {
  std::string out = line_csv({"z", "x", "exact_re", "exact_im", "exact_abs", "approx_re", "approx_im", "approx_abs"});
  for (std::size_t i = 0; i < c.z.size(); ++i)
    out += line_csv({format_number(c.z[i]), std::to_string(c.x[i]), format_number(c.exact[i].real()),
                     format_number(c.exact[i].imag()), format_number(std::abs(c.exact[i])),
                     format_number(c.approx[i].real()), format_number(c.approx[i].imag()),
                     format_number(std::abs(c.approx[i]))});
  return out;
}

std::string strong_curve_csv(const StrongCurve& c) {
  std::string out = line_csv({"x", "exact_re", "exact_im", "exact_abs", "approx_re", "approx_im", "approx_abs"});
  for (std::size_t i = 0; i < c.x.size(); ++i)
    out += line_csv({std::to_string(c.x[i]), format_number(c.exact[i].real()), format_number(c.exact[i].imag()),
                     format_number(std::abs(c.exact[i])), format_number(c.approx[i].real()),
                     format_number(c.approx[i].imag()), format_number(std::abs(c.approx[i]))});
  return out;
}

std::string attractor_csv(const std::vector<double>& z, const std::vector<cplx>& h) {
  if (z.size() != h.size()) fail(ErrorKind::invalid_argument, "attractor_csv: length mismatch");
  std::string out = line_csv({"z", "re", "im", "abs"});
  for (std::size_t i = 0; i < z.size(); ++i)
    out += line_csv({format_number(z[i]), format_number(h[i].real()), format_number(h[i].imag()),
                     format_number(std::abs(h[i]))});
  return out;
}

std::string gnuplot_script(const std::string& csv_path, const std::vector<std::string>& header,
                           const std::vector<std::size_t>& columns, const std::string& title) {
  const auto quote = [](const std::string& s) {
    std::string out = "'";
    for (char c : s) out += (c == '\'' ? std::string("''") : std::string(1, c));
    return out + "'";
  };
  std::ostringstream os;
  os << "set datafile separator ','\n";
  os << "set key autotitle columnhead\n";
  os << "set title " << quote(title) << "\n";
  if (!header.empty()) os << "set xlabel " << quote(header.front()) << "\n";
  os << "plot ";
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] >= header.size()) fail(ErrorKind::invalid_argument, "gnuplot column out of range");
    if (i) os << ", \\\n     ";
    os << quote(csv_path) << " using 1:" << columns[i] + 1 << " with lines";
  }
  os << "\n";
  return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::io, "cannot open '" + path + "' for writing");
  out << text;
  if (!out) fail(ErrorKind::io, "write to '" + path + "' failed");
}

}  // namespace convpow
