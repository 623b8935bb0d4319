#pragma once

// Function files, built-in examples and report serialization.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "convpow/lattice.hpp"
#include "convpow/limits.hpp"
#include "convpow/symbol.hpp"

namespace convpow {

struct FunctionFile {
  LatticeFunction function;
  std::optional<std::string> name;
};

/// Parses either the line format
///
///   # comment
///   name ex1
///   0  0.625 -0.25
///   1  0.25   0.125
///
/// or a JSON object {"name": ..., "entries": [{"x": 0, "re": 0.625, "im": -0.25}, ...]}.
/// Errors carry the line (or JSON path) and field.
FunctionFile parse_function_file(std::string_view text);

FunctionFile load_function_file(const std::string& path);

/// Canonical line format: optional name line, then "x re im" in ascending x,
/// numbers in shortest round-trip form.
std::string emit_function_file(const LatticeFunction& f, const std::optional<std::string>& name = std::nullopt);

/// ex1, airy, lazywalk, or threepoint with (a0, a+, a-); threepoint needs
/// a0 > 0 and a+ or a- nonzero.
LatticeFunction builtin_example(std::string_view name, std::span<const double> params = {});

LatticeFunction threepoint(double a0, double a_plus, double a_minus);

/// Names accepted by builtin_example.
std::vector<std::string> builtin_names();

/// Shortest round-trip decimal form of a finite double; throws on NaN/Inf.
std::string format_number(double v);

/// RFC 4180 field quoting.
std::string csv_field(std::string_view s);

std::string analysis_json(const SymbolAnalysis& sa, int indent = 2);

/// Columns x, re, im, abs.
std::string power_csv(const LatticeFunction& f);

std::string report_csv(const LimitReport& r);
std::string report_json(const LimitReport& r, int indent = 2);

std::string weak_curve_csv(const WeakCurve& c);
std::string strong_curve_csv(const StrongCurve& c);

/// Columns z, re, im, abs.
std::string attractor_csv(const std::vector<double>& z, const std::vector<cplx>& h);

/// A gnuplot script that plots the given columns of a CSV file against column 1.
std::string gnuplot_script(const std::string& csv_path, const std::vector<std::string>& header,
                           const std::vector<std::size_t>& columns, const std::string& title);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace convpow
