#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include <json.hpp>

#include "convpow/engine.hpp"
#include "convpow/error.hpp"
#include "convpow/io.hpp"
#include "convpow/symbol.hpp"
#include "support.hpp"

using namespace convpow;

namespace {

std::string parse_error(std::string_view text) {
  try {
    parse_function_file(text);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::parse);
    return e.what();
  }
  return {};
}

bool contains(const std::string& s, std::string_view part) { return s.find(part) != std::string::npos; }

std::vector<std::string> split_lines(const std::string& s) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    const auto end = s.find("\r\n", pos);
    REQUIRE(end != std::string::npos);
    out.push_back(s.substr(pos, end - pos));
    pos = end + 2;
  }
  return out;
}

}  // namespace

TEST_CASE("line format parses comments, names and CRLF") {
  const auto ff = parse_function_file("\xEF\xBB\xBF# demo\r\nname my walk\r\n 1 0.25 0 # right\r\n-1 0.25 0\r\n\r\n0 +0.5 -0\r\n");
  REQUIRE(ff.name.has_value());
  CHECK(*ff.name == "my walk");
  CHECK(ff.function == testing_support::lazy_walk());
}

TEST_CASE("JSON format parses") {
  const auto ff = parse_function_file(R"({"name": "w", "entries": [{"x": -1, "re": 0.25, "im": 0},
                                          {"x": 0, "re": 0.5, "im": 0}, {"x": 1, "re": 0.25, "im": 0}]})");
  CHECK(ff.name == std::optional<std::string>("w"));
  CHECK(ff.function == testing_support::lazy_walk());
}

TEST_CASE("parse diagnostics name the line and field") {
  CHECK(contains(parse_error("0 1 0\n1 0.5x 0\n"), "line 2, field re: malformed number"));
  CHECK(contains(parse_error("0 1 0\n1 0.5 nan\n"), "line 2, field im: malformed number"));
  CHECK(contains(parse_error("0 1 0\n1.5 0.5 0\n"), "line 2, field x: malformed integer"));
  CHECK(contains(parse_error("0 1 0\n1 2\n"), "line 2: expected 3 fields"));
  CHECK(contains(parse_error("# c\n3 1 0\n4 1 0\n3 2 0\n"), "line 4: duplicate x = 3 (first defined at line 2)"));
  CHECK(contains(parse_error("0 0 0\n1 0 -0\n"), "empty support"));
  CHECK(contains(parse_error(""), "empty support"));
  CHECK(contains(parse_error(R"({"entries": [{"x": 0, "re": 1, "im": 0}, {"x": 1, "re": "a", "im": 0}]})"),
                 "entries[1].re"));
  CHECK(contains(parse_error(R"({"entries": [{"x": 0, "re": 1, "im": 0}, {"x": 0, "re": 1, "im": 0}]})"),
                 "duplicate x = 0"));
  CHECK(contains(parse_error(R"({"entries": [{"x": 0.5, "re": 1, "im": 0}]})"), "entries[0].x"));
  CHECK(contains(parse_error(R"({"entries": [{"x": 0, "im": 0}]})"), "entries[0].re: missing"));
  CHECK(contains(parse_error("{ broken"), "invalid JSON"));
}

TEST_CASE("emit and parse round-trip exactly") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Entry> e;
    for (int x = -5; x <= 5; ++x)
      if (rng() % 3) e.push_back({x * 7, {g(rng) * std::pow(10.0, g(rng) * 5), g(rng)}});
    if (e.empty()) continue;
    const auto f = LatticeFunction::from_entries(e);
    const auto text = emit_function_file(f, "t" + std::to_string(trial));
    const auto back = parse_function_file(text);
    CHECK(back.function == f);
    CHECK(back.name == "t" + std::to_string(trial));
  }
  for (const auto& name : builtin_names()) {
    const auto f = builtin_example(name);
    CHECK(parse_function_file(emit_function_file(f)).function == f);
  }
}

TEST_CASE("load_function_file reports io errors with the path") {
  const auto path = std::filesystem::temp_directory_path() / "convpow_io_test.txt";
  write_text_file(path.string(), "0 1 0\n2 0.5 0\n");
  CHECK(load_function_file(path.string()).function == LatticeFunction(0, {1.0, 0.0, 0.5}));
  std::filesystem::remove(path);
  try {
    load_function_file(path.string());
    FAIL("expected an io error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::io);
    CHECK(contains(e.what(), path.string()));
  }
}

TEST_CASE("built-in examples match the fixtures") {
  CHECK(builtin_example("ex1") == testing_support::ex1());
  CHECK(builtin_example("airy") == testing_support::airy_example());
  CHECK(builtin_example("lazywalk") == testing_support::lazy_walk());
  const double p[] = {8.0, 2.0, -1.0};
  CHECK(builtin_example("threepoint", p) == LatticeFunction(-1, {-1.0, 8.0, 2.0}));
  CHECK(builtin_example("threepoint") == LatticeFunction(-1, {-1.0, 8.0, 2.0}));
  CHECK_THROWS_AS(threepoint(0.0, 1.0, 1.0), Error);
  CHECK_THROWS_AS(threepoint(-1.0, 1.0, 1.0), Error);
  CHECK_THROWS_AS(threepoint(1.0, 0.0, 0.0), Error);
  CHECK_THROWS_AS(threepoint(std::numeric_limits<double>::quiet_NaN(), 1.0, 1.0), Error);
  CHECK_THROWS_AS(threepoint(1.0, INFINITY, 1.0), Error);
  CHECK_THROWS_AS(builtin_example("nope"), Error);
  CHECK_THROWS_AS(builtin_example("ex1", p), Error);
  const double two[] = {1.0, 2.0};
  CHECK_THROWS_AS(builtin_example("threepoint", two), Error);
}

TEST_CASE("number formatting") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(3.0) == "3");
  CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK_THROWS_AS(format_number(std::nan("")), Error);
  CHECK_THROWS_AS(format_number(INFINITY), Error);
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_field("two\nlines") == "\"two\nlines\"");
}

TEST_CASE("analysis JSON for ex1") {
  const auto j = nlohmann::json::parse(analysis_json(analyze(builtin_example("ex1"))));
  CHECK(j["m_phi"] == 2);
  CHECK(j["A"] == 1);
  REQUIRE(j["omega"].size() == 1);
  const auto& p = j["omega"][0];
  CHECK(p["xi"] == 0);
  CHECK(p["type"] == "type2");
  CHECK(p["beta"][0] == 0);
  CHECK(p["beta"][1] == 0.125);
  CHECK(p["alpha"] == 0);
  // Serialized text keeps integral values integral.
  CHECK(contains(analysis_json(analyze(builtin_example("ex1")), -1), "\"m_phi\":2"));
}

TEST_CASE("power CSV for ex1 at n = 100") {
  const auto p = power_dft(builtin_example("ex1"), 100).result;
  const auto lines = split_lines(power_csv(p));
  REQUIRE(lines.size() == 402);
  CHECK(lines[0] == "x,re,im,abs");
  CHECK(lines[1].rfind("-200,", 0) == 0);
  CHECK(lines[401].rfind("200,", 0) == 0);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::stringstream ss(lines[i]);
    std::string field;
    int count = 0;
    while (std::getline(ss, field, ',')) {
      CHECK(std::isfinite(std::stod(field)));
      ++count;
    }
    CHECK(count == 4);
  }
}

TEST_CASE("report serialization") {
  LimitReport r;
  r.mode = LimitMode::weak;
  r.columns = {"residual", "z_at_max"};
  r.rows = {{100, {0.5, -3.0}}, {1000, {0.25, 3.0}}};
  r.drift_index = 0;
  r.window = {-3.0, 3.0};
  r.step = 0.25;
  CHECK(report_csv(r) == "n,residual,z_at_max\r\n100,0.5,-3\r\n1000,0.25,3\r\n");
  const auto j = nlohmann::json::parse(report_json(r));
  CHECK(j["mode"] == "weak");
  CHECK(j["rows"].size() == 2);
  r.rows[0].values[0] = std::nan("");
  CHECK_THROWS_AS(report_csv(r), Error);
}

TEST_CASE("gnuplot script") {
  const auto s = gnuplot_script("out.csv", {"x", "re", "im", "abs"}, {1, 3}, "ex1 power");
  CHECK(contains(s, "set datafile separator ','"));
  CHECK(contains(s, "'out.csv'"));
  CHECK(contains(s, "using 1:2"));
  CHECK(contains(s, "using 1:4"));
  CHECK_THROWS_AS(gnuplot_script("out.csv", {"x", "re"}, {5}, "t"), Error);
}
