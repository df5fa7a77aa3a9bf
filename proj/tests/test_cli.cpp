#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "rigidlab/config.hpp"
#include "rigidlab/errors.hpp"
#include "rigidlab/reports.hpp"

using namespace rigidlab;

namespace {

bool mentions_line(const ConfigError& e, const std::string& name, int line) {
  const std::string needle = name + ":" + std::to_string(line) + ":";
  return std::string(e.what()).find(needle) != std::string::npos;
}

template <class Fn>
void expect_config_error(const std::string& text, int line, Fn&& check_message) {
  try {
    (void)parse_config(text, "test.cfg");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(mentions_line(e, "test.cfg", line));
    check_message(std::string(e.what()));
  }
}

}  // namespace

TEST_CASE("empty configs resolve to the documented defaults") {
  const ExperimentConfig c = parse_config("", "empty.cfg");
  CHECK(c.matrix == std::array<std::int64_t, 4>{2, 1, 1, 1});
  CHECK(c.roof == ScalarField::constant(1.0));
  CHECK(c.weight == FiberWeight::constant(1.0));
  CHECK_FALSE(c.roof2.has_value());
  CHECK_FALSE(c.weight2.has_value());
  CHECK_FALSE(c.tilt.has_value());
  CHECK(c.k_max == 6);
  CHECK(c.n_lo == 4);
  CHECK(c.n_hi == 28);
  CHECK(c.n == 2);
  CHECK(c.m == std::array<std::int64_t, 2>{1, 0});
  CHECK(c.t == 1.0);
  CHECK(c.delta == 1.0);
  CHECK_FALSE(c.t_max.has_value());
  CHECK_FALSE(c.t_step.has_value());
  CHECK(c.h0 == 1e-3);
  CHECK_FALSE(c.tol.has_value());
  CHECK(c.b_kind == "zero");
  CHECK(c.method == "both");
}

TEST_CASE("a full config populates every section") {
  const std::string text =
      "# suspension experiment\n"
      "[base]\n"
      "matrix = 1 1 1 2\n"
      "\n"
      "[roof]\n"
      "cos 0 0 1\n"
      "cos 1 0 0.1  # modulation\n"
      "\n"
      "[roof2]\n"
      "cos 0 0 1.5\n"
      "\n"
      "[weight]\n"
      "spow 0\n"
      "cos 0 0 0.5\n"
      "spow 2\n"
      "sin 1 -1 0.25\n"
      "\n"
      "[weight2]\n"
      "cos 0 0 2\n"
      "\n"
      "[tilt]\n"
      "cos 1 0 0.01\n"
      "\n"
      "[params]\n"
      "k_max = 9\n"
      "n_lo = 6\n"
      "n_hi = 30\n"
      "n = 4\n"
      "m_x = 2\n"
      "m_y = -1\n"
      "t = 2.5\n"
      "delta = 0.5\n"
      "t_max = 8\n"
      "t_step = 0.25\n"
      "h0 = 5e-4\n"
      "tol = 1e-8\n"
      "b_kind = constant_rate\n"
      "b_rate = -0.3\n"
      "b_offset = 1.25\n"
      "method = analytic\n";
  const ExperimentConfig c = parse_config(text, "full.cfg");

  CHECK(c.matrix == std::array<std::int64_t, 4>{1, 1, 1, 2});

  ScalarField roof = ScalarField::constant(1.0);
  roof.add_cos(1, 0, 0.1);
  CHECK(c.roof == roof);
  REQUIRE(c.roof2.has_value());
  CHECK(*c.roof2 == ScalarField::constant(1.5));

  FiberWeight w = FiberWeight::constant(0.5);
  ScalarField s2;
  s2.add_sin(1, -1, 0.25);
  w.add_component(2, s2);
  CHECK(c.weight == w);
  REQUIRE(c.weight2.has_value());
  CHECK(*c.weight2 == FiberWeight::constant(2.0));
  REQUIRE(c.tilt.has_value());

  CHECK(c.k_max == 9);
  CHECK(c.n_lo == 6);
  CHECK(c.n_hi == 30);
  CHECK(c.n == 4);
  CHECK(c.m == std::array<std::int64_t, 2>{2, -1});
  CHECK(c.t == 2.5);
  CHECK(c.delta == 0.5);
  CHECK(c.t_max == 8.0);
  CHECK(c.t_step == 0.25);
  CHECK(c.h0 == 5e-4);
  CHECK(c.tol == 1e-8);
  CHECK(c.b_kind == "constant_rate");
  CHECK(c.b_rate == -0.3);
  CHECK(c.b_offset == 1.25);
  CHECK(c.method == "analytic");
}

TEST_CASE("config errors carry the offending line number") {
  expect_config_error("[params]\ndelta = -0.5\n", 2, [](const std::string& msg) {
    CHECK(msg.find("delta") != std::string::npos);
  });

  expect_config_error("[params]\nfrobnicate = 1\n", 2, [](const std::string& msg) {
    CHECK(msg.find("unknown key") != std::string::npos);
  });

  expect_config_error("[nonsense]\n", 1, [](const std::string& msg) {
    CHECK(msg.find("unknown section") != std::string::npos);
  });

  expect_config_error("[params]\nk_max = 3\n[params]\n", 3, [](const std::string& msg) {
    CHECK(msg.find("duplicate") != std::string::npos);
  });

  expect_config_error("[params]\nk_max = 3\nk_max = 4\n", 3,
                      [](const std::string& msg) {
                        CHECK(msg.find("duplicate") != std::string::npos);
                      });

  expect_config_error("[base]\nmatrix = 2 1 1\n", 2, [](const std::string&) {});
  expect_config_error("[params]\nn = 7\n", 2, [](const std::string&) {});
  expect_config_error("[params]\nt_step = 0\n", 2, [](const std::string&) {});
  expect_config_error("[params]\ntol = -1\n", 2, [](const std::string&) {});
  expect_config_error("[params]\nb_kind = sideways\n", 2, [](const std::string&) {});
  expect_config_error("[params]\nmethod = guess\n", 2, [](const std::string&) {});
  expect_config_error("[roof]\ntan 1 0 1\n", 2, [](const std::string&) {});
  expect_config_error("[weight]\nspow -1\n", 2, [](const std::string&) {});
  expect_config_error("k_max = 3\n", 1, [](const std::string& msg) {
    CHECK(msg.find("section") != std::string::npos);
  });
}

TEST_CASE("cross-field validation points at the stored assignment") {
  expect_config_error("[params]\nn_hi = 10\nn_lo = 12\n", 2,
                      [](const std::string& msg) {
                        CHECK(msg.find("n_lo") != std::string::npos);
                      });
  expect_config_error("[params]\nm_x = 0\nm_y = 0\n", 2, [](const std::string&) {});
}

TEST_CASE("the file loader reports unreadable paths") {
  CHECK_THROWS_AS((void)load_config("/nonexistent/rigidlab.cfg"), ConfigError);

  const auto dir = std::filesystem::temp_directory_path() / "rigidlab_cfg_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "ok.cfg";
  {
    std::ofstream out(path);
    out << "[params]\nk_max = 2\n";
  }
  const ExperimentConfig c = load_config(path.string());
  CHECK(c.k_max == 2);
  std::filesystem::remove_all(dir);
}

TEST_CASE("doubles are printed with round-trip precision") {
  for (double v : {0.1, 1.0 / 3.0, 1e300, 5e-324, -2.5, 0.0, 123456789.123456789}) {
    const std::string s = format_double(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
  }
  CHECK(format_double(1.0) == "1");
  CHECK(fraction(3, 7) == "3/7");
  CHECK(fraction(0, 1) == "0/1");
}

TEST_CASE("csv tables enforce their arity") {
  CsvTable t({"a", "b"});
  t.add_row({"1", "2"});
  t.add_row({"x", "y"});
  CHECK(t.text() == "a,b\n1,2\nx,y\n");
  CHECK_THROWS_AS(t.add_row({"only"}), std::invalid_argument);
  CHECK_THROWS_AS((void)CsvTable({}), std::invalid_argument);
}

TEST_CASE("report files land inside the requested directory") {
  const auto dir =
      std::filesystem::temp_directory_path() / "rigidlab_report_test" / "nested";
  const std::string path = write_text_file(dir.string(), "data.csv", "a\n1\n");
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "a");
  std::filesystem::remove_all(dir.parent_path());
}

TEST_CASE("field serializations split into echo lines") {
  const auto lines = field_lines(ScalarField::constant(1.0));
  REQUIRE(lines.size() == 1);
  CHECK(lines[0] == "cos 0 0 1");

  FiberWeight w = FiberWeight::constant(1.0);
  ScalarField g;
  g.add_sin(1, 0, 0.5);
  w.add_component(1, g);
  const auto wlines = weight_lines(w);
  REQUIRE(wlines.size() == 3);
  CHECK(wlines[0] == "cos 0 0 1");
  CHECK(wlines[1] == "spow 1");
  CHECK(wlines[2] == "sin 1 0 0.5");
}
