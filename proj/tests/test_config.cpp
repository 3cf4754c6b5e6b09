#include "halfspace/config.hpp"
#include "halfspace/io.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace halfspace;

namespace {

KeyValueConfig parse(const std::string& text) {
  std::istringstream in(text);
  return KeyValueConfig::parse(in, "test.cfg");
}

std::string error_of(const std::string& text) {
  try {
    load_model(parse(text));
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("key-value parsing with comments and blank lines") {
  const auto config = parse("# header\n\nstatistics = fermion  # trailing\n"
                            "dimension=2\n  a =  0.5 \n");
  REQUIRE(config.find("a"));
  CHECK(config.find("a")->value == "0.5");
  CHECK(config.find("a")->line == 5);
  CHECK(config.find("dimension")->line == 4);
  const ModelSpec model = load_model(config);
  CHECK(model.dimension() == 2);
  CHECK(model.coefficient({1, 0}) == 0.5);
}

TEST_CASE("diagnostics carry the offending line") {
  CHECK(error_of("statistics = fermion\ndim = 2\na = zero\n") ==
        "test.cfg:3: 'a' expects a number, got 'zero'");
  CHECK(error_of("statistics = fermion\ndim = 2\nwidth = 3\n") ==
        "test.cfg:3: unknown key 'width'");
  CHECK(error_of("statistics = anyon\ndim = 2\n") ==
        "test.cfg:1: unknown statistics 'anyon' (expected boson or fermion)");
  CHECK_THROWS_WITH_AS(parse("a = 1\nno equals sign\n"),
                       "test.cfg:2: expected 'key = value'", ConfigError);
  CHECK_THROWS_WITH_AS(parse("a = 1\nb = 2\na = 3\n"),
                       "test.cfg:3: duplicate key 'a' (first on line 1)", ConfigError);
  CHECK(error_of("statistics = fermion\ndim = 0\n") ==
        "test.cfg:2: dimension must be >= 1");
}

TEST_CASE("coupling tables") {
  const auto config = parse(
      "statistics = boson\ndimension = 1\n"
      "coupling 0 = 1\ncoupling 1 = -0.25\ncoupling -1 = -0.25\n"
      "coupling 2 = 0.1\ncoupling -2 = 0.1\n");
  const ModelSpec model = load_model(config);
  CHECK(model.range() == 2);
  CHECK(model.coefficient({2}) == 0.1);

  CHECK(error_of("statistics = fermion\ndimension = 1\ncoupling 1 = 0.5\n")
            .starts_with("test.cfg:3: "));
  CHECK(error_of("statistics = fermion\ndimension = 2\ncoupling 1 = 0.5\n") ==
        "test.cfg:3: coupling offset needs 2 components");
  CHECK(error_of("statistics = fermion\ndimension = 1\ncoupling 1 = 0.5\n"
                 "coupling -1 = 0.5\ncoupling 1 = 0.5\n") ==
        "test.cfg:5: duplicate coupling offset");
}

TEST_CASE("flag overrides replace file values and report as flags") {
  auto config = parse("statistics = fermion\ndimension = 2\na = 0.5\n");
  config.set("a", "abc");
  try {
    load_model(config);
    FAIL("expected a config error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()) == "--a:0: 'a' expects a number, got 'abc'");
  }
  config.set("a", "1");
  CHECK(load_model(config).coefficient({0, 1}) == 1.0);
}

TEST_CASE("lists and integers") {
  const auto config = parse("m = 64, 128,256\nn = 12x\n");
  CHECK(parse_double_list(config, *config.find("m")) ==
        std::vector<double>{64, 128, 256});
  CHECK_THROWS_AS(parse_int(config, *config.find("n")), ConfigError);
}

TEST_CASE("number formatting keeps 12 significant digits") {
  CHECK(format_number(std::numbers::pi) == "3.14159265359");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(1e300 * 1e300) == "inf");
  CHECK(format_number(std::nan("")) == "nan");
  CHECK(round_significant(1.0 / 3.0) == 0.333333333333);
}

TEST_CASE("CSV and column writers") {
  std::ostringstream out;
  CsvWriter csv(out, {"x", "y"});
  csv.row({1.0, 0.5});
  CHECK(out.str() == "x,y\n1,0.5\n");
  CHECK_THROWS_AS(csv.row({1.0}), std::invalid_argument);

  const auto path = std::filesystem::temp_directory_path() / "halfspace_empty.dat";
  write_columns(path, {"a", "v"}, {{}, {}});
  std::ifstream in(path);
  std::stringstream content;
  content << in.rdbuf();
  CHECK(content.str() == "# a v\n");
  std::filesystem::remove(path);
}
