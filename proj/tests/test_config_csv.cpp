#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "perfo/config.hpp"
#include "perfo/csv.hpp"

using namespace perfo;

namespace {

std::string config_key_error(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.key();
  }
  return "<none>";
}

}  // namespace

TEST_CASE("defaults") {
  const RunConfig c = parse_config("");
  CHECK(c.n == 256);
  CHECK(c.eps == 1e-2);
  CHECK(c.sweep_grid().size() == 8);
  CHECK(cell_integral(c.source()).value == doctest::Approx(1.0));
}

TEST_CASE("parsing keys, lists and comments") {
  const RunConfig c = parse_config(R"(
# comment
lattice.q11 = 1.5
lattice.q22 = 0.75   # trailing comment
hole.p = [0.7, 0.3]
hole.shape = [0, 0, 0.5, 0, 0, 0.25]
data.g = [1, 0.5, -0.5]
data.f = [0, 0, 2, 0, 1, 0, 0, 0.5]
numerics.N = 64
sweep.eps_grid = [0.01, 0.005, 0.002, 0.001]
eval.probes = [0.1, 0.1, 1.2, 0.6]
)");
  CHECK(c.q11 == 1.5);
  CHECK(c.q22 == 0.75);
  CHECK(c.p.x == 0.7);
  CHECK(c.g.size() == 3);
  CHECK(c.n == 64);
  CHECK(c.sweep_grid() == std::vector<double>{0.01, 0.005, 0.002, 0.001});
  REQUIRE(c.probes.size() == 2);
  CHECK(c.probes[1].x == 1.2);
  CHECK(cell_integral(c.source()).value == doctest::Approx(2.0 * 1.5 * 0.75));
  CHECK(c.problem().n == 64);
}

TEST_CASE("invalid configurations name the key") {
  CHECK(config_key_error("lattice.q33 = 1") == "lattice.q33");
  CHECK(config_key_error("numerics.N = 64\nnumerics.N = 32") == "numerics.N");
  CHECK(config_key_error("numerics.N = 6.5") == "numerics.N");
  CHECK(config_key_error("solve.eps = abc") == "solve.eps");
  CHECK(config_key_error("hole.p = [1.5, 0.5]") == "hole.p");
  CHECK(config_key_error("lattice.q11 = -1") == "lattice.q11");
  CHECK(config_key_error("data.g = [1, 2]") == "data.g");
  CHECK(config_key_error("hole.shape = [0, 0, 1, 0, 0, -1]") == "hole.shape");
  CHECK(config_key_error("eval.probes = [0.1]") == "eval.probes");
  CHECK(config_key_error("sweep.eps_grid = [0.001, 0.01]") == "sweep.eps_grid");
  CHECK_THROWS_AS(load_config("/nonexistent/perfo.cfg"), ConfigError);
}

TEST_CASE("csv formatting round-trips doubles") {
  const double third = 1.0 / 3.0;
  const std::string text = format_csv({{"a", "b"}, {{third, -2.5e-300}}});
  std::istringstream in(text);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(header == "a,b");
  const auto comma = row.find(',');
  CHECK(std::stod(row.substr(0, comma)) == third);
  CHECK(std::stod(row.substr(comma + 1)) == -2.5e-300);
  CHECK_THROWS_AS(format_csv({{"a"}, {{std::numeric_limits<double>::quiet_NaN()}}}), NumericalError);
  CHECK_THROWS_AS(format_csv({{"a"}, {{std::numeric_limits<double>::infinity()}}}), NumericalError);
}

TEST_CASE("atomic write replaces the file and leaves no temporary") {
  const auto dir = std::filesystem::temp_directory_path() / "perfo_csv_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  write_csv(dir / "t.csv", {{"x"}, {{1.0}}});
  write_csv(dir / "t.csv", {{"x"}, {{2.0}}});
  std::ifstream in(dir / "t.csv");
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == "x\n2\n");
  int files = 0;
  for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir)) ++files;
  CHECK(files == 1);
  std::filesystem::remove_all(dir);
}
