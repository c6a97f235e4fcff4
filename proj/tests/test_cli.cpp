#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "funsol/cli.hpp"
#include "funsol/error.hpp"

using namespace funsol;
namespace fs = std::filesystem;

namespace {

const char* kMinimal = R"([geometry]
n1 = 17
n2 = 17

[problem]
mode = molecular
n = 2
a11 = 1
a12 = 0
a21 = 0
a22 = 1
u_star = 1, 0
)";

const char* kEqualCoef = R"([geometry]
n1 = 33
n2 = 33

[problem]
mode = scalar
n = 1
a11 = 1+u1^2+p^2
b_next = 1+u1^2+p^2
u_star = 2
p_star = 1

[solver]
backend = scalar_bisection
tol = 1e-12
)";

const char* kResonant = R"([geometry]
n1 = 17
n2 = 17

[problem]
mode = darcy
n = 2
a11 = 1
a12 = 0
a21 = 0
a22 = 1
b1 = -u2
b2 = u1
u_star = 0, 0
p_star = 6.283185307179586
)";

cli::ProblemConfig parse(const std::string& text) {
  std::istringstream in(text);
  return cli::parse_config(in, "test.ini");
}

class CliRun : public ::testing::Test {
protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("funsol_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write_config(const std::string& name, const std::string& body) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << body << "\n[output]\ndirectory = " << (dir_ / "out").string() << "\n";
    return p;
  }

  int run(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return cli::run(args, out_, err_);
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(f), {});
}

}  // namespace

TEST(Config, MinimalMolecular) {
  const auto cfg = parse(kMinimal);
  ASSERT_TRUE(cfg.problem.has_value());
  EXPECT_EQ(cfg.problem->mode(), Mode::molecular);
  EXPECT_EQ(cfg.problem->n(), 2u);
  EXPECT_EQ(cfg.solver.backend, "fixed_point");
  EXPECT_EQ(cfg.geometry.n1, 17u);
  EXPECT_EQ(cfg.output.directory, "funsol_output");
  EXPECT_FALSE(cfg.residual_tol.has_value());
}

TEST(Config, BackendModeCompatibility) {
  EXPECT_THROW(parse(std::string(kMinimal) + "[solver]\nbackend = scalar_bisection\n"), ConfigError);
  EXPECT_THROW(parse(std::string(kResonant) + "[solver]\nbackend = fixed_point\n"), ConfigError);
  EXPECT_EQ(parse(kResonant).solver.backend, "shooting");
}

TEST(Config, UnknownVariableNamesKey) {
  std::string text = kMinimal;
  text.replace(text.find("a11 = 1"), 7, "a11 = 1+u3");
  try {
    (void)parse(text);
    FAIL() << "expected UnknownVariableError";
  } catch (const UnknownVariableError& e) {
    EXPECT_NE(std::string(e.what()).find("a11"), std::string::npos);
    EXPECT_EQ(e.position(), 3u);
  }
}

TEST(Config, Rejections) {
  EXPECT_THROW(parse(std::string(kMinimal) + "[solver]\nbogus = 1\n"), ConfigError);
  EXPECT_THROW(parse(std::string(kMinimal) + "[extra]\nx = 1\n"), ConfigError);
  EXPECT_THROW(parse(std::string(kMinimal) + "[solver]\ntol = abc\n"), ConfigError);
  EXPECT_THROW(parse(std::string(kMinimal) + "[solver]\ndamping = 1.5\n"), ConfigError);
  EXPECT_THROW(parse(std::string(kMinimal) + "[output]\nfields = maybe\n"), ConfigError);
  EXPECT_THROW(parse("[geometry\nn1 = 3\n"), ConfigError);
  std::string missing = kMinimal;
  missing.erase(missing.find("a22 = 1"), 7);
  EXPECT_THROW(parse(missing), ConfigError);
  std::string partial_b = kResonant;
  partial_b.erase(partial_b.find("b2 = u1"), 7);
  EXPECT_THROW(parse(partial_b), ConfigError);
  std::string bad_geometry = kMinimal;
  bad_geometry.replace(bad_geometry.find("n1 = 17"), 7, "n1 = -3");
  EXPECT_THROW(parse(bad_geometry), ConfigError);
}

TEST(Config, ExitCodes) {
  EXPECT_EQ(cli::exit_code_for(ErrorCategory::config), 2);
  EXPECT_EQ(cli::exit_code_for(ErrorCategory::solver), 3);
  EXPECT_EQ(cli::exit_code_for(ErrorCategory::resonance), 4);
  EXPECT_EQ(cli::exit_code_for(ErrorCategory::verification), 5);
}

TEST_F(CliRun, UsageErrors) {
  EXPECT_EQ(run({}), cli::usage);
  EXPECT_EQ(run({"frobnicate"}), cli::usage);
  EXPECT_EQ(run({"solve"}), cli::usage);
  EXPECT_EQ(run({"--help"}), cli::ok);
}

TEST_F(CliRun, MissingConfigFile) {
  EXPECT_EQ(run({"solve", (dir_ / "absent.ini").string()}), cli::config);
  EXPECT_NE(err_.str().find("absent.ini"), std::string::npos);
}

TEST_F(CliRun, SolveEqualCoefficients) {
  const auto cfg = write_config("equal.ini", kEqualCoef);
  ASSERT_EQ(run({"solve", cfg.string()}), cli::ok) << err_.str();
  const auto report = nlohmann::json::parse(slurp(dir_ / "out" / "report.json"));
  EXPECT_LE(report["linear_relation_max_deviation"][0].get<double>(), 1e-6);
  EXPECT_NEAR(report["two_point"]["gamma"][0].get<double>(), 2.0, 1e-10);
  EXPECT_TRUE(fs::exists(dir_ / "out" / "u1.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "out" / "p.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "out" / "z.csv"));

  ASSERT_EQ(run({"verify", cfg.string(), (dir_ / "out").string()}), cli::ok) << err_.str();
  EXPECT_TRUE(fs::exists(dir_ / "out" / "verify_report.json"));
}

TEST_F(CliRun, VerifyFailsOnTamperedField) {
  const auto cfg = write_config("equal.ini", std::string(kEqualCoef) + "\n[verify]\nresidual_tol = 1\n");
  ASSERT_EQ(run({"solve", cfg.string()}), cli::ok) << err_.str();
  const auto grid = cli::build_grid(cli::load_config(cfg).geometry);
  auto u = cli::read_field_csv(dir_ / "out" / "u1.csv", grid);
  u[grid.index(16, 16)] += 0.1;
  cli::write_field_csv(dir_ / "out" / "u1.csv", grid, u);
  EXPECT_EQ(run({"verify", cfg.string(), (dir_ / "out").string()}), cli::verification);

  std::ofstream(dir_ / "out" / "p.csv") << "x1,x2,value\n0,0,0\n";
  EXPECT_EQ(run({"verify", cfg.string(), (dir_ / "out").string()}), cli::verification);
}

TEST_F(CliRun, PivotWritesOnlyZ) {
  const auto cfg = write_config("min.ini", kMinimal);
  ASSERT_EQ(run({"pivot", cfg.string()}), cli::ok) << err_.str();
  EXPECT_TRUE(fs::exists(dir_ / "out" / "z.csv"));
  EXPECT_FALSE(fs::exists(dir_ / "out" / "u1.csv"));
  const auto grid = cli::build_grid(cli::load_config(cfg).geometry);
  const auto z = cli::read_field_csv(dir_ / "out" / "z.csv", grid);
  for (std::size_t k = 0; k < grid.size(); ++k) EXPECT_NEAR(z[k], grid.position(k)[0], 1e-10);
}

TEST_F(CliRun, ResonanceExitCode) {
  const auto cfg = write_config("res.ini", kResonant);
  EXPECT_EQ(run({"solve", cfg.string()}), cli::resonance);
  EXPECT_NE(err_.str().find("singular"), std::string::npos);
}

TEST_F(CliRun, OracleRejectsSmallGrid) {
  EXPECT_EQ(run({"oracle", "--grid", "5"}), cli::config);
  EXPECT_EQ(run({"oracle", "--grid", "abc"}), cli::usage);
}

TEST_F(CliRun, CsvRoundTrip) {
  const auto grid = cli::build_grid(cli::GeometryConfig{"annulus", 5, 4, 1.0, 1.0, 1.0, 2.0});
  std::vector<double> v(grid.size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = 1.0 / (1.0 + static_cast<double>(k));
  cli::write_field_csv(dir_ / "f.csv", grid, v);
  EXPECT_EQ(cli::read_field_csv(dir_ / "f.csv", grid), v);
  const auto other = cli::build_grid(cli::GeometryConfig{"annulus", 4, 5, 1.0, 1.0, 1.0, 2.0});
  EXPECT_THROW((void)cli::read_field_csv(dir_ / "f.csv", other), ShapeMismatchError);
}
