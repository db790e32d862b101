#include <casimir_cli/config.hpp>
#include <casimir_cli/registry.hpp>
#include <casimir_cli/run.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace casimir;
using namespace casimir::cli;

namespace {

ParseOutcome parse(std::vector<std::string> args) {
  args.insert(args.begin(), "casimir-neq");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return parse_config(static_cast<int>(argv.size()), argv.data());
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto p = std::filesystem::temp_directory_path() / ("casimir_cli_test_" + name);
  std::ofstream(p, std::ios::binary) << content;
  return p;
}

std::string config_line(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line))
    if (line.rfind("# config: ", 0) == 0) return line.substr(10);
  return {};
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

Table read_table(const std::string& csv) {
  Table t;
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (t.header.empty())
      t.header = cells;
    else
      t.rows.push_back(cells);
  }
  return t;
}

double cell(const Table& t, std::size_t row, const std::string& col) {
  for (std::size_t i = 0; i < t.header.size(); ++i)
    if (t.header[i] == col) return std::stod(t.rows.at(row).at(i));
  ADD_FAILURE() << "no column " << col;
  return NAN;
}

int run_exe(const std::string& args) {
  const char* exe = std::getenv("CASIMIR_CLI_EXE");
  if (!exe) return -1;
  const int status = std::system((std::string(exe) + " " + args + " >/dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Grid, LogarithmicSyntax) {
  const auto g = parse_grid_um("1:10:30log");
  ASSERT_EQ(g.size(), 30u);
  EXPECT_EQ(g.front(), 1.0);
  EXPECT_EQ(g.back(), 10.0);
  for (std::size_t i = 1; i < g.size(); ++i) EXPECT_NEAR(g[i] / g[i - 1], std::pow(10.0, 1.0 / 29.0), 1e-12);
}

TEST(Grid, LinearListAndErrors) {
  EXPECT_EQ(parse_grid_um("1:3:3"), (std::vector<double>{1.0, 2.0, 3.0}));
  EXPECT_EQ(parse_grid_um("0.5,2,7"), (std::vector<double>{0.5, 2.0, 7.0}));
  EXPECT_EQ(parse_grid_um("4"), (std::vector<double>{4.0}));
  EXPECT_THROW(parse_grid_um("0:1:3"), ConfigError);
  EXPECT_THROW(parse_grid_um("3,2"), ConfigError);
  EXPECT_THROW(parse_grid_um("1:2"), ConfigError);
  EXPECT_THROW(parse_grid_um("-1"), ConfigError);
}

TEST(Thickness, InfinityAndUnits) {
  EXPECT_TRUE(std::isinf(parse_thickness_m("inf")));
  EXPECT_DOUBLE_EQ(parse_thickness_m("2"), 2e-6);
  EXPECT_THROW(parse_thickness_m("0"), ConfigError);
  EXPECT_THROW(parse_thickness_m("abc"), ConfigError);
}

TEST(Parse, DeltaInfinity) {
  const auto o = parse({"pressure", "--delta2", "inf", "--mat2", "gold"});
  EXPECT_TRUE(std::isinf(parse_thickness_m(o.config.delta2)));
}

TEST(Parse, FlagsOverrideConfigFile) {
  const auto f = temp_file("override.json", R"({"command": "heat", "T3": 300, "d_um": "2"})");
  const auto o = parse({"--config", f.string(), "--T3", "600"});
  EXPECT_EQ(o.config.command, Command::Heat);
  EXPECT_EQ(o.config.T3, 600.0);
  EXPECT_EQ(o.config.d_um, "2");
  EXPECT_EQ(config_to_json(o.config)["T3"].get<double>(), 600.0);
}

TEST(Parse, Errors) {
  const auto unknown = temp_file("unknown.json", R"({"command": "heat", "colour": "blue"})");
  EXPECT_THROW(parse({"--config", unknown.string()}), ConfigError);
  EXPECT_THROW(parse({"heat", "--d-um", "-1:2:3"}), ConfigError);
  EXPECT_THROW(parse({"heat", "--mat1", ""}), ConfigError);
  EXPECT_THROW(parse({"bogus"}), ConfigError);
  EXPECT_THROW(parse({"heat", "--no-such-flag"}), ConfigError);
  EXPECT_THROW(parse({"heat", "--T1", "-5"}), ConfigError);
  EXPECT_THROW(parse({"atom-force"}), ConfigError);
  EXPECT_THROW(parse({"atom-force", "--alpha-au", "1", "--alpha-si", "1e-39"}), ConfigError);
  EXPECT_THROW(parse({"slab-alone", "--delta1", "inf", "--mat1", "gold"}), ConfigError);
  EXPECT_NO_THROW(parse({"atom-force", "--alpha-au", "1"}));
}

TEST(Registry, BuiltinsAndFiles) {
  const MaterialRegistry reg;
  EXPECT_TRUE(reg.resolve("mirror").is_perfect_mirror());
  EXPECT_TRUE(reg.resolve("absorber").is_perfect_absorber());
  EXPECT_TRUE(reg.resolve("silica").is_lossy());
  EXPECT_TRUE(reg.resolve("silicon").is_lossy());
  EXPECT_TRUE(reg.resolve("gold").is_lossy());
  EXPECT_THROW(reg.resolve("unobtainium"), Error);
  const auto table = temp_file("table.csv", "energy_eV,eps_re,eps_im\n0.1,3,0.5\n0.2,4,0.2\n");
  EXPECT_NO_THROW(reg.resolve(table.string()));
  const auto bad = temp_file("bad.csv", "energy_eV,eps_re,eps_im\n0.1,3,-0.5\n");
  EXPECT_THROW(reg.resolve(bad.string()), IngestionError);
}

TEST(Run, EquilibriumPressureRow) {
  auto c = parse({"pressure", "--d-um", "2", "--T1", "300", "--T2", "300", "--T3", "300"}).config;
  std::ostringstream out, err;
  ASSERT_EQ(run(c, out, err), kExitOk) << err.str();
  const Table t = read_table(out.str());
  ASSERT_EQ(t.rows.size(), 1u);
  for (const char* n : {"A_ew", "B1", "B2", "B3", "stefan_boltzmann"}) EXPECT_EQ(cell(t, 0, n), 0.0) << n;
  EXPECT_NEAR(cell(t, 0, "total"), cell(t, 0, "eq_T1") + cell(t, 0, "eq_T2"), 1e-12 * std::abs(cell(t, 0, "total")));
  EXPECT_EQ(t.header.front(), "abscissa_um");
  EXPECT_EQ(t.header.back(), "status");
}

TEST(Run, HeatTotalsMatchTermColumns) {
  auto c = parse({"heat", "--d-um", "1.5", "--T1", "300", "--T2", "0", "--T3", "600"}).config;
  std::ostringstream out, err;
  ASSERT_EQ(run(c, out, err), kExitOk) << err.str();
  const Table t = read_table(out.str());
  double s = 0.0;
  for (const char* n : {"A_ew", "B1", "B2", "B3"}) s += cell(t, 0, n);
  EXPECT_LE(std::abs(cell(t, 0, "total") - s), cell(t, 0, "err"));
  EXPECT_NE(out.str().find("# units:"), std::string::npos);
  EXPECT_NE(out.str().find("# sign: heat > 0 means body 1 absorbs"), std::string::npos);
  EXPECT_NE(out.str().find("CODATA-2018"), std::string::npos);
}

TEST(Run, ReplayFromEchoIsBitIdentical) {
  auto c = parse({"heat", "--d-um", "1,3", "--T1", "300", "--T2", "0", "--T3", "400", "--threads", "2"}).config;
  std::ostringstream first, err;
  ASSERT_EQ(run(c, first, err), kExitOk) << err.str();
  const auto f = temp_file("replay.json", config_line(first.str()));
  const auto replay = parse({"--config", f.string()}).config;
  std::ostringstream second;
  ASSERT_EQ(run(replay, second, err), kExitOk) << err.str();
  EXPECT_EQ(first.str(), second.str());
}

TEST(Run, JsonMirrorsCsv) {
  auto c = parse({"slab-alone", "--mat1", "absorber", "--delta1", "1", "--T1", "0", "--T3", "300", "--format", "json"})
               .config;
  std::ostringstream out, err;
  ASSERT_EQ(run(c, out, err), kExitOk) << err.str();
  const auto j = nlohmann::json::parse(out.str());
  EXPECT_EQ(j["metadata"]["constants_version"], "CODATA-2018");
  EXPECT_EQ(j["metadata"]["config"]["T3"].get<double>(), 300.0);
  EXPECT_NEAR(j["rows"][0]["total"].get<double>(), 918.6, 0.1);
  EXPECT_EQ(j["rows"][0]["status"], "ok");
}

TEST(Run, MaterialsCommand) {
  std::ostringstream out, err;
  ASSERT_EQ(run(parse({"materials"}).config, out, err), kExitOk);
  EXPECT_NE(out.str().find("silica"), std::string::npos);
  std::ostringstream echo;
  ASSERT_EQ(run(parse({"materials", "--material", "gold"}).config, echo, err), kExitOk);
  EXPECT_NE(echo.str().find("omega_rad_s,eps_re,eps_im,eps_imag_axis"), std::string::npos);
}

TEST(Run, ConvergenceFailureExitCode) {
  auto c = parse({"heat", "--d-um", "1", "--max-subdivisions", "2", "--rel-tol", "1e-12"}).config;
  std::ostringstream out, err;
  EXPECT_EQ(run(c, out, err), kExitConvergence);
}

TEST(Executable, ExitCodes) {
  if (!std::getenv("CASIMIR_CLI_EXE")) GTEST_SKIP() << "CASIMIR_CLI_EXE not set";
  EXPECT_EQ(run_exe("--version"), 0);
  EXPECT_EQ(run_exe("heat --d-um 0"), kExitConfig);
  EXPECT_EQ(run_exe("frobnicate"), kExitConfig);
  const auto bad = temp_file("bad_exe.csv", "energy_eV,eps_re,eps_im\n0.1,3,-0.5\n");
  EXPECT_EQ(run_exe("materials --material " + bad.string()), kExitIngestion);
  EXPECT_EQ(run_exe("heat --d-um 1 --max-subdivisions 2 --rel-tol 1e-12"), kExitConvergence);
  EXPECT_EQ(run_exe("validate"), kExitOk);
}
