#include <gtest/gtest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct Result {
  int status = -1;
  std::string out;
  std::string err;
};

std::filesystem::path scratch() {
  static const auto dir = [] {
    auto d = std::filesystem::temp_directory_path() / ("dirac_packets_cli_" + std::to_string(::getpid()));
    std::filesystem::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

Result run(const std::string& args, const std::string& env = "") {
  const auto err_path = scratch() / "stderr.txt";
  const std::string cmd = env + (env.empty() ? "" : " ") + DIRAC_PACKETS_CLI + std::string(" ") + args + " 2>" +
                          err_path.string();
  Result r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int raw = ::pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.err = slurp(err_path);
  return r;
}

std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string l; std::getline(is, l);)
    if (!l.empty() && l[0] != '#') out.push_back(l);
  return out;
}

const std::string quick = " --grid-nodes 512";

}  // namespace

TEST(Cli, ObservablesSmallWidth) {
  const auto r = run("observables --n 0.01");
  ASSERT_EQ(r.status, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["mu_total"].get<double>(), 1.0, 0.01);
  EXPECT_NEAR(j["L_total"].get<double>(), 1.0, 0.01);
  EXPECT_NEAR(j["energy_total"].get<double>(), 1.0, 0.001);
  EXPECT_TRUE(j.contains("mu_total_err"));
  EXPECT_EQ(j["config"]["command"], "observables");
}

TEST(Cli, ObservablesLargeWidthIsSmall) {
  const auto r = run("observables --n 100 --observables mean_square_radius");
  ASSERT_EQ(r.status, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_LT(j["mean_square_radius"].get<double>(), 0.01);
  EXPECT_FALSE(j.contains("mu_total"));
}

TEST(Cli, InvalidWidthIsAValidationError) {
  const auto r = run("observables --n -1");
  EXPECT_EQ(r.status, 1);
  EXPECT_TRUE(r.out.empty());
  const auto j = nlohmann::json::parse(r.err);
  EXPECT_EQ(j["error"]["kind"], "validation");
  EXPECT_EQ(j["error"]["exit_code"], 1);
}

TEST(Cli, UnknownFlagsAndObservables) {
  EXPECT_EQ(run("observables --n 1 --bogus").status, 1);
  EXPECT_EQ(run("observables --n 1 --observables mass").status, 1);
  EXPECT_EQ(run("sweep --observables mass --points 2").status, 1);
  EXPECT_EQ(run("").status, 1);
}

TEST(Cli, QuadratureFailureIsAComputationError) {
  const auto r = run("observables --n 1 --observables mu_spin --rel-tol 1e-15 --abs-tol 1e-30 --max-panels 2");
  EXPECT_EQ(r.status, 2);
  EXPECT_EQ(nlohmann::json::parse(r.err)["error"]["kind"], "computation");
}

TEST(Cli, SweepOnlyRequestedColumns) {
  const auto path = scratch() / "subset.csv";
  const auto r = run("sweep --points 5 --observables mu_total,mu_spin -o " + path.string() + quick);
  ASSERT_EQ(r.status, 0) << r.err;
  const auto data = data_lines(slurp(path));
  ASSERT_EQ(data.size(), 6u);
  EXPECT_EQ(data[0], "n,mu_total,mu_total_err,mu_spin,mu_spin_err,status");
  EXPECT_NE(r.out.find("sweep: 5 rows"), std::string::npos);
  EXPECT_FALSE(std::filesystem::exists(path.string() + ".partial"));
}

TEST(Cli, SweepRerunIsByteIdentical) {
  const auto a = scratch() / "a.csv";
  const auto b = scratch() / "b.csv";
  const std::string flags = " --points 4 --n-min 0.1 --n-max 10" + quick;
  ASSERT_EQ(run("sweep -o " + a.string() + flags).status, 0);
  ASSERT_EQ(run("sweep --threads 2 -o " + b.string() + flags).status, 0);
  EXPECT_EQ(slurp(a), slurp(b));
  const auto header = data_lines(slurp(a)).at(0);
  EXPECT_GE(std::count(header.begin(), header.end(), ','), 9);
}

TEST(Cli, SweepJson) {
  const auto r = run("sweep --points 2 --n-min 1 --n-max 2 --observables L_spin --format json" + quick);
  ASSERT_EQ(r.status, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["rows"].size(), 2u);
  EXPECT_EQ(j["config"]["points"], "2");
  EXPECT_EQ(j["rows"][0]["status"], "ok");
}

TEST(Cli, SliceSvgHasDashedComptonCircle) {
  const auto path = scratch() / "slice.svg";
  const auto r = run("slice --n 8 --half-extent 1.5 --res 32 --format svg -o " + path.string());
  ASSERT_EQ(r.status, 0) << r.err;
  const auto svg = slurp(path);
  EXPECT_NE(svg.find("class=\"compton\""), std::string::npos);
  EXPECT_NE(svg.find("stroke-dasharray"), std::string::npos);
  EXPECT_NE(svg.find("<metadata>"), std::string::npos);
}

TEST(Cli, SliceMinimalGrid) {
  const auto r = run("slice --n 2 --res 8");
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(data_lines(r.out).size(), 65u);
}

TEST(Cli, SliceErrors) {
  EXPECT_EQ(run("slice --n 2 --res 8 --format png").status, 1);
  EXPECT_EQ(run("slice --n 2 --res 4").status, 1);
  const auto r = run("slice --n 2 --half-extent 50");
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.err.find("r_max"), std::string::npos);
}

TEST(Cli, ProfileExport) {
  const auto r = run("profile --n 1 --grid-nodes 64");
  ASSERT_EQ(r.status, 0) << r.err;
  const auto data = data_lines(r.out);
  ASSERT_EQ(data.size(), 65u);
  EXPECT_EQ(data[0], "r,a,b,a_E,b_E");
  EXPECT_EQ(data[1].rfind("0,", 0), 0u);
}

TEST(Cli, ValidateSingleGroup) {
  const auto r = run("validate --only magnetic_moment");
  ASSERT_EQ(r.status, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j["reports"].size(), 1u);
  EXPECT_EQ(j["reports"][0]["passed"], true);
  EXPECT_EQ(run("validate --only nothing").status, 1);
}

TEST(Cli, ValidateMonteCarloIsReproducible) {
  const auto a = run("validate --only monte_carlo --seed 7 --mc-samples 20000");
  const auto b = run("validate --only monte_carlo --seed 7 --mc-samples 20000");
  ASSERT_EQ(a.status, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto j = nlohmann::json::parse(a.out);
  EXPECT_EQ(j["reports"][0]["seed"], 7);
  EXPECT_EQ(j["reports"][0]["samples"], 20000);
}

TEST(Cli, ConfigFileAndEnvironment) {
  const auto cfg = scratch() / "run.ini";
  {
    std::ofstream os(cfg);
    os << "[observables]\nn=2\nobservables=energy_total\n";
  }
  const auto r = run("--config " + cfg.string() + " observables --n 3");
  ASSERT_EQ(r.status, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["n"], 3.0);
  EXPECT_TRUE(j.contains("energy_total"));
  EXPECT_FALSE(j.contains("mu_spin"));

  const auto e = run("observables --n 1 --observables xQx", "DIRAC_PACKETS_REL_TOL=1e-8");
  ASSERT_EQ(e.status, 0) << e.err;
  EXPECT_EQ(nlohmann::json::parse(e.out)["config"]["rel_tol"], "1e-08");
  EXPECT_EQ(run("observables --n 1", "DIRAC_PACKETS_REL_TOL=fast").status, 1);
}
