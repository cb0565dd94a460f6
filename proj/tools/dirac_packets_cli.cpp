// dirac-packets: observables, sweeps, current slices, radial profiles and the
// oracle validation suite for the Gaussian positive-frequency Dirac states.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dirac_packets/error.hpp"
#include "dirac_packets/experiments.hpp"
#include "dirac_packets/io.hpp"
#include "dirac_packets/observables.hpp"
#include "dirac_packets/packet.hpp"
#include "dirac_packets/validation.hpp"

namespace dp = dirac_packets;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_invalid = 1;
constexpr int exit_computation = 2;

constexpr const char* tolerance_env = "DIRAC_PACKETS_REL_TOL";

int fail(const std::string& kind, const std::string& message, int code) {
  nlohmann::ordered_json err;
  err["error"]["kind"] = kind;
  err["error"]["message"] = message;
  err["error"]["exit_code"] = code;
  std::cerr << err.dump() << '\n';
  return code;
}

// Writes the whole payload or nothing: a temporary sibling file is renamed
// into place only after a complete write.
void emit(const std::string& path, const std::string& payload) {
  if (path.empty() || path == "-") {
    std::cout << payload;
    std::cout.flush();
    return;
  }
  const std::filesystem::path target(path);
  const std::filesystem::path tmp = target.string() + ".partial";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    os << payload;
    os.flush();
    if (!os) throw std::runtime_error("write to " + tmp.string() + " failed");
  }
  std::filesystem::rename(tmp, target);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

struct Flags {
  dp::QuadratureConfig cfg;
  std::string output;
  std::string format;

  double n = 1.0;
  std::string observables;

  double n_min = 0.01, n_max = 100.0;
  int points = 25;
  std::string spacing = "log";

  double half_extent = 1.5;
  int resolution = 32;

  std::string only;
  std::uint64_t validate_seed = 7;
};

dp::io::Metadata run_config(const std::string& command, const Flags& f) {
  using dp::io::format_number;
  dp::io::Metadata m;
  m.emplace_back("command", command);
  if (command == "observables" || command == "slice" || command == "profile")
    m.emplace_back("n", format_number(f.n));
  if (command == "observables" || command == "sweep")
    m.emplace_back("observables", f.observables.empty() ? "all" : f.observables);
  if (command == "sweep") {
    m.emplace_back("n_min", format_number(f.n_min));
    m.emplace_back("n_max", format_number(f.n_max));
    m.emplace_back("points", std::to_string(f.points));
    m.emplace_back("spacing", f.spacing);
  }
  if (command == "slice") {
    m.emplace_back("half_extent", format_number(f.half_extent));
    m.emplace_back("resolution", std::to_string(f.resolution));
  }
  if (command == "validate") {
    m.emplace_back("only", f.only.empty() ? "all" : f.only);
    m.emplace_back("seed", std::to_string(f.validate_seed));
  }
  m.emplace_back("rel_tol", format_number(f.cfg.rel_tol));
  m.emplace_back("abs_tol", format_number(f.cfg.abs_tol));
  m.emplace_back("p_max", format_number(f.cfg.p_max));
  m.emplace_back("r_max", format_number(f.cfg.r_max));
  m.emplace_back("nodes_1d", std::to_string(f.cfg.nodes_1d));
  m.emplace_back("grid_nodes", std::to_string(f.cfg.grid_nodes));
  m.emplace_back("angular_nodes", std::to_string(f.cfg.angular_nodes));
  m.emplace_back("max_panels", std::to_string(f.cfg.max_panels));
  m.emplace_back("mc_samples", std::to_string(f.cfg.mc_samples));
  m.emplace_back("format", f.format);
  m.emplace_back("units", "hbar=m=c=e=1; length hbar/mc; moments e*hbar/2mc; angular momentum hbar/2; energy mc^2");
  return m;
}

void check_format(const std::string& fmt, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (fmt == a) return;
  throw dp::DomainError("unsupported --format '" + fmt + "'");
}

int run_observables(const Flags& f) {
  check_format(f.format, {"json", "csv"});
  const dp::PacketSpec spec{f.n};
  spec.validate();
  f.cfg.validate();
  const auto set = dp::compute_observables(spec, f.cfg, split_list(f.observables));
  const auto meta = run_config("observables", f);
  std::string payload;
  if (f.format == "json") {
    auto j = dp::io::observables_json(set);
    j["config"] = dp::io::metadata_json(meta);
    payload = j.dump(2) + "\n";
  } else {
    std::ostringstream os;
    dp::io::write_sweep_csv(os, {dp::SweepRow{set, ""}}, meta);
    payload = os.str();
  }
  emit(f.output, payload);
  return exit_ok;
}

int run_sweep(const Flags& f) {
  check_format(f.format, {"csv", "json"});
  dp::SweepSpec sweep;
  sweep.n_min = f.n_min;
  sweep.n_max = f.n_max;
  sweep.points = f.points;
  if (f.spacing == "log")
    sweep.spacing = dp::Spacing::log;
  else if (f.spacing == "linear")
    sweep.spacing = dp::Spacing::linear;
  else
    throw dp::DomainError("unsupported --spacing '" + f.spacing + "'");
  sweep.observables = split_list(f.observables);
  for (const auto& k : sweep.observables)
    if (std::find(dp::observable_keys().begin(), dp::observable_keys().end(), k) == dp::observable_keys().end())
      throw dp::DomainError("unknown observable '" + k + "'");
  sweep.cfg = f.cfg;
  sweep.validate();

  const auto rows = dp::run_sweep(sweep);
  const auto meta = run_config("sweep", f);
  std::ostringstream os;
  if (f.format == "csv")
    dp::io::write_sweep_csv(os, rows, meta);
  else
    os << dp::io::sweep_json(rows, meta).dump(2) << '\n';
  emit(f.output, os.str());

  std::ostringstream summary;
  summary << "sweep: " << rows.size() << " rows";
  int failed = 0;
  for (const auto& r : rows) failed += r.ok() ? 0 : 1;
  if (failed) summary << " (" << failed << " failed)";
  for (const auto& key : dp::io::present_keys(rows)) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& r : rows)
      if (r.ok() && r.values.has(key)) {
        lo = std::min(lo, dp::io::field(r.values, key).value);
        hi = std::max(hi, dp::io::field(r.values, key).value);
      }
    summary << "; " << key << " [" << dp::io::format_number(lo) << ", " << dp::io::format_number(hi) << "]";
  }
  (f.output.empty() || f.output == "-" ? std::cerr : std::cout) << summary.str() << '\n';
  return failed ? exit_computation : exit_ok;
}

int run_slice(const Flags& f) {
  check_format(f.format, {"csv", "svg"});
  const dp::PacketSpec spec{f.n};
  spec.validate();
  f.cfg.validate();
  if (f.resolution < 8) throw dp::DomainError("slice resolution must be at least 8");
  if (!(f.half_extent > 0.0)) throw dp::DomainError("slice half-extent must be positive");
  if (f.half_extent * std::sqrt(2.0) > f.cfg.radial_cutoff(spec))
    throw dp::DomainError("slice half-extent exceeds r_max = " + std::to_string(f.cfg.radial_cutoff(spec)));
  const auto table = dp::current_slice(spec, f.cfg, f.half_extent, f.resolution);
  std::ostringstream os;
  if (f.format == "csv")
    dp::io::write_slice_csv(os, table, run_config("slice", f));
  else
    dp::io::write_slice_svg(os, table, run_config("slice", f));
  emit(f.output, os.str());
  return exit_ok;
}

int run_profile(const Flags& f) {
  check_format(f.format, {"csv"});
  const dp::PacketSpec spec{f.n};
  spec.validate();
  const auto prof = dp::radial_profiles(spec, f.cfg);
  std::ostringstream os;
  dp::io::write_profiles_csv(os, prof, run_config("profile", f));
  emit(f.output, os.str());
  return exit_ok;
}

int run_validate(const Flags& f) {
  check_format(f.format, {"json"});
  f.cfg.validate();
  dp::validation::Options opt;
  opt.only = f.only;
  opt.seed = f.validate_seed;
  const auto reports = dp::validation::run(f.cfg, opt);
  nlohmann::ordered_json j;
  j["config"] = dp::io::metadata_json(run_config("validate", f));
  j["reports"] = nlohmann::ordered_json::array();
  bool all = true;
  for (const auto& r : reports) {
    j["reports"].push_back(dp::io::report_json(r));
    all = all && r.passed();
  }
  j["passed"] = all;
  emit(f.output, j.dump(2) + "\n");
  return all ? exit_ok : exit_computation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian positive-frequency Dirac states: densities, moments, angular momenta"};
  app.require_subcommand(1, 1);
  app.set_config("--config", "", "key=value configuration file; command-line flags take precedence");

  Flags f;
  if (const char* env = std::getenv(tolerance_env)) {
    try {
      f.cfg.rel_tol = std::stod(env);
    } catch (const std::exception&) {
      return fail("validation", std::string(tolerance_env) + " is not a number: " + env, exit_invalid);
    }
  }

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--rel-tol", f.cfg.rel_tol, "relative quadrature tolerance (env " + std::string(tolerance_env) + ")");
    sub->add_option("--abs-tol", f.cfg.abs_tol, "absolute quadrature tolerance");
    sub->add_option("--p-max", f.cfg.p_max, "momentum cutoff in mc (0: automatic)");
    sub->add_option("--r-max", f.cfg.r_max, "radial cutoff in Compton radii (0: automatic)");
    sub->add_option("--grid-nodes", f.cfg.grid_nodes, "radial tabulation nodes");
    sub->add_option("--nodes-1d", f.cfg.nodes_1d, "Gauss-Legendre nodes per radial interval");
    sub->add_option("--angular-nodes", f.cfg.angular_nodes, "Gauss-Legendre nodes in theta");
    sub->add_option("--max-panels", f.cfg.max_panels, "adaptive refinement budget per integral");
    sub->add_option("--mc-samples", f.cfg.mc_samples, "Monte-Carlo samples");
    sub->add_option("--threads", f.cfg.threads, "worker threads (results do not depend on this)");
    sub->add_option("-o,--output", f.output, "output file (default: standard output)");
  };

  auto* obs = app.add_subcommand("observables", "all scalar observables for one n");
  add_common(obs);
  obs->add_option("--n", f.n, "momentum width parameter")->required();
  obs->add_option("--observables", f.observables, "comma-separated subset");
  obs->add_option("--format", f.format, "json|csv");

  auto* sweep = app.add_subcommand("sweep", "observables over a grid of n");
  add_common(sweep);
  sweep->add_option("--n-min", f.n_min, "smallest n");
  sweep->add_option("--n-max", f.n_max, "largest n");
  sweep->add_option("--points", f.points, "number of grid points");
  sweep->add_option("--spacing", f.spacing, "log|linear");
  sweep->add_option("--observables", f.observables, "comma-separated subset");
  sweep->add_option("--format", f.format, "csv|json");

  auto* slice = app.add_subcommand("slice", "current density on the z = 0 plane");
  add_common(slice);
  slice->add_option("--n", f.n, "momentum width parameter")->required();
  slice->add_option("--half-extent", f.half_extent, "half width of the square in Compton radii");
  slice->add_option("--res", f.resolution, "grid points per axis");
  slice->add_option("--format", f.format, "csv|svg");

  auto* profile = app.add_subcommand("profile", "export the radial profiles a, b, a_E, b_E");
  add_common(profile);
  profile->add_option("--n", f.n, "momentum width parameter")->required();
  profile->add_option("--format", f.format, "csv");

  auto* validate = app.add_subcommand("validate", "compare primary results with the oracles");
  add_common(validate);
  validate->add_option("--seed", f.validate_seed, "random seed for sample points and Monte Carlo");
  validate->add_option("--only", f.only, "single comparison group");
  validate->add_option("--format", f.format, "json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("validation", e.what(), exit_invalid);
  }

  try {
    auto with_format = [&](const char* fallback) {
      if (f.format.empty()) f.format = fallback;
      return f;
    };
    if (*obs) return run_observables(with_format("json"));
    if (*sweep) return run_sweep(with_format("csv"));
    if (*slice) return run_slice(with_format("csv"));
    if (*profile) return run_profile(with_format("csv"));
    if (*validate) return run_validate(with_format("json"));
  } catch (const dp::DomainError& e) {
    return fail("validation", e.what(), exit_invalid);
  } catch (const dp::QuadratureError& e) {
    return fail("computation", e.what(), exit_computation);
  } catch (const std::exception& e) {
    return fail("computation", e.what(), exit_computation);
  }
  return exit_invalid;
}
