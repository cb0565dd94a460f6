#pragma once

// The oracle comparison suite behind `validate`: every primary computation
// that has an independent route is checked against it.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "densities.hpp"
#include "observables.hpp"
#include "oracle.hpp"
#include "packet.hpp"

namespace dirac_packets::validation {

struct Options {
  std::string only;  // a single group name, or empty for all
  std::uint64_t seed = 7;
  int psi_points = 50;
  int gh_nodes = 160;
};

inline const std::vector<std::string>& groups() {
  static const std::vector<std::string> g = {"normalization", "bilinears",       "psi_reconstruction",
                                             "psi_dot",       "gordon",          "projector_split",
                                             "parseval",      "magnetic_moment", "monte_carlo"};
  return g;
}

inline std::string io_name(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

// Uniform points in a ball of the given radius.
inline std::vector<Vec3> random_points(std::mt19937_64& rng, int count, double radius) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Vec3> pts;
  while (static_cast<int>(pts.size()) < count) {
    const Vec3 x{u(rng), u(rng), u(rng)};
    if (x.norm() <= 1.0) pts.push_back(radius * x);
  }
  return pts;
}

inline double relative_spinor_deviation(const Spinor4& value, const Spinor4& reference) {
  return std::sqrt(norm_squared(value - reference) / norm_squared(reference));
}

inline oracle::OracleReport worst_case(std::string name, double worst, double tol, std::size_t samples,
                                       std::uint64_t seed) {
  oracle::OracleReport r;
  r.quantity = std::move(name);
  r.primary = worst;
  r.oracle = 0.0;
  r.tolerance = tol;
  r.criterion = "absolute";
  r.samples = samples;
  r.seed = seed;
  return r;
}

inline std::vector<oracle::OracleReport> run(const QuadratureConfig& cfg, const Options& opt = {}) {
  if (!opt.only.empty() && std::find(groups().begin(), groups().end(), opt.only) == groups().end())
    throw DomainError("unknown validation group '" + opt.only + "'");
  auto want = [&](const std::string& g) { return opt.only.empty() || opt.only == g; };
  std::vector<oracle::OracleReport> out;
  std::mt19937_64 rng(opt.seed);

  const PacketSpec unit{1.0};
  RadialProfiles unit_prof;
  auto unit_profiles = [&]() -> const RadialProfiles& {
    if (unit_prof.size() == 0) unit_prof = radial_profiles(unit, cfg);
    return unit_prof;
  };

  if (want("normalization")) {
    for (double n : {0.01, 0.1, 1.0, 10.0, 100.0}) {
      const auto prof = radial_profiles({n}, cfg);
      oracle::OracleReport r;
      r.quantity = "norm(n=" + io_name(n) + ")";
      r.primary = norm(prof, cfg).value;
      r.oracle = 1.0;
      r.tolerance = 1e-6;
      r.criterion = "absolute";
      out.push_back(r);
    }
  }

  if (want("bilinears")) {
    std::uniform_real_distribution<double> u(-1.0, 1.0), mag(0.0, 50.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      Vec3 dir{u(rng), u(rng), u(rng)};
      dir = (1.0 / std::max(dir.norm(), 1e-12)) * dir;
      const double p = mag(rng);
      const Momentum3 mom{p * dir.x, p * dir.y, p * dir.z};
      worst = std::max({worst, std::abs(bilinear_sigma_z(mom) - bilinear_sigma_z_matrix(mom)),
                        std::abs(bilinear_gamma0_sigma_z(mom) - bilinear_gamma0_sigma_z_matrix(mom)),
                        std::abs(norm_squared(u1(mom)) - 1.0)});
    }
    out.push_back(worst_case("bilinear_closed_vs_matrix_max_abs_dev", worst, 1e-12, 1000, opt.seed));
  }

  if (want("psi_reconstruction")) {
    for (double n : {0.5, 2.0}) {
      const auto prof = radial_profiles({n}, cfg);
      double worst = 0.0;
      for (const auto& x : random_points(rng, opt.psi_points, 1.5 / n))
        worst = std::max(worst, relative_spinor_deviation(evaluate_psi(prof, x),
                                                          oracle::psi_direct({n}, x, opt.gh_nodes)));
      out.push_back(worst_case("psi_radial_vs_direct_max_rel_dev(n=" + io_name(n) + ")", worst, 1e-6,
                               static_cast<std::size_t>(opt.psi_points), opt.seed));
    }
  }

  if (want("psi_dot")) {
    const auto& prof = unit_profiles();
    double worst = 0.0;
    for (const auto& x : random_points(rng, 20, 1.5))
      worst = std::max(worst, relative_spinor_deviation(evaluate_psi_dot(prof, x),
                                                        oracle::psi_direct(unit, x, opt.gh_nodes, true)));
    out.push_back(worst_case("psi_dot_radial_vs_direct_max_rel_dev(n=1)", worst, 1e-6, 20, opt.seed));
  }

  if (want("gordon")) {
    const auto& prof = unit_profiles();
    double worst = 0.0;
    int used = 0;
    for (const auto& x : random_points(rng, 200, 3.0)) {
      const Vec3 j = current_density(prof, x);
      if (std::hypot(x.x, x.y) < 0.2 * x.norm()) continue;  // J vanishes on the axis
      worst = std::max(worst, (gordon_terms(prof, x).sum() - j).norm() / j.norm());
      if (++used == 50) break;
    }
    out.push_back(worst_case("gordon_sum_vs_current_max_rel_dev(n=1)", worst, 1e-5, 50, opt.seed));
  }

  if (want("projector_split")) {
    for (double n : {0.1, 1.0, 10.0}) {
      const PacketSpec spec{n};
      const auto prof = radial_profiles(spec, cfg);
      const auto split = oracle::projector_split(spec, cfg);
      oracle::OracleReport r;
      r.quantity = "mean_square_radius_vs_projector_split(n=" + io_name(n) + ")";
      r.primary = mean_square_radius(prof, cfg).value;
      r.oracle = split.xPx + split.xQx;
      r.tolerance = 1e-4;
      out.push_back(r);
      oracle::OracleReport q;
      q.quantity = "xQx_closed_vs_matrix_projector(n=" + io_name(n) + ")";
      q.primary = x_Qx(spec, cfg).value;
      q.oracle = split.xQx;
      q.tolerance = 1e-6;
      out.push_back(q);
    }
  }

  if (want("parseval")) {
    for (double n : {0.1, 1.0, 10.0}) {
      const PacketSpec spec{n};
      const auto prof = radial_profiles(spec, cfg);
      oracle::OracleReport l;
      l.quantity = "L_spin_momentum_vs_position(n=" + io_name(n) + ")";
      l.primary = angular_momentum_spin(spec, cfg).value;
      l.oracle = angular_momentum_spin_position(prof, cfg).value;
      l.tolerance = 1e-4;
      out.push_back(l);
      oracle::OracleReport e;
      e.quantity = "energy_momentum_vs_position(n=" + io_name(n) + ")";
      e.primary = energy_total(spec, cfg).value;
      e.oracle = energy_total_position(prof, cfg).value;
      e.tolerance = 1e-4;
      out.push_back(e);
    }
  }

  if (want("magnetic_moment")) {
    oracle::OracleReport r;
    r.quantity = "mu_total_radial_vs_5d(n=1)";
    r.primary = magnetic_moment_total(unit_profiles(), cfg).value;
    r.oracle = oracle::magnetic_moment_5d(unit, cfg);
    r.tolerance = 1e-3;
    r.criterion = "absolute";
    out.push_back(r);
  }

  if (want("monte_carlo")) {
    const auto mc = oracle::monte_carlo_moment(unit_profiles(), cfg.mc_samples, opt.seed);
    oracle::OracleReport r;
    r.quantity = "mu_total_radial_vs_monte_carlo(n=1)";
    r.primary = magnetic_moment_total(unit_profiles(), cfg).value;
    r.oracle = mc.value;
    r.oracle_error = mc.std_error;
    r.tolerance = 3.0;
    r.criterion = "sigma";
    r.samples = mc.samples;
    r.seed = mc.seed;
    out.push_back(r);
  }
  return out;
}

}  // namespace dirac_packets::validation
