#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "densities.hpp"
#include "error.hpp"
#include "observables.hpp"
#include "packet.hpp"
#include "parallel.hpp"

namespace dirac_packets {

enum class Spacing { log, linear };

struct SweepSpec {
  double n_min = 0.01;
  double n_max = 100.0;
  int points = 25;
  Spacing spacing = Spacing::log;
  std::vector<std::string> observables;  // empty: all
  QuadratureConfig cfg;

  void validate() const {
    if (!(n_min > 0.0)) throw DomainError("sweep n_min must be positive");
    if (points < 1) throw DomainError("sweep needs at least one point");
    if (points >= 2 && !(n_max > n_min))
      throw DomainError("sweep with two or more points needs n_min < n_max");
    cfg.validate();
  }

  std::vector<double> grid() const {
    std::vector<double> n(static_cast<std::size_t>(points));
    if (points == 1) {
      n[0] = n_min;
      return n;
    }
    for (int i = 0; i < points; ++i) {
      const double t = static_cast<double>(i) / (points - 1);
      n[static_cast<std::size_t>(i)] =
          spacing == Spacing::log ? n_min * std::pow(n_max / n_min, t) : n_min + (n_max - n_min) * t;
    }
    n.back() = n_max;
    return n;
  }
};

struct SweepRow {
  ObservableSet values;
  std::string error;  // empty when the row succeeded

  bool ok() const { return error.empty(); }
};

// One ObservableSet per grid value, ordered by n. Rows run on the worker pool
// (each row single-threaded); a failing row is annotated and the sweep goes on.
inline std::vector<SweepRow> run_sweep(const SweepSpec& sweep) {
  sweep.validate();
  const auto grid = sweep.grid();
  std::vector<SweepRow> rows(grid.size());
  QuadratureConfig row_cfg = sweep.cfg;
  const int threads = sweep.cfg.threads;
  if (grid.size() > 1) row_cfg.threads = 1;
  parallel_for(grid.size(), grid.size() > 1 ? threads : 1, [&](std::size_t i) {
    rows[i].values.n = grid[i];
    try {
      rows[i].values = compute_observables(PacketSpec{grid[i]}, row_cfg, sweep.observables);
    } catch (const QuadratureError& e) {
      rows[i].error = e.what();
    }
  });
  return rows;
}

struct SlicePoint {
  double x = 0.0, y = 0.0;
  double jx = 0.0, jy = 0.0;
  double j_abs = 0.0;
  double rho_q = 0.0;
};

// Current density on the z = 0 plane.
struct SliceTable {
  double n = 0.0;
  double half_extent = 0.0;
  int resolution = 0;
  double compton_radius = 1.0;
  double peak_current = 0.0;
  std::vector<SlicePoint> points;  // row-major, y outer

  // |J|-weighted mean distance from the z axis: the size of the circulating region.
  double circulation_radius() const {
    double num = 0.0, den = 0.0;
    for (const auto& p : points) {
      num += p.j_abs * std::hypot(p.x, p.y);
      den += p.j_abs;
    }
    return den > 0.0 ? num / den : 0.0;
  }
};

inline SliceTable current_slice(const RadialProfiles& prof, double half_extent, int resolution) {
  if (resolution < 8) throw DomainError("slice resolution must be at least 8");
  if (!(half_extent > 0.0)) throw DomainError("slice half-extent must be positive");
  if (half_extent * std::sqrt(2.0) > prof.r_max())
    throw DomainError("slice corners at radius " + std::to_string(half_extent * std::sqrt(2.0)) +
                      " exceed r_max = " + std::to_string(prof.r_max()));
  SliceTable t;
  t.n = prof.n();
  t.half_extent = half_extent;
  t.resolution = resolution;
  t.points.reserve(static_cast<std::size_t>(resolution) * resolution);
  const double step = 2.0 * half_extent / (resolution - 1);
  for (int iy = 0; iy < resolution; ++iy) {
    for (int ix = 0; ix < resolution; ++ix) {
      SlicePoint p;
      p.x = -half_extent + ix * step;
      p.y = -half_extent + iy * step;
      const Vec3 pos{p.x, p.y, 0.0};
      const Vec3 j = current_density(prof, pos);
      p.jx = j.x;
      p.jy = j.y;
      p.j_abs = std::hypot(j.x, j.y);
      p.rho_q = charge_density(prof, pos);
      t.peak_current = std::max(t.peak_current, p.j_abs);
      t.points.push_back(p);
    }
  }
  return t;
}

inline SliceTable current_slice(const PacketSpec& spec, const QuadratureConfig& cfg, double half_extent,
                                int resolution) {
  if (resolution < 8) throw DomainError("slice resolution must be at least 8");
  return current_slice(radial_profiles(spec, cfg), half_extent, resolution);
}

}  // namespace dirac_packets
