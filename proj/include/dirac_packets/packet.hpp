#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "bessel.hpp"
#include "error.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"
#include "spinor.hpp"

namespace dirac_packets {

// Selects one member of the Gaussian state family: the momentum profile has
// width n mc.
struct PacketSpec {
  double n = 1.0;

  void validate() const {
    if (!(n > 0.0) || !std::isfinite(n))
      throw DomainError("packet width n must be positive and finite, got " + std::to_string(n));
  }
};

// f_n(p) = (n mc)^{-3/2} pi^{-3/4} exp(-p^2 / 2 n^2 m^2 c^2)
inline double momentum_profile(const PacketSpec& spec, double p) {
  const double n = spec.n;
  return std::pow(n, -1.5) * std::pow(std::numbers::pi, -0.75) * std::exp(-p * p / (2.0 * n * n));
}

struct QuadratureConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-13;
  double p_max = 0.0;  // 0 selects n * sqrt(2 ln(1/abs_tol))
  double r_max = 0.0;  // 0 selects 20 max(1, 1/n)
  int nodes_1d = 6;    // Gauss-Legendre nodes per grid interval in radial integrals
  int grid_nodes = 2048;
  int angular_nodes = 24;  // Gauss-Legendre nodes in theta for (r, theta) integrals
  int max_panels = 200000;  // adaptive refinement budget per integral
  std::size_t mc_samples = 200000;
  std::uint64_t seed = 20201125;
  int threads = 1;

  void validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
      throw DomainError("quadrature tolerances must be positive");
    if (p_max < 0.0 || r_max < 0.0) throw DomainError("cutoffs must be non-negative");
    if (nodes_1d < 2 || nodes_1d > 64) throw DomainError("nodes_1d must lie in [2, 64]");
    if (grid_nodes < 16) throw DomainError("grid_nodes must be at least 16");
    if (angular_nodes < 4) throw DomainError("angular_nodes must be at least 4");
    if (mc_samples < 100) throw DomainError("mc_samples must be at least 100");
    if (threads < 1) throw DomainError("threads must be at least 1");
    if (max_panels < 1) throw DomainError("max_panels must be at least 1");
  }

  double momentum_cutoff(const PacketSpec& spec) const {
    const double floor = spec.n * std::sqrt(2.0 * std::log(1.0 / abs_tol));
    return std::max(p_max, floor);
  }

  double radial_cutoff(const PacketSpec& spec) const {
    const double floor = 20.0 * std::max(1.0, 1.0 / spec.n);
    return std::max(r_max, floor);
  }
};

// Tabulated radial functions of psi_n. In position space
//   psi = (a(r), 0, i b(r) cos(theta), i b(r) sin(theta) e^{i phi}),
// and the energy-weighted pair (a_E, b_E) gives d psi/dt at t = 0.
// Nodes follow r = L sinh(t) with t uniform, resolving both the core (width
// ~1/n) and the Compton-scale tails; values between nodes are cubic Hermite
// interpolants built from exact derivatives.
class RadialProfiles {
 public:
  struct Sample {
    double a = 0, da = 0, b = 0, db = 0;
    double a_e = 0, da_e = 0, b_e = 0, db_e = 0;
  };

  RadialProfiles() = default;
  RadialProfiles(double n, double r_max, double scale, std::vector<Sample> samples,
                 double transform_error)
      : n_(n),
        r_max_(r_max),
        scale_(scale),
        t_max_(std::asinh(r_max / scale)),
        dt_(t_max_ / static_cast<double>(samples.size() - 1)),
        samples_(std::move(samples)),
        transform_error_(transform_error) {
    radii_.resize(samples_.size());
    for (std::size_t i = 0; i < radii_.size(); ++i)
      radii_[i] = scale_ * std::sinh(dt_ * static_cast<double>(i));
    radii_.back() = r_max_;
  }

  double n() const { return n_; }
  double r_max() const { return r_max_; }
  double scale() const { return scale_; }
  std::size_t size() const { return samples_.size(); }
  double radius(std::size_t i) const { return radii_[i]; }
  const Sample& node(std::size_t i) const { return samples_[i]; }
  const std::vector<double>& radii() const { return radii_; }
  // Largest absolute error estimate reported by the momentum quadratures.
  double transform_error() const { return transform_error_; }

  void check_radius(double r) const {
    if (!(r <= r_max_))
      throw DomainError("radius " + std::to_string(r) + " exceeds r_max = " +
                        std::to_string(r_max_));
  }

  std::size_t interval(double r) const {
    const double t = std::asinh(r / scale_);
    auto i = static_cast<std::size_t>(std::clamp(std::floor(t / dt_), 0.0,
                                                 static_cast<double>(size() - 2)));
    while (i > 0 && r < radii_[i]) --i;
    while (i + 2 < size() && r > radii_[i + 1]) ++i;
    return i;
  }

  // Interpolated values and first derivatives at radius r.
  Sample at(double r) const {
    check_radius(r);
    const std::size_t i = interval(r);
    return hermite(i, r);
  }

  // Same interpolant restricted to every `stride`-th node; used for error
  // estimates by comparing against the full-resolution interpolant.
  Sample at_coarse(double r, std::size_t stride) const {
    check_radius(r);
    std::size_t i = interval(r);
    std::size_t lo = (i / stride) * stride;
    std::size_t hi = std::min(lo + stride, size() - 1);
    return hermite_between(lo, hi, r);
  }

 private:
  Sample hermite(std::size_t i, double r) const { return hermite_between(i, i + 1, r); }

  Sample hermite_between(std::size_t i, std::size_t j, double r) const {
    const double h = radii_[j] - radii_[i];
    const double s = (r - radii_[i]) / h;
    const double s2 = s * s, s3 = s2 * s;
    const double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s;
    const double h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;
    const double d00 = (6 * s2 - 6 * s) / h, d10 = 3 * s2 - 4 * s + 1;
    const double d01 = (-6 * s2 + 6 * s) / h, d11 = 3 * s2 - 2 * s;
    const Sample& p = samples_[i];
    const Sample& q = samples_[j];
    auto value = [&](double y0, double m0, double y1, double m1) {
      return h00 * y0 + h10 * h * m0 + h01 * y1 + h11 * h * m1;
    };
    auto deriv = [&](double y0, double m0, double y1, double m1) {
      return d00 * y0 + d10 * m0 + d01 * y1 + d11 * m1;
    };
    Sample out;
    out.a = value(p.a, p.da, q.a, q.da);
    out.da = deriv(p.a, p.da, q.a, q.da);
    out.b = value(p.b, p.db, q.b, q.db);
    out.db = deriv(p.b, p.db, q.b, q.db);
    out.a_e = value(p.a_e, p.da_e, q.a_e, q.da_e);
    out.da_e = deriv(p.a_e, p.da_e, q.a_e, q.da_e);
    out.b_e = value(p.b_e, p.db_e, q.b_e, q.db_e);
    out.db_e = deriv(p.b_e, p.db_e, q.b_e, q.db_e);
    return out;
  }

  double n_ = 1.0;
  double r_max_ = 0.0;
  double scale_ = 1.0;
  double t_max_ = 0.0;
  double dt_ = 0.0;
  std::vector<Sample> samples_;
  std::vector<double> radii_;
  double transform_error_ = 0.0;
};

namespace detail {

// 4 pi / (2 pi)^{3/2}: the solid-angle factor of the plane-wave expansion.
inline const double transform_prefactor = 4.0 * std::numbers::pi / std::pow(2.0 * std::numbers::pi, 1.5);

// All eight transforms (a, a', b, b' and their energy-weighted twins) at one radius.
inline RadialProfiles::Sample transforms_at(const PacketSpec& spec, double r, double p_max,
                                            const quadrature::AdaptiveOptions& opt,
                                            double& error_out) {
  auto integrand = [&](double p) {
    const double e = energy(p);
    const double f = momentum_profile(spec, p);
    const double wa = p * p * f * std::sqrt((e + 1.0) / (2.0 * e));
    const double wb = p * p * f * p / std::sqrt(2.0 * e * (e + 1.0));
    const auto j = bessel::evaluate(p * r);
    const double a = wa * j.j0;
    const double da = -wa * p * j.j1;
    const double b = wb * j.j1;
    const double db = wb * p * j.j1_prime;
    return quadrature::Values<8>{a, da, b, db, e * a, e * da, e * b, e * db};
  };

  // Panels no wider than half a Bessel period or half the Gaussian width.
  double step = 0.5 * spec.n;
  if (r > 0.0) step = std::min(step, std::numbers::pi / r);
  const auto panels = static_cast<std::size_t>(std::ceil(p_max / step));
  std::vector<double> breaks(panels + 1);
  for (std::size_t k = 0; k <= panels; ++k)
    breaks[k] = p_max * static_cast<double>(k) / static_cast<double>(panels);

  const auto res = quadrature::integrate_adaptive<8>(integrand, breaks, opt);
  const double c = transform_prefactor;
  error_out = 0.0;
  for (double e : res.error) error_out = std::max(error_out, c * e);
  const auto& v = res.value;
  return {c * v[0], c * v[1], c * v[2], c * v[3], c * v[4], c * v[5], c * v[6], c * v[7]};
}

}  // namespace detail

// Tabulates a, b, a_E, b_E (and their r-derivatives) from the spherical-Bessel
// transforms
//   a(r) = sqrt(2/pi) int p^2 f(p) sqrt((E+1)/2E) j0(pr) dp
//   b(r) = sqrt(2/pi) int p^2 f(p) p / sqrt(2E(E+1)) j1(pr) dp.
inline RadialProfiles radial_profiles(const PacketSpec& spec, const QuadratureConfig& cfg) {
  spec.validate();
  cfg.validate();
  const double p_max = cfg.momentum_cutoff(spec);
  const double r_max = cfg.radial_cutoff(spec);
  const double scale = 0.25 * std::min(1.0, 1.0 / spec.n);
  const auto count = static_cast<std::size_t>(cfg.grid_nodes);
  const double dt = std::asinh(r_max / scale) / static_cast<double>(count - 1);

  quadrature::AdaptiveOptions opt;
  opt.rel_tol = cfg.rel_tol;
  opt.abs_tol = cfg.abs_tol;
  opt.max_panels = cfg.max_panels;

  std::vector<RadialProfiles::Sample> samples(count);
  std::vector<double> errors(count, 0.0);
  parallel_for(count, cfg.threads, [&](std::size_t i) {
    const double r = (i + 1 == count) ? r_max : scale * std::sinh(dt * static_cast<double>(i));
    samples[i] = detail::transforms_at(spec, r, p_max, opt, errors[i]);
  });
  const double worst = *std::max_element(errors.begin(), errors.end());
  return RadialProfiles(spec.n, r_max, scale, std::move(samples), worst);
}

// psi(x) from interpolated radial values s = profiles.at(|x|).
inline Spinor4 psi_from_sample(const RadialProfiles::Sample& s, const Vec3& x) {
  const double r = x.norm();
  Spinor4 psi;
  psi[0] = s.a;
  if (r > 0.0) {
    const complex i(0.0, 1.0);
    const double c = s.b / r;
    psi[2] = i * c * x.z;
    psi[3] = i * c * complex(x.x, x.y);
  }
  return psi;
}

// Every momentum mode carries exp(-i E t), so d psi/dt at t = 0 is the same
// synthesis with weight -i E(p).
inline Spinor4 psi_dot_from_sample(const RadialProfiles::Sample& s, const Vec3& x) {
  const double r = x.norm();
  Spinor4 psi;
  psi[0] = complex(0.0, -s.a_e);
  if (r > 0.0) {
    const double c = s.b_e / r;
    psi[2] = c * x.z;
    psi[3] = c * complex(x.x, x.y);
  }
  return psi;
}

// Cartesian derivatives d psi / dx_k from the radial derivative and exact
// angular factors.
inline std::array<Spinor4, 3> psi_gradient_from_sample(const RadialProfiles::Sample& s,
                                                       const Vec3& x) {
  const double r = x.norm();
  const complex i(0.0, 1.0);
  std::array<Spinor4, 3> g;
  if (r == 0.0) {
    // b(r)/r -> b'(0); the a-gradient vanishes by symmetry.
    g[0][3] = i * s.db;
    g[1][3] = i * complex(0.0, 1.0) * s.db;
    g[2][2] = i * s.db;
    return g;
  }
  const double c = s.b / r;
  const double dc = (s.db - c) / r;  // d/dr (b/r)
  const complex w(x.x, x.y);
  for (int k = 0; k < 3; ++k) {
    const double xk_r = x[k] / r;
    g[k][0] = s.da * xk_r;
    g[k][2] = i * (dc * xk_r * x.z + (k == 2 ? c : 0.0));
    const complex dw = k == 0 ? complex(1.0, 0.0) : (k == 1 ? complex(0.0, 1.0) : complex(0.0));
    g[k][3] = i * (dc * xk_r * w + c * dw);
  }
  return g;
}

// The three evaluators below throw DomainError when |x| > r_max.
inline Spinor4 evaluate_psi(const RadialProfiles& prof, const Vec3& x) {
  return psi_from_sample(prof.at(x.norm()), x);
}

inline Spinor4 evaluate_psi_dot(const RadialProfiles& prof, const Vec3& x) {
  return psi_dot_from_sample(prof.at(x.norm()), x);
}

inline std::array<Spinor4, 3> psi_gradient(const RadialProfiles& prof, const Vec3& x) {
  return psi_gradient_from_sample(prof.at(x.norm()), x);
}

}  // namespace dirac_packets
