#pragma once

#include <cmath>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "densities.hpp"
#include "packet.hpp"
#include "quadrature.hpp"
#include "units.hpp"

namespace dirac_packets {

struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

namespace detail {

inline constexpr double four_pi = 4.0 * std::numbers::pi;

// int_0^{r_max} f(sample(r), r) dr with Gauss-Legendre on each grid interval.
// The integrand is polynomial on each interval for the products used here,
// so the only error is the interpolant's; it is estimated by repeating the
// integral with the Hermite interpolant on every second node (h^4 scaling).
template <class F>
Estimate radial_quadrature(const RadialProfiles& prof, int order, F&& f) {
  const auto gl = quadrature::gauss_legendre(order);
  double fine = 0.0, coarse = 0.0;
  for (std::size_t i = 0; i + 1 < prof.size(); ++i) {
    const double lo = prof.radius(i), hi = prof.radius(i + 1);
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    double sf = 0.0, sc = 0.0;
    for (int k = 0; k < order; ++k) {
      const double r = mid + half * gl.nodes[k];
      sf += gl.weights[k] * f(prof.at(r), r);
      sc += gl.weights[k] * f(prof.at_coarse(r, 2), r);
    }
    fine += half * sf;
    coarse += half * sc;
  }
  return {fine, std::abs(fine - coarse) / 15.0};
}

// int d^3x f(sample(|x|), x) for an integrand independent of phi, evaluated on
// the phi = 0 half-plane: 2 pi int dr r^2 int dtheta sin(theta) f.
template <class F>
Estimate polar_quadrature(const RadialProfiles& prof, int radial_order, int angular_order, F&& f) {
  const auto gl = quadrature::gauss_legendre(radial_order);
  const auto gt = quadrature::gauss_legendre(angular_order);
  std::vector<double> sin_t(angular_order), cos_t(angular_order), w_t(angular_order);
  for (int j = 0; j < angular_order; ++j) {
    const double theta = 0.5 * std::numbers::pi * (1.0 + gt.nodes[j]);
    sin_t[j] = std::sin(theta);
    cos_t[j] = std::cos(theta);
    w_t[j] = 0.5 * std::numbers::pi * gt.weights[j] * sin_t[j];
  }
  double fine = 0.0, coarse = 0.0;
  for (std::size_t i = 0; i + 1 < prof.size(); ++i) {
    const double lo = prof.radius(i), hi = prof.radius(i + 1);
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (int k = 0; k < radial_order; ++k) {
      const double r = mid + half * gl.nodes[k];
      const auto s_fine = prof.at(r);
      const auto s_coarse = prof.at_coarse(r, 2);
      double af = 0.0, ac = 0.0;
      for (int j = 0; j < angular_order; ++j) {
        const Vec3 x{r * sin_t[j], 0.0, r * cos_t[j]};
        af += w_t[j] * f(s_fine, x);
        ac += w_t[j] * f(s_coarse, x);
      }
      const double w = 2.0 * std::numbers::pi * half * gl.weights[k] * r * r;
      fine += w * af;
      coarse += w * ac;
    }
  }
  return {fine, std::abs(fine - coarse) / 15.0};
}

// 4 pi int_0^{p_max} p^2 |f_n(p)|^2 g(p) dp, adaptively.
template <class G>
Estimate momentum_quadrature(const PacketSpec& spec, const QuadratureConfig& cfg, G&& g) {
  const double p_max = cfg.momentum_cutoff(spec);
  const auto panels = static_cast<std::size_t>(std::ceil(p_max / (0.5 * spec.n)));
  std::vector<double> breaks(panels + 1);
  for (std::size_t k = 0; k <= panels; ++k)
    breaks[k] = p_max * static_cast<double>(k) / static_cast<double>(panels);
  quadrature::AdaptiveOptions opt;
  opt.rel_tol = cfg.rel_tol;
  opt.abs_tol = cfg.abs_tol;
  opt.max_panels = cfg.max_panels;
  const auto res = quadrature::integrate_adaptive_scalar(
      [&](double p) {
        const double f = momentum_profile(spec, p);
        return four_pi * p * p * f * f * g(p);
      },
      breaks, opt);
  return {res.value[0], res.error[0]};
}

inline Estimate scaled(Estimate e, double s) { return {e.value * s, std::abs(s) * e.error}; }

}  // namespace detail

// Total probability 4 pi int (a^2 + b^2) r^2 dr; the charge is -e times this.
inline Estimate norm(const RadialProfiles& prof, const QuadratureConfig& cfg) {
  return detail::radial_quadrature(prof, cfg.nodes_1d, [](const auto& s, double r) {
    return detail::four_pi * (s.a * s.a + s.b * s.b) * r * r;
  });
}

inline Estimate total_charge(const RadialProfiles& prof, const QuadratureConfig& cfg) {
  return detail::scaled(norm(prof, cfg), -units::charge);
}

// <|x|^2> = 4 pi int (a^2 + b^2) r^4 dr, in Compton radii squared.
inline Estimate mean_square_radius(const RadialProfiles& prof, const QuadratureConfig& cfg) {
  return detail::radial_quadrature(prof, cfg.nodes_1d, [](const auto& s, double r) {
    return detail::four_pi * (s.a * s.a + s.b * s.b) * r * r * r * r;
  });
}

// <z>, which vanishes for these parity-symmetric densities.
inline Estimate center_z(const RadialProfiles& prof, const QuadratureConfig& cfg) {
  return detail::polar_quadrature(prof, cfg.nodes_1d, cfg.angular_nodes,
                                  [](const auto& s, const Vec3& x) { return (s.a * s.a + s.b * s.b) * x.z; });
}

// z-moment (1/2c) int (x cross J)_z d^3x = -e (8 pi / 3) int a b r^3 dr, in
// internal units. The electron moment points along -z.
inline Estimate magnetic_moment_z(const RadialProfiles& prof, const QuadratureConfig& cfg) {
  return detail::radial_quadrature(prof, cfg.nodes_1d, [](const auto& s, double r) {
    return -units::charge * (8.0 * std::numbers::pi / 3.0) * s.a * s.b * r * r * r;
  });
}

// Magnitude of the total moment (anti-parallel to the spin) in Bohr magnetons.
inline Estimate magnetic_moment_total(const RadialProfiles& prof, const QuadratureConfig& cfg) {
  const auto m = magnetic_moment_z(prof, cfg);
  return {units::to_bohr_magnetons(-m.value), units::to_bohr_magnetons(m.error)};
}

// Spin moment -(e hbar / 2mc) int |f|^2 u1^dagger gamma0 sigma_z u1 d^3p, reported
// as a magnitude in Bohr magnetons.
inline Estimate magnetic_moment_spin(const PacketSpec& spec, const QuadratureConfig& cfg) {
  const auto m = detail::momentum_quadrature(
      spec, cfg, [](double p) { return units::bohr_magneton * bilinear_gamma0_sigma_z_angular_average(p); });
  return {units::to_bohr_magnetons(m.value), units::to_bohr_magnetons(m.error)};
}

// L_z = int (x cross G)_z d^3x over the (r, theta) half-plane, in units of hbar/2.
inline Estimate angular_momentum_total(const RadialProfiles& prof, const QuadratureConfig& cfg) {
  const auto l = detail::polar_quadrature(
      prof, cfg.nodes_1d, cfg.angular_nodes, [](const auto& s, const Vec3& x) {
        const Vec3 g = momentum_density(psi_from_sample(s, x), psi_gradient_from_sample(s, x));
        return x.x * g.y - x.y * g.x;
      });
  return {units::to_hbar_halves(l.value), units::to_hbar_halves(l.error)};
}

// Full vector int x cross G d^3x by (r, theta, phi) quadrature, in units of hbar/2.
inline Vec3 angular_momentum_vector(const RadialProfiles& prof, const QuadratureConfig& cfg,
                                    int phi_nodes = 16) {
  const auto gl = quadrature::gauss_legendre(cfg.nodes_1d);
  const auto gt = quadrature::gauss_legendre(cfg.angular_nodes);
  Vec3 total;
  for (std::size_t i = 0; i + 1 < prof.size(); ++i) {
    const double lo = prof.radius(i), hi = prof.radius(i + 1);
    for (int k = 0; k < cfg.nodes_1d; ++k) {
      const double r = 0.5 * (lo + hi) + 0.5 * (hi - lo) * gl.nodes[k];
      const auto s = prof.at(r);
      for (int j = 0; j < cfg.angular_nodes; ++j) {
        const double theta = 0.5 * std::numbers::pi * (1.0 + gt.nodes[j]);
        for (int q = 0; q < phi_nodes; ++q) {
          const double phi = 2.0 * std::numbers::pi * (q + 0.5) / phi_nodes;
          const Vec3 x{r * std::sin(theta) * std::cos(phi), r * std::sin(theta) * std::sin(phi),
                       r * std::cos(theta)};
          const Vec3 g = momentum_density(psi_from_sample(s, x), psi_gradient_from_sample(s, x));
          const double w = 0.5 * (hi - lo) * gl.weights[k] * r * r * 0.5 * std::numbers::pi *
                           gt.weights[j] * std::sin(theta) * 2.0 * std::numbers::pi / phi_nodes;
          total = total + w * cross(x, g);
        }
      }
    }
  }
  return units::to_hbar_halves(1.0) * total;
}

// Spin angular momentum (hbar/2) int |f|^2 u1^dagger sigma_z u1 d^3p, in units of hbar/2.
inline Estimate angular_momentum_spin(const PacketSpec& spec, const QuadratureConfig& cfg) {
  const auto l = detail::momentum_quadrature(
      spec, cfg, [](double p) { return 0.5 * units::hbar * bilinear_sigma_z_angular_average(p); });
  return {units::to_hbar_halves(l.value), units::to_hbar_halves(l.error)};
}

// Same quantity from the position-space density (hbar/2) psi^dagger sigma_z psi.
inline Estimate angular_momentum_spin_position(const RadialProfiles& prof, const QuadratureConfig& cfg) {
  const auto& d = DiracMatrices::get();
  const auto l = detail::polar_quadrature(
      prof, cfg.nodes_1d, cfg.angular_nodes, [&](const auto& s, const Vec3& x) {
        const auto psi = psi_from_sample(s, x);
        return 0.5 * units::hbar * sandwich(psi, d.sigma[2], psi).real();
      });
  return {units::to_hbar_halves(l.value), units::to_hbar_halves(l.error)};
}

// int |f|^2 E(p) d^3p, in mc^2.
inline Estimate energy_total(const PacketSpec& spec, const QuadratureConfig& cfg) {
  return detail::momentum_quadrature(spec, cfg, [](double p) { return energy(p); });
}

// Integral of the spatial (mass plus gradient) form of the energy density.
inline Estimate energy_total_position(const RadialProfiles& prof, const QuadratureConfig& cfg) {
  return detail::polar_quadrature(prof, cfg.nodes_1d, cfg.angular_nodes, [](const auto& s, const Vec3& x) {
    return energy_density_spatial(psi_from_sample(s, x), psi_gradient_from_sample(s, x));
  });
}

// Negative-frequency contribution to the mean square radius:
//   int |f|^2 (hbar c / 2E)^2 [3 - 2p^2c^2/(E(E+mc^2)) + p^4c^4/(E(E+mc^2))^2] d^3p.
inline double x_qx_integrand(double p) {
  const double e = energy(p);
  const double k = p * p / (e * (e + 1.0));
  const double scale = 1.0 / (2.0 * e);
  return scale * scale * (3.0 - 2.0 * k + k * k);
}

inline Estimate x_Qx(const PacketSpec& spec, const QuadratureConfig& cfg) {
  return detail::momentum_quadrature(spec, cfg, x_qx_integrand);
}

// Positive-frequency remainder <x.Px> = <|x|^2> - <x.Qx>.
inline Estimate x_Px(const Estimate& mean_square, const Estimate& xqx) {
  return {mean_square.value - xqx.value, mean_square.error + xqx.error};
}

// Everything reported for one n. Moments are magnitudes in Bohr magnetons,
// angular momenta in hbar/2, energy in mc^2, radii in Compton radii squared.
struct ObservableSet {
  double n = 0.0;
  Estimate total_charge;
  Estimate mean_square_radius;
  Estimate mu_total;
  Estimate mu_spin;
  Estimate L_total;
  Estimate L_spin;
  Estimate energy_total;
  Estimate xQx;
  Estimate xPx;
  std::set<std::string> computed;

  bool has(const std::string& key) const { return computed.count(key) != 0; }
};

inline const std::vector<std::string>& observable_keys() {
  static const std::vector<std::string> keys = {
      "total_charge", "mean_square_radius", "mu_total", "mu_spin", "L_total",
      "L_spin",       "energy_total",       "xQx",      "xPx"};
  return keys;
}

// Computes the requested observables (all of them when `keys` is empty).
// Profiles are built only when a position-space quantity is requested.
inline ObservableSet compute_observables(const PacketSpec& spec, const QuadratureConfig& cfg,
                                         const std::vector<std::string>& keys = {}) {
  spec.validate();
  cfg.validate();
  std::set<std::string> want(keys.begin(), keys.end());
  if (want.empty()) want.insert(observable_keys().begin(), observable_keys().end());
  for (const auto& k : want) {
    bool known = false;
    for (const auto& valid : observable_keys()) known = known || valid == k;
    if (!known) throw DomainError("unknown observable '" + k + "'");
  }
  if (want.count("xPx")) {
    want.insert("mean_square_radius");
    want.insert("xQx");
  }

  ObservableSet out;
  out.n = spec.n;
  out.computed = want;
  const bool needs_profiles = want.count("total_charge") || want.count("mean_square_radius") ||
                              want.count("mu_total") || want.count("L_total");
  RadialProfiles prof;
  if (needs_profiles) prof = radial_profiles(spec, cfg);
  if (want.count("total_charge")) out.total_charge = total_charge(prof, cfg);
  if (want.count("mean_square_radius")) out.mean_square_radius = mean_square_radius(prof, cfg);
  if (want.count("mu_total")) out.mu_total = magnetic_moment_total(prof, cfg);
  if (want.count("mu_spin")) out.mu_spin = magnetic_moment_spin(spec, cfg);
  if (want.count("L_total")) out.L_total = angular_momentum_total(prof, cfg);
  if (want.count("L_spin")) out.L_spin = angular_momentum_spin(spec, cfg);
  if (want.count("energy_total")) out.energy_total = energy_total(spec, cfg);
  if (want.count("xQx")) out.xQx = x_Qx(spec, cfg);
  if (want.count("xPx")) out.xPx = x_Px(out.mean_square_radius, out.xQx);
  return out;
}

}  // namespace dirac_packets
