#pragma once

#include <array>
#include <cmath>

#include "error.hpp"
#include "packet.hpp"
#include "spinor.hpp"

namespace dirac_packets {

// Pointwise densities at x. Velocities are zero where the corresponding
// density vanishes.
struct DensitySample {
  Vec3 x;
  double rho_q = 0.0;
  Vec3 J;
  double rho_E = 0.0;
  Vec3 G;
  Vec3 v_q;
  Vec3 v_E;
};

// Convection, spin-curl and time-derivative pieces of the Gordon expansion.
struct GordonTerms {
  Vec3 convection;
  Vec3 spin_curl;
  Vec3 time_derivative;

  Vec3 sum() const { return convection + spin_curl + time_derivative; }
};

inline double charge_density(const RadialProfiles& prof, const Vec3& x) {
  const auto s = prof.at(x.norm());
  return -(s.a * s.a + s.b * s.b);
}

// J = -2 e c a(r) b(r) sin(theta) phi_hat, written in Cartesian components.
inline Vec3 current_density(const RadialProfiles& prof, const Vec3& x) {
  const double r = x.norm();
  const auto s = prof.at(r);
  if (r == 0.0) return {};
  const double k = -2.0 * s.a * s.b / r;
  return {-k * x.y, k * x.x, 0.0};
}

// -e c psi^dagger gamma0 gamma psi by explicit matrix products.
inline Vec3 current_density_matrix(const RadialProfiles& prof, const Vec3& x) {
  const auto psi = evaluate_psi(prof, x);
  const auto& d = DiracMatrices::get();
  return {-sandwich(psi, d.alpha[0], psi).real(), -sandwich(psi, d.alpha[1], psi).real(),
          -sandwich(psi, d.alpha[2], psi).real()};
}

inline Vec3 charge_velocity(const RadialProfiles& prof, const Vec3& x) {
  const double rho = charge_density(prof, x);
  if (rho == 0.0) throw DomainError("charge velocity undefined where the charge density vanishes");
  const Vec3 j = current_density(prof, x);
  return (1.0 / rho) * j;
}

// |J| / (c |rho_q|); bounded by one for any spinor.
inline double charge_speed_ratio(const RadialProfiles& prof, const Vec3& x) {
  const double r = x.norm();
  const auto s = prof.at(r);
  const double rho = s.a * s.a + s.b * s.b;
  if (rho == 0.0) throw DomainError("charge velocity undefined where the charge density vanishes");
  const double sin_theta = r > 0.0 ? std::hypot(x.x, x.y) / r : 0.0;
  return 2.0 * std::abs(s.a * s.b) * sin_theta / rho;
}

// (i hbar / 2)(psi^dagger psi_t - psi_t^dagger psi)
inline double energy_density(const RadialProfiles& prof, const Vec3& x) {
  const auto psi = evaluate_psi(prof, x);
  const auto psi_t = evaluate_psi_dot(prof, x);
  return -inner(psi, psi_t).imag();
}

// m c^2 psi^dagger gamma0 psi + (hbar c / 2i)[psi^dagger alpha.grad psi - (grad psi^dagger).alpha psi]
inline double energy_density_spatial(const Spinor4& psi, const std::array<Spinor4, 3>& grad) {
  const auto& d = DiracMatrices::get();
  complex kinetic = 0.0;
  for (int k = 0; k < 3; ++k) kinetic += sandwich(psi, d.alpha[k], grad[k]);
  return sandwich(psi, d.gamma0, psi).real() + kinetic.imag();
}

inline double energy_density_spatial(const RadialProfiles& prof, const Vec3& x) {
  return energy_density_spatial(evaluate_psi(prof, x), psi_gradient(prof, x));
}

namespace detail {

// curl of the vector field V_j = psi^dagger M_j psi, given d_k V_j = 2 Re(psi^dagger M_j d_k psi).
inline Vec3 bilinear_curl(const Spinor4& psi, const std::array<Spinor4, 3>& grad,
                          const std::array<Matrix4, 3>& mats) {
  std::array<std::array<double, 3>, 3> dv{};  // dv[k][j] = d_k V_j
  for (int k = 0; k < 3; ++k)
    for (int j = 0; j < 3; ++j) dv[k][j] = 2.0 * sandwich(psi, mats[j], grad[k]).real();
  return {dv[1][2] - dv[2][1], dv[2][0] - dv[0][2], dv[0][1] - dv[1][0]};
}

}  // namespace detail

// G = (hbar / 2i)[psi^dagger grad psi - (grad psi^dagger) psi] + (hbar / 4) curl(psi^dagger sigma psi)
inline Vec3 momentum_density(const Spinor4& psi, const std::array<Spinor4, 3>& grad) {
  const auto& d = DiracMatrices::get();
  const Vec3 curl = detail::bilinear_curl(psi, grad, d.sigma);
  Vec3 g;
  g.x = inner(psi, grad[0]).imag() + 0.25 * curl.x;
  g.y = inner(psi, grad[1]).imag() + 0.25 * curl.y;
  g.z = inner(psi, grad[2]).imag() + 0.25 * curl.z;
  return g;
}

inline Vec3 momentum_density(const RadialProfiles& prof, const Vec3& x) {
  return momentum_density(evaluate_psi(prof, x), psi_gradient(prof, x));
}

inline GordonTerms gordon_terms(const RadialProfiles& prof, const Vec3& x) {
  const auto& d = DiracMatrices::get();
  const auto psi = evaluate_psi(prof, x);
  const auto psi_t = evaluate_psi_dot(prof, x);
  const auto grad = psi_gradient(prof, x);

  std::array<Matrix4, 3> g0_sigma;
  for (int j = 0; j < 3; ++j) g0_sigma[j] = d.gamma0 * d.sigma[j];

  GordonTerms t;
  // (i e hbar / 2m){psi^dagger gamma0 grad psi - (grad psi^dagger) gamma0 psi}
  std::array<double, 3> conv{};
  for (int k = 0; k < 3; ++k) conv[k] = -sandwich(psi, d.gamma0, grad[k]).imag();
  t.convection = {conv[0], conv[1], conv[2]};
  // -(e hbar / 2m) curl(psi^dagger gamma0 sigma psi)
  t.spin_curl = -0.5 * detail::bilinear_curl(psi, grad, g0_sigma);
  // (i e hbar / 2mc) d/dt (psi^dagger gamma psi)
  std::array<double, 3> zb{};
  for (int k = 0; k < 3; ++k) {
    const complex dt = sandwich(psi_t, d.gamma[k], psi) + sandwich(psi, d.gamma[k], psi_t);
    zb[k] = (complex(0.0, 0.5) * dt).real();
  }
  t.time_derivative = {zb[0], zb[1], zb[2]};
  return t;
}

inline DensitySample sample_densities(const RadialProfiles& prof, const Vec3& x) {
  DensitySample s;
  s.x = x;
  s.rho_q = charge_density(prof, x);
  s.J = current_density(prof, x);
  s.rho_E = energy_density(prof, x);
  s.G = momentum_density(prof, x);
  if (s.rho_q != 0.0) s.v_q = (1.0 / s.rho_q) * s.J;
  if (s.rho_E != 0.0) s.v_E = (1.0 / s.rho_E) * s.G;  // c^2 G / rho_E
  return s;
}

}  // namespace dirac_packets
