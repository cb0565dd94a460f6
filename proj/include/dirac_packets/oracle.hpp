#pragma once

// Brute-force reference computations. None of these use the radial
// spherical-Bessel reduction; they integrate the momentum superposition
// directly with fixed-order rules.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "densities.hpp"
#include "packet.hpp"
#include "quadrature.hpp"
#include "spinor.hpp"
#include "units.hpp"

namespace dirac_packets::oracle {

struct OracleReport {
  std::string quantity;
  double primary = 0.0;
  double oracle = 0.0;
  double tolerance = 0.0;  // on relative_deviation() unless stated in `criterion`
  std::string criterion = "relative";
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double oracle_error = 0.0;  // statistical or quadrature error of the oracle value

  double absolute_deviation() const { return std::abs(primary - oracle); }
  double relative_deviation() const {
    const double scale = std::abs(oracle);
    return scale > 0.0 ? absolute_deviation() / scale : absolute_deviation();
  }
  bool passed() const {
    if (criterion == "absolute") return absolute_deviation() <= tolerance;
    if (criterion == "sigma") return absolute_deviation() <= tolerance * oracle_error;
    return relative_deviation() <= tolerance;
  }
};

// Tensor Gauss-Hermite synthesis of psi(x) (or d psi/dt when `time_derivative`)
// with p_k = sqrt(2) n t_k absorbing the Gaussian weight of f_n.
inline Spinor4 psi_direct(const PacketSpec& spec, const Vec3& x, int nodes = 160,
                          bool time_derivative = false) {
  const auto gh = quadrature::gauss_hermite(nodes);
  const double s = std::sqrt(2.0) * spec.n;
  const double prefactor = std::pow(2.0 * std::numbers::pi, -1.5) * s * s * s *
                           std::pow(spec.n, -1.5) * std::pow(std::numbers::pi, -0.75);
  const auto m = static_cast<std::size_t>(nodes);
  std::vector<double> p(m);
  std::array<std::vector<complex>, 3> phase;
  for (auto& v : phase) v.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    p[i] = s * gh.nodes[i];
    phase[0][i] = std::polar(gh.weights[i], p[i] * x.x);
    phase[1][i] = std::polar(gh.weights[i], p[i] * x.y);
    phase[2][i] = std::polar(gh.weights[i], p[i] * x.z);
  }
  Spinor4 acc;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const complex pxy = phase[0][i] * phase[1][j];
      Spinor4 row;
      for (std::size_t k = 0; k < m; ++k) {
        const Momentum3 mom{p[i], p[j], p[k]};
        Spinor4 u = u1(mom);
        complex w = phase[2][k];
        if (time_derivative) w *= complex(0.0, -energy(mom));
        for (std::size_t c = 0; c < 4; ++c) row[c] += w * u[c];
      }
      for (std::size_t c = 0; c < 4; ++c) acc[c] += pxy * row[c];
    }
  }
  return complex(prefactor) * acc;
}

struct MomentOptions {
  int transverse_nodes = 24;  // Gauss-Hermite nodes for each transverse momentum
  int position_nodes = 384;   // Gauss-Legendre nodes along the collapsed coordinate
  int panel_order = 8;
  double x_range = 0.0;       // 0 selects 10 max(1, 1/n)
};

namespace detail {

// For fixed transverse momenta, the integral over the collapsed coordinate
//   int ds s g^dagger(s) M g(s),  g(s) = (2 pi)^{-1/2} int dq F(q) e^{i q s},
// where q is the momentum along s and F = f u1 with the transverse Gaussian
// factor removed (it is absorbed by the outer Gauss-Hermite rule).
inline double collapsed_line(const PacketSpec& spec, int axis, double t1, double t2,
                             const std::vector<double>& q, const std::vector<double>& qw,
                             const std::vector<double>& s, const std::vector<double>& sw,
                             const Matrix4& mat) {
  const double n = spec.n;
  const double norm = std::pow(n, -1.5) * std::pow(std::numbers::pi, -0.75);
  std::vector<Spinor4> f(q.size());
  for (std::size_t k = 0; k < q.size(); ++k) {
    Momentum3 mom;
    if (axis == 0)
      mom = {q[k], t1, t2};
    else
      mom = {t1, q[k], t2};
    const double gauss = norm * std::exp(-q[k] * q[k] / (2.0 * n * n));
    f[k] = complex(qw[k] * gauss) * u1(mom);
  }
  const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  double total = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    Spinor4 g;
    for (std::size_t k = 0; k < q.size(); ++k) {
      const complex ph = std::polar(1.0, q[k] * s[i]);
      for (std::size_t c = 0; c < 4; ++c) g[c] += ph * f[k][c];
    }
    g = complex(inv_sqrt_2pi) * g;
    total += sw[i] * s[i] * sandwich(g, mat, g).real();
  }
  return total;
}

}  // namespace detail

// z-moment magnitude in Bohr magnetons from (1/2c) int (x J_y - y J_x) d^3x with
// the momentum superposition kept explicit. For x J_y the y and z integrals
// collapse onto p_y = p_y', p_z = p_z' (delta functions); what remains is
// x, p_x, p_x', p_y, p_z: five integrals, with x truncated to |x| <= X.
inline double magnetic_moment_5d(const PacketSpec& spec, const QuadratureConfig& cfg,
                                 const MomentOptions& opt = {}) {
  spec.validate();
  const double n = spec.n;
  const double p_max = cfg.momentum_cutoff(spec);
  const double x_range = opt.x_range > 0.0 ? opt.x_range : 10.0 * std::max(1.0, 1.0 / n);

  // Collapsed coordinate on a sinh-mapped grid: fine near the core of width ~1/n.
  const double scale = 0.25 * std::min(1.0, 1.0 / n);
  const double s_max = std::asinh(x_range / scale);
  const auto sr = quadrature::composite_legendre(-s_max, s_max,
                                                 std::max(1, opt.position_nodes / opt.panel_order),
                                                 opt.panel_order);
  std::vector<double> s(sr.nodes.size()), sw(sr.nodes.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    s[i] = scale * std::sinh(sr.nodes[i]);
    sw[i] = sr.weights[i] * scale * std::cosh(sr.nodes[i]);
  }
  // Momentum along the collapsed coordinate: panels of half an oscillation at |x| = X.
  const int q_panels = static_cast<int>(std::ceil(p_max * x_range / std::numbers::pi)) + 8;
  const auto qr = quadrature::composite_legendre(-p_max, p_max, q_panels, opt.panel_order);

  const auto gh = quadrature::gauss_hermite(opt.transverse_nodes);
  const auto& d = DiracMatrices::get();
  double a_term = 0.0, b_term = 0.0;
  for (std::size_t i = 0; i < gh.nodes.size(); ++i) {
    for (std::size_t j = 0; j < gh.nodes.size(); ++j) {
      // |f|^2 carries exp(-(p1^2 + p2^2)/n^2): p = n t against weight exp(-t^2).
      const double w = gh.weights[i] * gh.weights[j] * n * n;
      const double t1 = n * gh.nodes[i], t2 = n * gh.nodes[j];
      // int x J_y: J_y = -e c psi^dagger alpha_y psi, collapse along x.
      a_term -= w * detail::collapsed_line(spec, 0, t1, t2, qr.nodes, qr.weights, s, sw, d.alpha[1]);
      // int y J_x: collapse along y.
      b_term -= w * detail::collapsed_line(spec, 1, t1, t2, qr.nodes, qr.weights, s, sw, d.alpha[0]);
    }
  }
  const double m_z = units::charge * (a_term - b_term) / (2.0 * units::c);
  return units::to_bohr_magnetons(-m_z);
}

struct MonteCarloResult {
  double value = 0.0;  // moment magnitude in Bohr magnetons
  double std_error = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

// Importance-sampled int (1/2c)(x cross J)_z d^3x. Proposal: equal mixture of
// an isotropic Gaussian of the core width and an exponential of the Compton
// tail, so the weight stays bounded in both regimes.
inline MonteCarloResult monte_carlo_moment(const RadialProfiles& prof, std::size_t samples,
                                           std::uint64_t seed) {
  const double n = prof.n();
  const double sigma = 1.0 / (std::sqrt(2.0) * n);
  const double lambda = std::max(0.5, 0.5 / n);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, sigma);
  std::gamma_distribution<double> radial(3.0, lambda);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const double gauss_norm = std::pow(2.0 * std::numbers::pi * sigma * sigma, -1.5);
  const double exp_norm = 1.0 / (8.0 * std::numbers::pi * lambda * lambda * lambda);

  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    Vec3 x;
    if (unit(rng) < 0.5) {
      x = {normal(rng), normal(rng), normal(rng)};
    } else {
      const double r = radial(rng);
      const double cos_t = 2.0 * unit(rng) - 1.0;
      const double phi = 2.0 * std::numbers::pi * unit(rng);
      const double sin_t = std::sqrt(std::max(0.0, 1.0 - cos_t * cos_t));
      x = {r * sin_t * std::cos(phi), r * sin_t * std::sin(phi), r * cos_t};
    }
    const double r = x.norm();
    double value = 0.0;
    if (r <= prof.r_max()) {
      const double q = 0.5 * gauss_norm * std::exp(-r * r / (2.0 * sigma * sigma)) +
                       0.5 * exp_norm * std::exp(-r / lambda);
      const Vec3 j = current_density_matrix(prof, x);
      value = (x.x * j.y - x.y * j.x) / (2.0 * units::c) / q;
    }
    sum += value;
    sum_sq += value * value;
  }
  const double count = static_cast<double>(samples);
  const double mean = sum / count;
  const double var = std::max(0.0, sum_sq / count - mean * mean);
  MonteCarloResult out;
  out.value = units::to_bohr_magnetons(-mean);
  out.std_error = units::to_bohr_magnetons(std::sqrt(var / count));
  out.samples = samples;
  out.seed = seed;
  return out;
}

// d(f u1)/dp_k, analytically.
inline std::array<Spinor4, 3> amplitude_gradient(const PacketSpec& spec, const Momentum3& p) {
  const double n = spec.n;
  const double e = energy(p);
  const double nrm = std::sqrt(2.0 * e * (e + 1.0));
  const double f = momentum_profile(spec, p.magnitude());
  const std::array<double, 3> pk = {p.px, p.py, p.pz};
  Spinor4 v;
  v[0] = e + 1.0;
  v[2] = p.pz;
  v[3] = complex(p.px, p.py);
  std::array<Spinor4, 3> g;
  for (int k = 0; k < 3; ++k) {
    const double de = pk[k] / e;
    const double dnrm = de * (2.0 * e + 1.0) / nrm;
    const double df = -pk[k] / (n * n) * f;
    Spinor4 dv;
    dv[0] = de;
    dv[2] = k == 2 ? 1.0 : 0.0;
    dv[3] = k == 0 ? complex(1.0, 0.0) : (k == 1 ? complex(0.0, 1.0) : complex(0.0));
    for (std::size_t c = 0; c < 4; ++c)
      g[k][c] = df * v[c] / nrm + f * dv[c] / nrm - f * v[c] * dnrm / (nrm * nrm);
  }
  return g;
}

struct ProjectorSplit {
  double mean_square_radius = 0.0;  // int sum_k |d_k F|^2 d^3p
  double xPx = 0.0;                 // int sum_k |P d_k F|^2 d^3p
  double xQx = 0.0;                 // int sum_k |Q d_k F|^2 d^3p
};

// Momentum-space evaluation of <x^2>, <x.Px> and <x.Qx> with x_k = i d/dp_k and
// the projectors P, Q = (1 +- H(p)/E)/2 built from explicit 4x4 matrices.
inline ProjectorSplit projector_split(const PacketSpec& spec, const QuadratureConfig& cfg,
                                      int radial_panels = 64, int angular_nodes = 12) {
  const double p_max = cfg.momentum_cutoff(spec);
  const auto pr = quadrature::composite_legendre(0.0, p_max, radial_panels, 8);
  const auto ct = quadrature::gauss_legendre(angular_nodes);
  const int phi_nodes = 2 * angular_nodes;
  const Matrix4 id = Matrix4::identity();
  ProjectorSplit out;
  for (std::size_t i = 0; i < pr.nodes.size(); ++i) {
    const double p = pr.nodes[i];
    for (int j = 0; j < angular_nodes; ++j) {
      const double cos_t = ct.nodes[j];
      const double sin_t = std::sqrt(1.0 - cos_t * cos_t);
      for (int q = 0; q < phi_nodes; ++q) {
        const double phi = 2.0 * std::numbers::pi * (q + 0.5) / phi_nodes;
        const Momentum3 mom{p * sin_t * std::cos(phi), p * sin_t * std::sin(phi), p * cos_t};
        const double w = pr.weights[i] * p * p * ct.weights[j] * 2.0 * std::numbers::pi / phi_nodes;
        const double e = energy(mom);
        const Matrix4 h = dirac_hamiltonian(mom);
        const Matrix4 proj_p = complex(0.5) * (id + complex(1.0 / e) * h);
        const Matrix4 proj_q = complex(0.5) * (id + complex(-1.0 / e) * h);
        const auto grad = amplitude_gradient(spec, mom);
        for (int k = 0; k < 3; ++k) {
          out.mean_square_radius += w * norm_squared(grad[k]);
          out.xPx += w * norm_squared(proj_p * grad[k]);
          out.xQx += w * norm_squared(proj_q * grad[k]);
        }
      }
    }
  }
  return out;
}

// Direction average of a momentum-space bilinear by product quadrature over the
// sphere, using the matrix form.
template <class F>
double spherical_average(double p, F&& bilinear, int nodes = 16) {
  const auto ct = quadrature::gauss_legendre(nodes);
  const int phi_nodes = 2 * nodes;
  double acc = 0.0;
  for (int j = 0; j < nodes; ++j) {
    const double sin_t = std::sqrt(1.0 - ct.nodes[j] * ct.nodes[j]);
    for (int q = 0; q < phi_nodes; ++q) {
      const double phi = 2.0 * std::numbers::pi * (q + 0.5) / phi_nodes;
      acc += ct.weights[j] * bilinear(Momentum3{p * sin_t * std::cos(phi), p * sin_t * std::sin(phi),
                                                p * ct.nodes[j]});
    }
  }
  return acc / (2.0 * phi_nodes);
}

}  // namespace dirac_packets::oracle
