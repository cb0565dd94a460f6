#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace dirac_packets {

using complex = std::complex<double>;

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  constexpr double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
  double norm() const { return std::sqrt(x * x + y * y + z * z); }

  friend constexpr Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend constexpr Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend constexpr Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
};

constexpr double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr Vec3 cross(Vec3 a, Vec3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

// Momentum in units of mc.
struct Momentum3 {
  double px = 0.0, py = 0.0, pz = 0.0;

  double magnitude() const { return std::sqrt(px * px + py * py + pz * pz); }
  double magnitude_squared() const { return px * px + py * py + pz * pz; }
};

struct Spinor4 {
  std::array<complex, 4> c{};

  complex& operator[](std::size_t i) { return c[i]; }
  const complex& operator[](std::size_t i) const { return c[i]; }

  friend Spinor4 operator+(const Spinor4& a, const Spinor4& b) {
    Spinor4 r;
    for (std::size_t i = 0; i < 4; ++i) r[i] = a[i] + b[i];
    return r;
  }
  friend Spinor4 operator-(const Spinor4& a, const Spinor4& b) {
    Spinor4 r;
    for (std::size_t i = 0; i < 4; ++i) r[i] = a[i] - b[i];
    return r;
  }
  friend Spinor4 operator*(complex s, const Spinor4& a) {
    Spinor4 r;
    for (std::size_t i = 0; i < 4; ++i) r[i] = s * a[i];
    return r;
  }
};

// <a|b> = a^dagger b
inline complex inner(const Spinor4& a, const Spinor4& b) {
  complex s = 0.0;
  for (std::size_t i = 0; i < 4; ++i) s += std::conj(a[i]) * b[i];
  return s;
}

inline double norm_squared(const Spinor4& a) { return inner(a, a).real(); }

struct Matrix4 {
  std::array<std::array<complex, 4>, 4> m{};

  static Matrix4 identity() {
    Matrix4 r;
    for (std::size_t i = 0; i < 4; ++i) r.m[i][i] = 1.0;
    return r;
  }

  complex operator()(std::size_t i, std::size_t j) const { return m[i][j]; }
  complex& operator()(std::size_t i, std::size_t j) { return m[i][j]; }

  friend Matrix4 operator*(const Matrix4& a, const Matrix4& b) {
    Matrix4 r;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t k = 0; k < 4; ++k)
        for (std::size_t j = 0; j < 4; ++j) r.m[i][j] += a.m[i][k] * b.m[k][j];
    return r;
  }
  friend Matrix4 operator+(const Matrix4& a, const Matrix4& b) {
    Matrix4 r;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) r.m[i][j] = a.m[i][j] + b.m[i][j];
    return r;
  }
  friend Matrix4 operator*(complex s, const Matrix4& a) {
    Matrix4 r;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) r.m[i][j] = s * a.m[i][j];
    return r;
  }
  friend Spinor4 operator*(const Matrix4& a, const Spinor4& v) {
    Spinor4 r;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) r[i] += a.m[i][j] * v[j];
    return r;
  }
};

// a^dagger M b
inline complex sandwich(const Spinor4& a, const Matrix4& mat, const Spinor4& b) {
  return inner(a, mat * b);
}

// Dirac representation: gamma0 = diag(1, 1, -1, -1), gamma^k = [[0, s_k], [-s_k, 0]],
// spin matrices sigma_k = diag(s_k, s_k) with s_k the Pauli matrices.
struct DiracMatrices {
  Matrix4 gamma0;
  std::array<Matrix4, 3> gamma;  // spatial gamma^k
  std::array<Matrix4, 3> sigma;
  std::array<Matrix4, 3> alpha;  // gamma0 gamma^k

  static const DiracMatrices& get() {
    static const DiracMatrices instance = build();
    return instance;
  }

 private:
  static DiracMatrices build() {
    const complex I(0.0, 1.0);
    using Pauli = std::array<std::array<complex, 2>, 2>;
    const std::array<Pauli, 3> pauli = {{
        {{{0.0, 1.0}, {1.0, 0.0}}},
        {{{0.0, -I}, {I, 0.0}}},
        {{{1.0, 0.0}, {0.0, -1.0}}},
    }};

    DiracMatrices d;
    d.gamma0(0, 0) = 1.0;
    d.gamma0(1, 1) = 1.0;
    d.gamma0(2, 2) = -1.0;
    d.gamma0(3, 3) = -1.0;
    for (std::size_t k = 0; k < 3; ++k) {
      for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
          d.gamma[k](i, j + 2) = pauli[k][i][j];
          d.gamma[k](i + 2, j) = -pauli[k][i][j];
          d.sigma[k](i, j) = pauli[k][i][j];
          d.sigma[k](i + 2, j + 2) = pauli[k][i][j];
        }
      }
      d.alpha[k] = d.gamma0 * d.gamma[k];
    }
    return d;
  }
};

// Relativistic energy sqrt(p^2 c^2 + m^2 c^4).
inline double energy(double p_magnitude) { return std::sqrt(p_magnitude * p_magnitude + 1.0); }
inline double energy(const Momentum3& p) { return std::sqrt(p.magnitude_squared() + 1.0); }

// Positive-frequency spin-up spinor
//   u1(p) = (E + m, 0, p_z, p_x + i p_y) / sqrt(2E(E + m)).
inline Spinor4 u1(const Momentum3& p) {
  const double e = energy(p);
  const double scale = 1.0 / std::sqrt(2.0 * e * (e + 1.0));
  Spinor4 u;
  u[0] = (e + 1.0) * scale;
  u[1] = 0.0;
  u[2] = p.pz * scale;
  u[3] = complex(p.px, p.py) * scale;
  return u;
}

// u1^dagger sigma_z u1, closed form.
inline double bilinear_sigma_z(const Momentum3& p) {
  const double e = energy(p);
  const double ep = e + 1.0;
  const double anis = p.pz * p.pz - p.px * p.px - p.py * p.py;
  return (ep * ep + anis) / (2.0 * e * ep);
}

// u1^dagger gamma0 sigma_z u1, closed form.
inline double bilinear_gamma0_sigma_z(const Momentum3& p) {
  const double e = energy(p);
  const double ep = e + 1.0;
  const double anis = p.pz * p.pz - p.px * p.px - p.py * p.py;
  return (ep * ep - anis) / (2.0 * e * ep);
}

// Direction averages of the two bilinears at fixed |p|. Uses <p_z^2 - p_perp^2> = -p^2/3.
inline double bilinear_sigma_z_angular_average(double p) {
  const double e = energy(p);
  const double ep = e + 1.0;
  return (ep * ep - p * p / 3.0) / (2.0 * e * ep);
}

inline double bilinear_gamma0_sigma_z_angular_average(double p) {
  const double e = energy(p);
  const double ep = e + 1.0;
  return (ep * ep + p * p / 3.0) / (2.0 * e * ep);
}

// Matrix-product forms.
inline double bilinear_sigma_z_matrix(const Momentum3& p) {
  const auto u = u1(p);
  return sandwich(u, DiracMatrices::get().sigma[2], u).real();
}

inline double bilinear_gamma0_sigma_z_matrix(const Momentum3& p) {
  const auto& d = DiracMatrices::get();
  const auto u = u1(p);
  return sandwich(u, d.gamma0 * d.sigma[2], u).real();
}

// Free Dirac Hamiltonian in momentum space, H(p) = alpha.p + beta.
inline Matrix4 dirac_hamiltonian(const Momentum3& p) {
  const auto& d = DiracMatrices::get();
  return complex(p.px) * d.alpha[0] + complex(p.py) * d.alpha[1] + complex(p.pz) * d.alpha[2] +
         d.gamma0;
}

}  // namespace dirac_packets
