#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"

namespace dirac_packets::quadrature {

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Legendre on [-1, 1] by Newton iteration on P_n.
inline Rule gauss_legendre(int n) {
  Rule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p2) / j;
      }
      dp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  return r;
}

namespace detail {

// Eigenvalues of the symmetric tridiagonal matrix with zero diagonal and
// off-diagonal e[0..n-2], by implicit QL with Wilkinson shifts.
inline std::vector<double> tridiagonal_eigenvalues(std::vector<double> e) {
  const std::size_t n = e.size() + 1;
  std::vector<double> d(n, 0.0);
  e.push_back(0.0);
  for (std::size_t l = 0; l < n; ++l) {
    for (int iter = 0; iter < 200; ++iter) {
      std::size_t m = l;
      for (; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= 1e-16 * dd) break;
      }
      if (m == l) break;
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      std::size_t i = m;
      bool underflow = false;
      while (i-- > l) {
        double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    }
  }
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace detail

// Gauss-Hermite for weight exp(-t^2) on the real line. Nodes start from the
// Jacobi-matrix eigenvalues and are polished by Newton steps on the
// orthonormal Hermite recurrence, which also gives weights without overflow.
inline Rule gauss_hermite(int n) {
  Rule r;
  std::vector<double> off(static_cast<std::size_t>(n > 0 ? n - 1 : 0));
  for (std::size_t k = 0; k < off.size(); ++k) off[k] = std::sqrt(0.5 * static_cast<double>(k + 1));
  r.nodes = detail::tridiagonal_eigenvalues(off);
  r.weights.resize(r.nodes.size());
  const double pim4 = std::pow(std::numbers::pi, -0.25);
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    double z = r.nodes[i];
    double pp = 1.0;
    for (int it = 0; it < 6; ++it) {
      double p1 = pim4, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      const double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15 * std::max(1.0, std::abs(z))) break;
    }
    r.nodes[i] = z;
    r.weights[i] = 2.0 / (pp * pp);
  }
  // exact symmetry
  for (std::size_t i = 0; i < r.nodes.size() / 2; ++i) {
    const std::size_t j = r.nodes.size() - 1 - i;
    const double z = 0.5 * (r.nodes[j] - r.nodes[i]);
    const double w = 0.5 * (r.weights[i] + r.weights[j]);
    r.nodes[i] = -z;
    r.nodes[j] = z;
    r.weights[i] = r.weights[j] = w;
  }
  if (r.nodes.size() % 2) r.nodes[r.nodes.size() / 2] = 0.0;
  return r;
}

// Composite Gauss-Legendre on [a, b] with `panels` equal panels.
inline Rule composite_legendre(double a, double b, int panels, int order) {
  const Rule base = gauss_legendre(order);
  Rule r;
  r.nodes.reserve(static_cast<std::size_t>(panels) * order);
  r.weights.reserve(static_cast<std::size_t>(panels) * order);
  const double h = (b - a) / panels;
  for (int k = 0; k < panels; ++k) {
    const double mid = a + (k + 0.5) * h;
    for (int i = 0; i < order; ++i) {
      r.nodes.push_back(mid + 0.5 * h * base.nodes[i]);
      r.weights.push_back(0.5 * h * base.weights[i]);
    }
  }
  return r;
}

// 7-point Gauss / 15-point Kronrod pair (QUADPACK qk15 abscissae and weights).
namespace gk15 {
inline constexpr std::array<double, 8> xgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> wgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> wg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
}  // namespace gk15

template <std::size_t K>
using Values = std::array<double, K>;

template <std::size_t K>
struct PanelResult {
  double a = 0.0, b = 0.0;
  Values<K> value{};
  Values<K> error{};
  Values<K> abs_value{};  // integral of |f|, the scale for absolute tolerances
};

// One GK15 panel for a vector-valued integrand; error per component uses the
// QUADPACK rescaling of |K15 - G7|.
template <std::size_t K, class F>
PanelResult<K> gk15_panel(const F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  PanelResult<K> res;
  res.a = a;
  res.b = b;
  Values<K> kron{}, gauss{}, absk{};
  std::array<Values<K>, 15> fv;

  fv[7] = f(center);
  for (std::size_t k = 0; k < K; ++k) {
    kron[k] = gk15::wgk[7] * fv[7][k];
    gauss[k] = gk15::wg[3] * fv[7][k];
    absk[k] = gk15::wgk[7] * std::abs(fv[7][k]);
  }
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * gk15::xgk[j];
    fv[j] = f(center - dx);
    fv[14 - j] = f(center + dx);
    for (std::size_t k = 0; k < K; ++k) {
      const double s = fv[j][k] + fv[14 - j][k];
      kron[k] += gk15::wgk[j] * s;
      absk[k] += gk15::wgk[j] * (std::abs(fv[j][k]) + std::abs(fv[14 - j][k]));
      if (j % 2 == 1) gauss[k] += gk15::wg[j / 2] * s;
    }
  }
  const double h = std::abs(half);
  for (std::size_t k = 0; k < K; ++k) {
    const double mean = 0.5 * kron[k];
    double asc = gk15::wgk[7] * std::abs(fv[7][k] - mean);
    for (std::size_t j = 0; j < 7; ++j)
      asc += gk15::wgk[j] * (std::abs(fv[j][k] - mean) + std::abs(fv[14 - j][k] - mean));
    asc *= h;
    double err = std::abs((kron[k] - gauss[k]) * half);
    if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
    const double round = 50.0 * std::numeric_limits<double>::epsilon() * absk[k] * h;
    res.value[k] = kron[k] * half;
    res.error[k] = std::max(err, round);
    res.abs_value[k] = absk[k] * h;
  }
  return res;
}

struct AdaptiveOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-13;  // relative to the integral of |f|
  int max_panels = 200000;
};

template <std::size_t K>
struct AdaptiveResult {
  Values<K> value{};
  Values<K> error{};
  std::size_t panels = 0;
};

// Globally adaptive GK15 over the given breakpoints: the panel with the worst
// tolerance-normalised error is bisected until every component satisfies
// err_k <= max(abs_tol * int|f_k|, rel_tol * |I_k|).
template <std::size_t K, class F>
AdaptiveResult<K> integrate_adaptive(const F& f, std::span<const double> breakpoints,
                                     const AdaptiveOptions& opt = {}) {
  std::vector<PanelResult<K>> panels;
  panels.reserve(breakpoints.size() * 2);
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
    panels.push_back(gk15_panel<K>(f, breakpoints[i], breakpoints[i + 1]));

  auto totals = [&](Values<K>& val, Values<K>& err, Values<K>& absv) {
    val.fill(0.0);
    err.fill(0.0);
    absv.fill(0.0);
    for (const auto& p : panels)
      for (std::size_t k = 0; k < K; ++k) {
        val[k] += p.value[k];
        err[k] += p.error[k];
        absv[k] += p.abs_value[k];
      }
  };

  Values<K> val, err, absv, tol;
  totals(val, err, absv);
  for (;;) {
    bool done = true;
    for (std::size_t k = 0; k < K; ++k) {
      tol[k] = std::max({opt.abs_tol * absv[k], opt.rel_tol * std::abs(val[k]), 1e-300});
      if (err[k] > tol[k]) done = false;
    }
    if (done) break;
    if (static_cast<int>(panels.size()) >= opt.max_panels) {
      double worst = 0.0;
      for (const auto& p : panels)
        for (std::size_t k = 0; k < K; ++k) worst = std::max(worst, p.error[k]);
      throw QuadratureError("adaptive quadrature did not converge", worst);
    }
    // Bisect the worst panels; splitting a batch keeps the loop cheap when
    // many panels need refinement at once.
    std::vector<std::pair<double, std::size_t>> score(panels.size());
    for (std::size_t i = 0; i < panels.size(); ++i) {
      double s = 0.0;
      for (std::size_t k = 0; k < K; ++k) s = std::max(s, panels[i].error[k] / tol[k]);
      score[i] = {s, i};
    }
    const std::size_t batch = std::max<std::size_t>(1, panels.size() / 8);
    std::partial_sort(score.begin(), score.begin() + static_cast<std::ptrdiff_t>(batch), score.end(),
                      [](const auto& l, const auto& r) {
                        return l.first > r.first || (l.first == r.first && l.second < r.second);
                      });
    std::vector<char> split(panels.size(), 0);
    for (std::size_t i = 0; i < batch; ++i)
      if (i == 0 || score[i].first * static_cast<double>(panels.size()) > 1.0)
        split[score[i].second] = 1;
    std::vector<PanelResult<K>> next;
    next.reserve(panels.size() + batch);
    for (std::size_t i = 0; i < panels.size(); ++i) {
      if (!split[i]) {
        next.push_back(panels[i]);
        continue;
      }
      const double mid = 0.5 * (panels[i].a + panels[i].b);
      next.push_back(gk15_panel<K>(f, panels[i].a, mid));
      next.push_back(gk15_panel<K>(f, mid, panels[i].b));
    }
    panels.swap(next);
    totals(val, err, absv);
  }
  AdaptiveResult<K> out;
  out.value = val;
  out.error = err;
  out.panels = panels.size();
  return out;
}

// Scalar convenience wrapper.
template <class F>
AdaptiveResult<1> integrate_adaptive_scalar(const F& f, std::span<const double> breakpoints,
                                            const AdaptiveOptions& opt = {}) {
  return integrate_adaptive<1>([&](double x) { return Values<1>{f(x)}; }, breakpoints, opt);
}

}  // namespace dirac_packets::quadrature
