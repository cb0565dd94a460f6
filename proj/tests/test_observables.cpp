#include <gtest/gtest.h>

#include <numbers>

#include "dirac_packets/observables.hpp"
#include "dirac_packets/oracle.hpp"
#include "support.hpp"

using namespace dirac_packets;
using testing_support::profiles;

namespace {

const QuadratureConfig cfg{};
const std::vector<double> decades = {0.01, 0.1, 1.0, 10.0, 100.0};

}  // namespace

TEST(Norm, UnitAcrossWidths) {
  for (double n : decades) {
    const auto e = norm(profiles(n), cfg);
    EXPECT_NEAR(e.value, 1.0, 1e-6) << n;
    EXPECT_LT(e.error, 1e-7) << n;
    EXPECT_NEAR(total_charge(profiles(n), cfg).value, -1.0, 1e-6) << n;
  }
}

TEST(CenterOfCharge, AtTheOrigin) {
  for (double n : {0.1, 1.0, 10.0}) EXPECT_NEAR(center_z(profiles(n), cfg).value, 0.0, 1e-12) << n;
}

TEST(MeanSquareRadius, Limits) {
  EXPECT_GT(mean_square_radius(profiles(0.01), cfg).value, 1e3);
  EXPECT_LT(mean_square_radius(profiles(100.0), cfg).value, 1e-2);
}

TEST(MeanSquareRadius, NonRelativisticGaussianWidth) {
  // |psi|^2 ~ Gaussian with <r^2> = 3 / (2 n^2) plus the spinor's own 3/4 Compton^2
  const double n = 0.01;
  EXPECT_NEAR(mean_square_radius(profiles(n), cfg).value / (1.5 / (n * n) + 0.75), 1.0, 1e-4);
}

TEST(MeanSquareRadius, ShrinksMonotonically) {
  double prev = INFINITY;
  for (double n : decades) {
    const double v = mean_square_radius(profiles(n), cfg).value;
    EXPECT_LT(v, prev) << n;
    prev = v;
  }
}

TEST(MagneticMoment, Limits) {
  EXPECT_NEAR(magnetic_moment_total(profiles(0.01), cfg).value, 1.0, 0.01);
  EXPECT_LT(magnetic_moment_total(profiles(100.0), cfg).value, 0.05);
  EXPECT_NEAR(magnetic_moment_spin({0.01}, cfg).value, 1.0, 0.01);
  EXPECT_NEAR(magnetic_moment_spin({100.0}, cfg).value, 2.0 / 3.0, 0.02);
}

TEST(MagneticMoment, ZComponentPointsDown) {
  EXPECT_LT(magnetic_moment_z(profiles(1.0), cfg).value, 0.0);
  EXPECT_NEAR(units::to_bohr_magnetons(-magnetic_moment_z(profiles(1.0), cfg).value),
              magnetic_moment_total(profiles(1.0), cfg).value, 1e-15);
}

TEST(MagneticMoment, MonotoneAndBounded) {
  double prev_total = INFINITY, prev_spin = INFINITY;
  for (double n : decades) {
    const double total = magnetic_moment_total(profiles(n), cfg).value;
    const double spin = magnetic_moment_spin({n}, cfg).value;
    EXPECT_LE(total, prev_total) << n;
    EXPECT_LE(spin, prev_spin) << n;
    EXPECT_GE(spin, 2.0 / 3.0 - 0.02);
    EXPECT_LE(spin, 1.0 + 0.01);
    prev_total = total;
    prev_spin = spin;
  }
}

TEST(MagneticMoment, MatchesFullSpatialQuadratureOfTheCurrent) {
  // (1/2) int (x cross J)_z d^3x on the (r, theta) half-plane with the matrix current
  const auto& prof = profiles(1.0);
  const auto m = detail::polar_quadrature(prof, cfg.nodes_1d, cfg.angular_nodes, [&](const auto&, const Vec3& x) {
    return 0.5 * x.x * current_density_matrix(prof, x).y;
  });
  EXPECT_NEAR(m.value / magnetic_moment_z(prof, cfg).value, 1.0, 1e-9);
}

TEST(AngularMomentum, TotalIsHalfHbar) {
  for (double n : decades) {
    const auto l = angular_momentum_total(profiles(n), cfg);
    EXPECT_NEAR(l.value, 1.0, 1e-2) << n;
    EXPECT_LT(l.error, 1e-3) << n;
  }
  EXPECT_NEAR(angular_momentum_total(profiles(0.1), cfg).value, 1.0, 0.002);
}

TEST(AngularMomentum, TransverseComponentsVanish) {
  QuadratureConfig coarse;
  coarse.grid_nodes = 256;
  coarse.angular_nodes = 12;
  const auto prof = radial_profiles({1.0}, coarse);
  const auto l = angular_momentum_vector(prof, coarse, 12);
  EXPECT_NEAR(l.x, 0.0, 1e-10);
  EXPECT_NEAR(l.y, 0.0, 1e-10);
  EXPECT_NEAR(l.z, 1.0, 1e-4);
}

TEST(AngularMomentum, SpinLimitsAndBounds) {
  EXPECT_NEAR(angular_momentum_spin({0.01}, cfg).value, 1.0, 0.01);
  EXPECT_NEAR(angular_momentum_spin({100.0}, cfg).value, 1.0 / 3.0, 0.02);
  double prev = INFINITY;
  for (double n : decades) {
    const double v = angular_momentum_spin({n}, cfg).value;
    EXPECT_LE(v, prev);
    EXPECT_GE(v, 1.0 / 3.0 - 0.02);
    EXPECT_LE(v, 1.0 + 0.01);
    prev = v;
  }
}

TEST(AngularMomentum, SpinPositionAndMomentumAgree) {
  for (double n : decades) {
    const double mom = angular_momentum_spin({n}, cfg).value;
    const double pos = angular_momentum_spin_position(profiles(n), cfg).value;
    EXPECT_NEAR(pos / mom, 1.0, 1e-4) << n;
  }
}

TEST(Energy, Limits) {
  EXPECT_NEAR(energy_total({0.01}, cfg).value, 1.0, 1e-3);
  const double big = energy_total({100.0}, cfg).value;
  EXPECT_NEAR(big, 112.8, 1.0);
  EXPECT_NEAR(big, 2.0 * 100.0 / std::sqrt(std::numbers::pi), 1.0);
}

TEST(Energy, NonRelativisticExpansion) {
  // 1 + <p^2>/2 with <p^2> = 3 n^2 / 2
  const double n = 0.01;
  EXPECT_NEAR(energy_total({n}, cfg).value, 1.0 + 0.75 * n * n, 1e-8);
}

TEST(Energy, StrictlyIncreasing) {
  double prev = 0.0;
  for (double n : decades) {
    const double v = energy_total({n}, cfg).value;
    EXPECT_GT(v, prev);
    prev = v;
  }
}

TEST(Energy, PositionAndMomentumAgree) {
  for (double n : decades) {
    const double mom = energy_total({n}, cfg).value;
    const double pos = energy_total_position(profiles(n), cfg).value;
    EXPECT_NEAR(pos / mom, 1.0, 1e-4) << n;
  }
}

TEST(Projection, QTermLimits) {
  EXPECT_NEAR(x_Qx({0.01}, cfg).value, 0.75, 0.01);
  EXPECT_LT(x_Qx({100.0}, cfg).value, 0.01);
  EXPECT_NEAR(x_qx_integrand(0.0), 0.75, 1e-15);
  double prev = INFINITY;
  for (double n : decades) {
    const double v = x_Qx({n}, cfg).value;
    EXPECT_GE(v, 0.0);
    EXPECT_LT(v, prev);
    prev = v;
  }
}

TEST(Projection, SplitIdentityAgainstProjectorOracle) {
  for (double n : {0.1, 1.0, 10.0}) {
    const auto msr = mean_square_radius(profiles(n), cfg);
    const auto xqx = x_Qx({n}, cfg);
    const auto xpx = x_Px(msr, xqx);
    const auto split = oracle::projector_split({n}, cfg);
    EXPECT_NEAR(split.mean_square_radius / msr.value, 1.0, 1e-6) << n;
    EXPECT_NEAR(split.xQx / xqx.value, 1.0, 1e-6) << n;
    EXPECT_NEAR(split.xPx / xpx.value, 1.0, 1e-6) << n;
    EXPECT_LT(std::abs(msr.value - split.xPx - split.xQx) / msr.value, 1e-4) << n;
    EXPECT_GE(xpx.value, -1e-6) << n;
  }
}

TEST(Projection, PTermLimits) {
  const auto small = x_Px(mean_square_radius(profiles(0.01), cfg), x_Qx({0.01}, cfg));
  EXPECT_NEAR(small.value, mean_square_radius(profiles(0.01), cfg).value - 0.75, 0.01);
  const auto msr_big = mean_square_radius(profiles(100.0), cfg);
  EXPECT_LT(x_Px(msr_big, x_Qx({100.0}, cfg)).value, msr_big.value);
}

TEST(ComputeObservables, AllKeysByDefault) {
  const auto o = compute_observables({1.0}, cfg);
  for (const auto& k : observable_keys()) EXPECT_TRUE(o.has(k)) << k;
  EXPECT_EQ(o.n, 1.0);
  EXPECT_EQ(o.mu_total.value, magnetic_moment_total(profiles(1.0), cfg).value);
  EXPECT_EQ(o.xPx.value, o.mean_square_radius.value - o.xQx.value);
}

TEST(ComputeObservables, SubsetOnly) {
  const auto o = compute_observables({1.0}, cfg, {"mu_spin", "energy_total"});
  EXPECT_TRUE(o.has("mu_spin"));
  EXPECT_TRUE(o.has("energy_total"));
  EXPECT_FALSE(o.has("mu_total"));
  EXPECT_FALSE(o.has("mean_square_radius"));
  const auto p = compute_observables({1.0}, cfg, {"xPx"});
  EXPECT_TRUE(p.has("mean_square_radius"));
  EXPECT_TRUE(p.has("xQx"));
}

TEST(ComputeObservables, Errors) {
  EXPECT_THROW(compute_observables({1.0}, cfg, {"mass"}), DomainError);
  EXPECT_THROW(compute_observables({-1.0}, cfg), DomainError);
  QuadratureConfig bad;
  bad.abs_tol = -1.0;
  EXPECT_THROW(compute_observables({1.0}, bad), DomainError);
}

TEST(ComputeObservables, QuadratureFailureIsReported) {
  QuadratureConfig tight;
  tight.rel_tol = 1e-15;
  tight.abs_tol = 1e-30;
  tight.max_panels = 2;
  EXPECT_THROW(compute_observables({1.0}, tight, {"mu_spin"}), QuadratureError);
}
