#include <doctest.h>

#include <cmath>
#include <random>

#include "ektau/errors.hpp"
#include "ektau/jacobi_parallel.hpp"
#include "oracles.hpp"

using namespace ektau;

namespace {

const std::pair<double, double> kMatrix[] = {{-1.0, 0.0}, {1.0, 0.0}, {0.0, 0.5}, {-1.0, 0.5}, {1.0, 0.25}};

double max_abs(const Christoffel& a, const Christoffel& b) {
  double m = 0.0;
  for (int k = 0; k < 3; ++k) m = std::max(m, (a[k] - b[k]).cwiseAbs().maxCoeff());
  return m;
}

}  // namespace

TEST_CASE("metric in the standard chart of Nil") {
  const ChartedSpace nil = ChartedSpace::make(0.0, 0.5);
  CHECK((nil.metric_at(Vec3::Zero()) - Mat3::Identity()).norm() < 1e-15);

  Mat3 expected;
  expected << 1.0, 0.0, 0.0, 0.0, 1.25, 0.5, 0.0, 0.5, 1.0;
  CHECK((nil.metric_at(Vec3(1.0, 0.0, 0.0)) - expected).norm() < 1e-15);
}

TEST_CASE("halfspace metric at y = 1 is the identity for H2 x R") {
  const ChartedSpace h2r = ChartedSpace::make(-1.0, 0.0, Chart::Halfspace);
  CHECK((h2r.metric_at(Vec3(0.0, 1.0, 0.0)) - Mat3::Identity()).norm() < 1e-15);
}

TEST_CASE("construction and domain errors") {
  auto kind_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return static_cast<int>(e.kind());
    }
    return -1;
  };
  CHECK(kind_of([] { ChartedSpace::make(0.0, 0.0); }) == static_cast<int>(ErrorKind::Parameter));
  CHECK(kind_of([] { ChartedSpace::make(1.0, 0.5); }) == static_cast<int>(ErrorKind::Parameter));
  CHECK(kind_of([] { ChartedSpace::make(1.0, 0.0, Chart::Halfspace); }) ==
        static_cast<int>(ErrorKind::Parameter));

  const ChartedSpace h2r = ChartedSpace::make(-1.0, 0.0);
  CHECK(kind_of([&] { h2r.metric_at(Vec3(3.0, 0.0, 0.0)); }) == static_cast<int>(ErrorKind::Domain));
  const ChartedSpace half = ChartedSpace::make(-1.0, 0.3, Chart::Halfspace);
  CHECK(kind_of([&] { half.metric_at(Vec3(0.0, -1.0, 0.0)); }) == static_cast<int>(ErrorKind::Domain));

  const AmbientVector x{Vec3::Zero(), Vec3::UnitX()}, y{Vec3(0.1, 0.0, 0.0), Vec3::UnitY()};
  CHECK(kind_of([&] { h2r.curvature_R(x, y, x); }) == static_cast<int>(ErrorKind::Usage));
}

TEST_CASE("Christoffel symbols agree with differences of the metric") {
  std::mt19937_64 rng(11);
  for (const auto& [kappa, tau] : kMatrix) {
    for (Chart chart : {Chart::Standard, Chart::Halfspace}) {
      if (chart == Chart::Halfspace && kappa >= 0.0) continue;
      const ChartedSpace space = ChartedSpace::make(kappa, tau, chart);
      for (int i = 0; i < 20; ++i) {
        const Vec3 p = oracle::random_point(space, rng);
        CAPTURE(kappa);
        CAPTURE(tau);
        CHECK(max_abs(space.christoffel_at(p), oracle::christoffel_from_metric(space, p)) < 1e-8);
      }
    }
  }
}

TEST_CASE("H2 x R halfspace: Gamma^x_xy = -1/y") {
  const ChartedSpace space = ChartedSpace::make(-1.0, 0.0, Chart::Halfspace);
  const Vec3 p(0.2, 0.7, 0.0);
  CHECK(space.christoffel_at(p)[0](0, 1) == doctest::Approx(-1.0 / 0.7).epsilon(1e-14));
}

TEST_CASE("curvature tensor against the Riemann tensor of the metric") {
  std::mt19937_64 rng(12);
  for (const auto& [kappa, tau] : kMatrix) {
    for (Chart chart : {Chart::Standard, Chart::Halfspace}) {
      if (chart == Chart::Halfspace && kappa >= 0.0) continue;
      const ChartedSpace space = ChartedSpace::make(kappa, tau, chart);
      for (int i = 0; i < 10; ++i) {
        const Vec3 p = oracle::random_point(space, rng);
        const Vec3 x = oracle::random_vector(rng), y = oracle::random_vector(rng), z = oracle::random_vector(rng);
        const Vec3 ref = oracle::riemann_from_metric(space, p, x, y, z);
        const Vec3 got = space.curvature_R(p, x, y, z);
        CHECK((got - ref).norm() / std::max(1.0, ref.norm()) < 1e-5);
      }
    }
  }
}

TEST_CASE("sectional curvatures of horizontal and vertical planes") {
  std::mt19937_64 rng(13);
  for (const auto& [kappa, tau] : kMatrix) {
    const ChartedSpace space = ChartedSpace::make(kappa, tau);
    const Vec3 p = oracle::random_point(space, rng);
    Mat3 start;
    start << Vec3::UnitZ(), oracle::random_vector(rng), oracle::random_vector(rng);
    const Mat3 f = oracle::orthonormal_frame(space, p, start);
    const Vec3 xi = f.col(0), x = f.col(1), y = f.col(2);
    CHECK(oracle::curvature_4(space, p, x, y, y, x) == doctest::Approx(kappa - 3.0 * tau * tau).epsilon(1e-10));
    CHECK(oracle::curvature_4(space, p, x, xi, xi, x) == doctest::Approx(tau * tau).epsilon(1e-10));
  }
}

TEST_CASE("xi = d/dz is a unit Killing field with D_v xi = tau v ^ xi") {
  std::mt19937_64 rng(14);
  for (const auto& [kappa, tau] : kMatrix) {
    for (Chart chart : {Chart::Standard, Chart::Halfspace}) {
      if (chart == Chart::Halfspace && kappa >= 0.0) continue;
      const ChartedSpace space = ChartedSpace::make(kappa, tau, chart);
      for (int i = 0; i < 50; ++i) {
        const Vec3 p = oracle::random_point(space, rng);
        const Vec3 v = oracle::random_vector(rng);
        const Vec3 xi = space.killing_xi(p);
        CHECK(space.norm(p, xi) == doctest::Approx(1.0).epsilon(1e-14));
        const Vec3 lhs = ChartedSpace::contract(oracle::christoffel_from_metric(space, p), v, xi);
        const Vec3 rhs = tau * space.cross(p, v, xi);
        CHECK((lhs - rhs).norm() < 1e-7);
      }
    }
  }
}

TEST_CASE("cross product is metric orthogonal with the Lagrange norm") {
  std::mt19937_64 rng(15);
  const ChartedSpace space = ChartedSpace::make(-1.0, 0.5, Chart::Halfspace);
  for (int i = 0; i < 20; ++i) {
    const Vec3 p = oracle::random_point(space, rng);
    const Vec3 u = oracle::random_vector(rng), v = oracle::random_vector(rng);
    const Vec3 w = space.cross(p, u, v);
    CHECK(std::abs(space.inner(p, w, u)) < 1e-12);
    CHECK(std::abs(space.inner(p, w, v)) < 1e-12);
    const double uu = space.inner(p, u, u), vv = space.inner(p, v, v), uv = space.inner(p, u, v);
    CHECK(space.inner(p, w, w) == doctest::Approx(uu * vv - uv * uv).epsilon(1e-12));
    CHECK((space.cross(p, v, u) + w).norm() < 1e-14);
  }
}

TEST_CASE("geodesics") {
  SUBCASE("the vertical fiber is traced exactly") {
    const ChartedSpace nil = ChartedSpace::make(0.0, 0.5);
    const GeodesicState end = geodesic_flow(nil, {Vec3::Zero(), Vec3::UnitZ()}, 1.7);
    CHECK((end.point - Vec3(0.0, 0.0, 1.7)).norm() < 1e-12);
    CHECK((end.velocity - Vec3::UnitZ()).norm() < 1e-12);
  }
  SUBCASE("vertical line of the hyperbolic halfplane") {
    const ChartedSpace h2r = ChartedSpace::make(-1.0, 0.0, Chart::Halfspace);
    const GeodesicState end = geodesic_flow(h2r, {Vec3(0.0, 1.0, 0.0), Vec3(0.0, 1.0, 0.0)}, 1.0);
    CHECK((end.point - Vec3(0.0, std::exp(1.0), 0.0)).norm() < 1e-9);
  }
  SUBCASE("speed is preserved") {
    const ChartedSpace berger = ChartedSpace::make(1.0, 0.25);
    const Vec3 p(0.1, -0.2, 0.0), v(0.3, 0.5, -0.4);
    const GeodesicState end = geodesic_flow(berger, {p, v}, 2.0);
    CHECK(berger.norm(end.point, end.velocity) == doctest::Approx(berger.norm(p, v)).epsilon(1e-9));
  }
  SUBCASE("leaving the chart reports the exit time") {
    const ChartedSpace h2r = ChartedSpace::make(-1.0, 0.0, Chart::Halfspace);
    try {
      geodesic_flow(h2r, {Vec3(0.0, 1.0, 0.0), Vec3(0.0, -1.0, 0.0)}, 40.0, 1e-2);
      FAIL("expected an escape");
    } catch (const EscapeError& e) {
      CHECK(e.kind() == ErrorKind::Escape);
      // y(t) = exp(-t) crosses the 1e-9 boundary layer near t = 20.7.
      CHECK(e.exit_parameter() == doctest::Approx(std::log(1e9)).epsilon(0.01));
    }
  }
}
