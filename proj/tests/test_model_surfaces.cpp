#include <doctest.h>

#include <cmath>
#include <vector>

#include "ektau/classifier_verify.hpp"
#include "ektau/errors.hpp"
#include "ektau/model_surfaces.hpp"

using namespace ektau;

namespace {

template <class Fn>
ErrorKind error_kind(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no exception");
  return ErrorKind::Io;
}

std::vector<ExtrinsicSample> samples(const ModelSurface& m, Grid grid = {12, 12}) {
  std::vector<ExtrinsicSample> out;
  for (auto [u, v] : interior_points(m.patch.domain(), grid)) out.push_back(sample_at(m.patch, u, v));
  return out;
}

}  // namespace

TEST_CASE("every model patch has the requested constant mean curvature") {
  const std::vector<ModelSurface> patches = {
      make_cylinder(-1.0, 0.0, 0.4), make_cylinder(1.0, 0.25, 0.3), make_cylinder(0.0, 0.5, 0.0),
      make_S(0.1, -1.0, 0.0),        make_S(1.0, 1.0, 0.0),         make_S(0.3, -1.0, 0.5),
      make_S(0.4, 0.0, 0.5),         make_C(0.25, -1.0, 0.0),       make_C(0.25, -1.0, 0.3),
      make_C(0.2, -1.0, 0.5, -1),    make_P(0.25, -1.0, 0.0),       make_P(0.2, -1.0, 0.4)};
  for (const ModelSurface& m : patches) {
    CAPTURE(family_name(m.spec.family));
    CAPTURE(m.spec.H);
    CAPTURE(m.spec.kappa);
    CAPTURE(m.spec.tau);
    for (const ExtrinsicSample& s : samples(m)) CHECK(std::abs(s.mean - m.spec.H) < 1e-5);
  }
}

TEST_CASE("cylinders") {
  SUBCASE("geodesic cylinder in H2 x R is a totally geodesic vertical plane") {
    const ModelSurface m = make_cylinder(-1.0, 0.0, 0.0);
    for (const ExtrinsicSample& s : samples(m, {5, 5})) {
      CHECK(s.shape.norm() < 1e-12);
      CHECK(std::abs(s.nu) < 1e-14);
    }
  }
  SUBCASE("nu vanishes and det A = -tau^2") {
    for (auto [kappa, tau, H] : std::vector<std::array<double, 3>>{{-1, 0, 0.7}, {0, 0.5, 0.3}, {1, 0.25, 0.4}}) {
      for (const ExtrinsicSample& s : samples(make_cylinder(kappa, tau, H), {5, 5})) {
        CHECK(std::abs(s.nu) < 1e-12);
        CHECK(std::abs(s.det_shape() + tau * tau) < 1e-10);
      }
    }
  }
  SUBCASE("q = (4H^2 + kappa)^2 / 4") {
    for (auto [kappa, tau, H] : std::vector<std::array<double, 3>>{{-1, 0, 0.4}, {-1, 0.5, 0.3}, {1, 0.25, 0.3}}) {
      const double expected = std::pow(4.0 * H * H + kappa, 2) / 4.0;
      for (const ExtrinsicSample& s : samples(make_cylinder(kappa, tau, H), {5, 5})) {
        CHECK(s.q == doctest::Approx(expected).epsilon(1e-10));
      }
    }
    for (const ExtrinsicSample& s : samples(make_cylinder(0.0, 0.5, 0.0), {5, 5})) CHECK(std::abs(s.q) < 1e-12);
    for (const ExtrinsicSample& s : samples(make_cylinder(-1.0, 0.3, 0.5), {5, 5})) CHECK(std::abs(s.q) < 1e-12);
  }
  SUBCASE("base curve has geodesic curvature 2H") {
    // The horizontal part of N is the inward unit normal of the base curve, so
    // <A E1, E1> on a vertical cylinder is the geodesic curvature of the base.
    for (const ExtrinsicSample& s : samples(make_cylinder(1.0, 0.0, 0.35), {7, 3})) {
      CHECK(s.shape(0, 0) == doctest::Approx(0.7).epsilon(1e-8));
    }
  }
}

TEST_CASE("horizontal slices") {
  for (const ExtrinsicSample& s : samples(make_slice(-1.0, 0.0), {5, 5})) CHECK(s.gauss == doctest::Approx(-1.0));
  for (const ExtrinsicSample& s : samples(make_slice(1.0, 2.0), {5, 5})) {
    CHECK(std::abs(s.k1) < 1e-14);
    CHECK(std::abs(s.k2) < 1e-14);
    CHECK(s.nu * s.nu == 1.0);
    CHECK(s.point(2) == 2.0);
  }
  CHECK(error_kind([] { make_slice(0.0, 0.0); }) == ErrorKind::Parameter);
}

TEST_CASE("rotational surfaces S") {
  SUBCASE("the horizontal umbrella stays in z = 0") {
    const ModelSurface m = make_S(0.0, -1.0, 0.5);
    for (auto [u, v] : node_points(m.patch.domain(), {6, 6})) CHECK(std::abs(m.patch.position(u, v)(2)) < 1e-12);
    for (const ExtrinsicSample& s : samples(m, {6, 6})) CHECK(std::abs(s.q) < 1e-10);
  }
  SUBCASE("q vanishes") {
    for (const ModelSurface& m : {make_S(0.1, -1.0, 0.0), make_S(0.3, -1.0, 0.5), make_S(0.6, 1.0, 0.25),
                                  make_S(1.0, 1.0, 0.0)}) {
      for (const ExtrinsicSample& s : samples(m)) CHECK(std::abs(s.q) < 1e-6);
    }
  }
  SUBCASE("domain ends before v = 1/H") {
    const ModelSurface m = make_S(1.0, 1.0, 0.0);
    CHECK(m.patch.domain().v1 < 1.0);
    CHECK(m.patch.domain().v1 > 0.99);
    CHECK(error_kind([] { make_S(1.0, 1.0, 0.0, 1e-3, 1.5); }) == ErrorKind::Domain);
  }
}

TEST_CASE("screw motion surfaces C") {
  SUBCASE("minimal helicoid of pitch 4 tau / kappa") {
    const ModelSurface m = make_C(0.0, -1.0, 0.5);
    for (auto [u, v] : node_points(m.patch.domain(), {5, 5})) {
      CHECK(m.patch.position(u, v)(2) == doctest::Approx(-2.0 * u).epsilon(1e-12));
    }
  }
  SUBCASE("tau = 0 gives a surface of revolution") {
    const ModelSurface m = make_C(0.25, -1.0, 0.0);
    const double v = m.patch.domain().v_mid();
    const Vec3 a = m.patch.position(0.0, v), b = m.patch.position(0.7, v);
    CHECK(a(2) == doctest::Approx(b(2)).epsilon(1e-14));
    CHECK(a.head<2>().norm() == doctest::Approx(b.head<2>().norm()).epsilon(1e-14));
  }
  SUBCASE("q vanishes and both branches are admissible") {
    for (const ModelSurface& m : {make_C(0.25, -1.0, 0.3), make_C(0.25, -1.0, 0.3, -1), make_C(0.2, -1.0, 0.5)}) {
      for (const ExtrinsicSample& s : samples(m)) CHECK(std::abs(s.q) < 1e-6);
    }
  }
  CHECK(error_kind([] { make_C(0.5, -1.0, 0.0); }) == ErrorKind::Parameter);
  CHECK(error_kind([] { make_C(0.1, 1.0, 0.0); }) == ErrorKind::Parameter);
}

TEST_CASE("parabolic helicoids P") {
  SUBCASE("slope and angle function for H = 1/4 in H2 x R") {
    const ModelSurface m = make_P(0.25, -1.0, 0.0);
    CHECK(parabolic_helicoid_slope(0.25, -1.0, 0.0) == doctest::Approx(0.5 / std::sqrt(0.75)).epsilon(1e-15));
    for (const ExtrinsicSample& s : samples(m)) {
      CHECK(s.nu * s.nu == doctest::Approx(0.75).epsilon(1e-12));
      CHECK(std::abs(s.q) < 1e-10);
    }
  }
  SUBCASE("minimal case is a slice") {
    const ModelSurface m = make_P(0.0, -1.0, 0.0);
    for (const ExtrinsicSample& s : samples(m, {5, 5})) {
      CHECK(s.nu * s.nu == doctest::Approx(1.0));
      CHECK(s.shape.norm() < 1e-12);
    }
  }
  SUBCASE("principal curvatures are constant on a 50 x 50 grid") {
    const ModelSurface m = make_P(0.2, -1.0, 0.4);
    double mean1 = 0.0, mean2 = 0.0, var1 = 0.0, var2 = 0.0;
    const auto all = samples(m, {50, 50});
    for (const ExtrinsicSample& s : all) {
      mean1 += s.k1 / all.size();
      mean2 += s.k2 / all.size();
    }
    for (const ExtrinsicSample& s : all) {
      var1 += std::pow(s.k1 - mean1, 2) / all.size();
      var2 += std::pow(s.k2 - mean2, 2) / all.size();
      CHECK(s.nu * s.nu == doctest::Approx((0.16 - 1.0) / (-1.0 - 0.64)).epsilon(1e-12));
    }
    CHECK(var1 < 1e-10);
    CHECK(var2 < 1e-10);
  }
  CHECK(error_kind([] { make_P(0.5, -1.0, 0.2); }) == ErrorKind::Parameter);
  CHECK(error_kind([] { make_P(0.1, 1.0, 0.0); }) == ErrorKind::Parameter);
}

TEST_CASE("sister parameters") {
  const SisterParameters a = sister_parameters(0.0, -1.0, 0.5);
  CHECK(a.H == doctest::Approx(0.5));
  CHECK(a.kappa == doctest::Approx(-2.0));
  CHECK(a.tau == 0.0);
  CHECK(4.0 * a.H * a.H + a.kappa == doctest::Approx(-1.0));

  const SisterParameters b = sister_parameters(0.3, -1.0, 0.0);
  CHECK(b.H == 0.3);
  CHECK(b.kappa == -1.0);

  const SisterParameters c = sister_parameters(1.0, 0.0, 0.5);
  CHECK(c.H == doctest::Approx(std::sqrt(1.25)));
  CHECK(c.kappa == doctest::Approx(-1.0));
}

TEST_CASE("family names round trip") {
  for (Family f : {Family::Cylinder, Family::Slice, Family::S, Family::C, Family::P, Family::PerturbedSlice}) {
    CHECK(parse_family(family_name(f)) == f);
  }
  CHECK(parse_family("CYLINDER") == Family::Cylinder);
  CHECK(error_kind([] { parse_family("torus"); }) == ErrorKind::Usage);
}
