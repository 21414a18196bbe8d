#include <doctest.h>

#include <cmath>
#include <vector>

#include "ektau/classifier_verify.hpp"
#include "ektau/errors.hpp"
#include "ektau/model_surfaces.hpp"

using namespace ektau;

namespace {

std::vector<ModelSurface> assorted_surfaces() {
  return {make_cylinder(-1.0, 0.5, 0.3), make_slice(1.0, 0.2),    make_S(0.3, -1.0, 0.5),
          make_C(0.2, -1.0, 0.5),        make_P(0.2, -1.0, 0.4),  make_perturbed_slice(-1.0, 0.0),
          make_S(0.6, 1.0, 0.25),        make_cylinder(0.0, 0.5, 0.3)};
}

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

}  // namespace

TEST_CASE("horizontal slice in a product space is totally geodesic") {
  const ModelSurface slice = make_slice(-1.0, 0.3);
  for (auto [u, v] : interior_points(slice.patch.domain(), {5, 5})) {
    const ExtrinsicSample s = sample_at(slice.patch, u, v);
    CHECK(s.shape.norm() < 1e-12);
    CHECK(std::abs(s.nu) == doctest::Approx(1.0));
    CHECK(s.gauss == doctest::Approx(-1.0));
  }
}

TEST_CASE("second fundamental form route matches differences of the normal") {
  for (const ModelSurface& m : assorted_surfaces()) {
    CAPTURE(family_name(m.spec.family));
    for (auto [u, v] : interior_points(m.patch.domain(), {4, 4})) {
      const Mat2 a = shape_operator(m.patch, u, v);
      const Mat2 fd = shape_operator_fd(m.patch, u, v);
      CHECK((a - fd).cwiseAbs().maxCoeff() < 1e-6);
      CHECK(std::abs(a(0, 1) - a(1, 0)) < 1e-12);
    }
  }
}

TEST_CASE("Gauss equation against the Brioschi curvature of the induced metric") {
  for (const ModelSurface& m : assorted_surfaces()) {
    CAPTURE(family_name(m.spec.family));
    for (auto [u, v] : interior_points(m.patch.domain(), {6, 6})) {
      CHECK(std::abs(gauss_K(m.patch, u, v) - intrinsic_gauss_fd(m.patch, u, v)) < 1e-4);
    }
  }
}

TEST_CASE("gradient of nu and derivative of T from their identities") {
  for (const ModelSurface& m : assorted_surfaces()) {
    CAPTURE(family_name(m.spec.family));
    const double tau = m.patch.space().tau();
    for (auto [u, v] : interior_points(m.patch.domain(), {4, 4})) {
      const ExtrinsicSample s = sample_at(m.patch, u, v);
      CHECK((grad_nu(s, tau) - grad_nu_fd(m.patch, u, v)).norm() < 1e-6);
      CHECK((nabla_T_identity(s, tau) - nabla_T_fd(m.patch, u, v)).cwiseAbs().maxCoeff() < 1e-5);
    }
  }
}

TEST_CASE("q does not depend on the choice of normal") {
  for (const ModelSurface& m : assorted_surfaces()) {
    const SurfacePatch flipped = m.patch.with_normal_sign(-m.patch.normal_sign());
    for (auto [u, v] : interior_points(m.patch.domain(), {3, 3})) {
      const ExtrinsicSample a = sample_at(m.patch, u, v), b = sample_at(flipped, u, v);
      CHECK(b.mean == doctest::Approx(-a.mean));
      CHECK(b.nu == doctest::Approx(-a.nu));
      CHECK(std::abs(a.q - b.q) < 1e-9);
    }
  }
}

TEST_CASE("Nil cylinder with H = 0.3 has principal curvatures 0.3 +- sqrt(0.34)") {
  const ModelSurface cyl = make_cylinder(0.0, 0.5, 0.3);
  const ExtrinsicSample s = sample_at(cyl.patch, 0.1, -0.2);
  CHECK(s.k1 == doctest::Approx(0.3 + std::sqrt(0.34)).epsilon(1e-10));
  CHECK(s.k2 == doctest::Approx(0.3 - std::sqrt(0.34)).epsilon(1e-10));
  CHECK(s.det_shape() == doctest::Approx(-0.25).epsilon(1e-10));
  CHECK(std::abs(s.nu) < 1e-14);
}

TEST_CASE("Gauss curvature identity K = det A + tau^2 + (kappa - 4 tau^2) nu^2") {
  const ModelSurface c = make_C(0.2, -1.0, 0.5);
  const double gap = c.patch.space().bundle_gap();
  for (auto [u, v] : interior_points(c.patch.domain(), {3, 3})) {
    const ExtrinsicSample s = sample_at(c.patch, u, v);
    CHECK(s.gauss == doctest::Approx(s.det_shape() + 0.25 + gap * s.nu * s.nu).epsilon(1e-13));
  }
}

TEST_CASE("complex form omega") {
  const ModelSurface p = make_P(0.2, -1.0, 0.4);
  const ChartedSpace& space = p.patch.space();
  const ExtrinsicSample s = sample_at(p.patch, 0.1, 1.2);

  SUBCASE("symmetric with the expected real and imaginary parts") {
    const Vec3 a = s.xu + 0.3 * s.xv, b = s.xv - 2.0 * s.xu;
    const auto ab = omega_form(space, s, a, b), ba = omega_form(space, s, b, a);
    CHECK(std::abs(ab - ba) < 1e-12);
    const Vec2 ca = s.to_frame(space, a), cb = s.to_frame(space, b);
    const double second = ca.dot(s.shape * cb);
    CHECK(ab.imag() == doctest::Approx(2.0 * space.tau() * second));
  }
  SUBCASE("the normal is rejected") {
    CHECK(error_kind([&] { omega_form(space, s, s.normal, s.xu); }) == ErrorKind::Usage);
  }
  SUBCASE("the (2,0) part vanishes on a parabolic helicoid") {
    for (double angle : {0.0, 0.4, 1.3}) {
      const Vec2 w(std::cos(angle), std::sin(angle));
      CHECK(std::abs(omega_20(space, s, w)) < 1e-10);
    }
  }
  SUBCASE("S has vanishing differential, a generic cylinder does not") {
    const ModelSurface sm = make_S(0.3, -1.0, 0.5);
    const ExtrinsicSample ss = sample_at(sm.patch, 0.2, sm.patch.domain().v_mid());
    CHECK(std::abs(omega_20(sm.patch.space(), ss, Vec2(1.0, 0.0))) < 1e-10);

    const ModelSurface cyl = make_cylinder(-1.0, 0.0, 0.4);
    const ExtrinsicSample sc = sample_at(cyl.patch, 0.0, 0.0);
    CHECK(std::abs(omega_20(cyl.patch.space(), sc, Vec2(1.0, 0.0))) > 0.05);
  }
}

TEST_CASE("degenerate immersions and umbilic points are reported") {
  const ChartedSpace space = ChartedSpace::make(-1.0, 0.0);
  const SurfacePatch flat(space, [](double u, double v) { return Vec3(u + v, u + v, 0.0); },
                          {-0.1, 0.1, -0.1, 0.1});
  CHECK(error_kind([&] { frame_at(flat, 0.0, 0.0); }) == ErrorKind::Immersion);

  const ModelSurface slice = make_slice(-1.0, 0.0);
  CHECK(error_kind([&] { frame_christoffels(slice.patch, 0.0, 0.0); }) == ErrorKind::Umbilic);
}
