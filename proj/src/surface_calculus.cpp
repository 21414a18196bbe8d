#include "ektau/surface_calculus.hpp"

#include <cmath>
#include <type_traits>
#include <utility>

#include "ektau/errors.hpp"

namespace ektau {

namespace {

constexpr double kUmbilicTolerance = 1e-8;
constexpr double kTangencyTolerance = 1e-7;

double principal_gap(const Mat2& a) {
  const double half = 0.5 * (a(0, 0) - a(1, 1));
  return 2.0 * std::sqrt(half * half + a(0, 1) * a(0, 1));
}

// Unit eigenvector (frame components) belonging to the larger eigenvalue.
Vec2 leading_eigenvector(const Mat2& a) {
  Eigen::SelfAdjointEigenSolver<Mat2> solver(a);
  return solver.eigenvectors().col(1);
}

// Fourth-order central difference of a vector-valued function of one variable.
template <typename F>
auto central4(F&& f, double h) {
  using Value = std::decay_t<decltype(f(h))>;
  return Value((8.0 * (f(h) - f(-h)) - (f(2.0 * h) - f(-2.0 * h))) / (12.0 * h));
}

struct NormalData {
  Vec3 x, xu, xv, normal;
  Mat3 g;
};

NormalData normal_data(const SurfacePatch& patch, double u, double v) {
  const SurfaceJet j = patch.jet(u, v);
  const ChartedSpace& space = patch.space();
  NormalData d{j.x, j.xu, j.xv, Vec3::Zero(), space.metric_at(j.x)};
  const Vec3 n = space.cross(j.x, j.xu, j.xv);
  const double len = std::sqrt(n.dot(d.g * n));
  const double scale = std::sqrt(j.xu.dot(d.g * j.xu) * j.xv.dot(d.g * j.xv));
  if (!(len > 1e-12 * scale) || !std::isfinite(len)) {
    fail(ErrorKind::Immersion, "degenerate tangent plane: X_u and X_v are linearly dependent");
  }
  d.normal = patch.normal_sign() * n / len;
  return d;
}

// Parameter steps giving roughly equal ambient displacement along X_u and X_v.
std::pair<double, double> scaled_steps(const ExtrinsicSample& s, double step) {
  return {step / std::sqrt(s.first_form(0, 0)), step / std::sqrt(s.first_form(1, 1))};
}

// D_{X_a} W for a chart-vector field W along the patch, a = 0 (u) or 1 (v).
template <typename Field>
std::array<Vec3, 2> coordinate_derivatives(const SurfacePatch& patch, const ExtrinsicSample& s,
                                           Field&& field, double step) {
  const auto [hu, hv] = scaled_steps(s, step);
  const Christoffel gamma = patch.space().christoffel_at(s.point);
  const Vec3 w = field(s.u, s.v);
  const Vec3 du = central4([&](double h) { return Vec3(field(s.u + h, s.v)); }, hu);
  const Vec3 dv = central4([&](double h) { return Vec3(field(s.u, s.v + h)); }, hv);
  return {du + ChartedSpace::contract(gamma, s.xu, w), dv + ChartedSpace::contract(gamma, s.xv, w)};
}

}  // namespace

SurfacePatch::SurfacePatch(ChartedSpace space, Immersion immersion, ParamDomain domain,
                           int normal_sign, JetFunction jet)
    : space_(space),
      immersion_(std::make_shared<const Immersion>(std::move(immersion))),
      jet_(std::make_shared<const JetFunction>(std::move(jet))),
      domain_(domain),
      normal_sign_(normal_sign >= 0 ? 1 : -1) {
  if (!(domain.u1 > domain.u0) || !(domain.v1 > domain.v0)) {
    fail(ErrorKind::Parameter, "patch domain must be a nondegenerate rectangle");
  }
}

SurfaceJet SurfacePatch::jet(double u, double v) const {
  if (*jet_) return (*jet_)(u, v);
  return jet_fd(u, v);
}

SurfaceJet SurfacePatch::jet_fd(double u, double v, double step) const {
  const auto& f = *immersion_;
  SurfaceJet j;
  j.x = f(u, v);
  const double h = step;
  const Vec3 up1 = f(u + h, v), um1 = f(u - h, v), up2 = f(u + 2 * h, v), um2 = f(u - 2 * h, v);
  const Vec3 vp1 = f(u, v + h), vm1 = f(u, v - h), vp2 = f(u, v + 2 * h), vm2 = f(u, v - 2 * h);
  j.xu = (8.0 * (up1 - um1) - (up2 - um2)) / (12.0 * h);
  j.xv = (8.0 * (vp1 - vm1) - (vp2 - vm2)) / (12.0 * h);
  j.xuu = (16.0 * (up1 + um1) - (up2 + um2) - 30.0 * j.x) / (12.0 * h * h);
  j.xvv = (16.0 * (vp1 + vm1) - (vp2 + vm2) - 30.0 * j.x) / (12.0 * h * h);
  j.xuv = (f(u + h, v + h) - f(u + h, v - h) - f(u - h, v + h) + f(u - h, v - h)) / (4.0 * h * h);
  return j;
}

SurfacePatch SurfacePatch::with_normal_sign(int sign) const {
  SurfacePatch copy = *this;
  copy.normal_sign_ = sign >= 0 ? 1 : -1;
  return copy;
}

SurfacePatch SurfacePatch::with_domain(ParamDomain domain) const {
  SurfacePatch copy = *this;
  copy.domain_ = domain;
  return copy;
}

Vec2 ExtrinsicSample::to_frame(const ChartedSpace& space, const Vec3& w) const {
  const Mat3 g = space.metric_at(point);
  return Vec2(w.dot(g * e1), w.dot(g * e2));
}

Vec2 grad_nu(const ExtrinsicSample& s, double tau) { return -s.shape * s.t + tau * rotate_j(s.t); }

double ar_q_from(double kappa, double tau, double mean, double det_shape, double nu,
                 const Vec2& grad_nu) {
  const double gap = kappa - 4.0 * tau * tau;
  return (4.0 * mean * mean + kappa - gap * nu * nu) *
             (mean * mean - det_shape + 0.25 * gap * (1.0 - nu * nu)) -
         gap * grad_nu.squaredNorm();
}

ExtrinsicSample sample_at(const SurfacePatch& patch, double u, double v) {
  const ChartedSpace& space = patch.space();
  const SurfaceJet j = patch.jet(u, v);
  space.require_domain(j.x);
  const Mat3 g = space.metric_at(j.x);
  const Christoffel gamma = space.christoffel_at(j.x);
  auto ip = [&](const Vec3& a, const Vec3& b) { return a.dot(g * b); };

  ExtrinsicSample s;
  s.u = u;
  s.v = v;
  s.point = j.x;
  s.xu = j.xu;
  s.xv = j.xv;
  s.first_form << ip(j.xu, j.xu), ip(j.xu, j.xv), ip(j.xu, j.xv), ip(j.xv, j.xv);

  const Vec3 n = space.cross(j.x, j.xu, j.xv);
  const double n_len = std::sqrt(ip(n, n));
  if (!(n_len > 1e-12 * std::sqrt(s.first_form(0, 0) * s.first_form(1, 1))) ||
      !std::isfinite(n_len)) {
    fail(ErrorKind::Immersion, "degenerate tangent plane: X_u and X_v are linearly dependent");
  }
  s.normal = patch.normal_sign() * n / n_len;

  const double xu_len = std::sqrt(s.first_form(0, 0));
  s.e1 = j.xu / xu_len;
  s.e2 = space.cross(j.x, s.e1, s.normal);
  s.frame_coords.col(0) = Vec2(1.0 / xu_len, 0.0);
  s.frame_coords.col(1) = s.first_form.ldlt().solve(Vec2(ip(s.e2, j.xu), ip(s.e2, j.xv)));

  Mat2 second;
  second(0, 0) = ip(j.xuu + ChartedSpace::contract(gamma, j.xu, j.xu), s.normal);
  second(0, 1) = ip(j.xuv + ChartedSpace::contract(gamma, j.xu, j.xv), s.normal);
  second(1, 1) = ip(j.xvv + ChartedSpace::contract(gamma, j.xv, j.xv), s.normal);
  second(1, 0) = second(0, 1);
  s.shape = s.frame_coords.transpose() * second * s.frame_coords;
  s.shape(1, 0) = s.shape(0, 1) = 0.5 * (s.shape(0, 1) + s.shape(1, 0));

  s.mean = 0.5 * s.shape.trace();
  const double half_gap = 0.5 * principal_gap(s.shape);
  s.k1 = s.mean + half_gap;
  s.k2 = s.mean - half_gap;

  const Vec3 xi = Vec3::UnitZ();
  s.nu = ip(s.normal, xi);
  s.t = Vec2(ip(s.e1, xi), ip(s.e2, xi));

  const double tau = space.tau();
  s.gauss = s.det_shape() + tau * tau + space.bundle_gap() * s.nu * s.nu;
  s.q = ar_q_from(space.kappa(), tau, s.mean, s.det_shape(), s.nu, grad_nu(s, tau));
  return s;
}

TangentFrame frame_at(const SurfacePatch& patch, double u, double v) {
  const ExtrinsicSample s = sample_at(patch, u, v);
  return {s.e1, s.e2, s.normal};
}

Mat2 shape_operator(const SurfacePatch& patch, double u, double v) {
  return sample_at(patch, u, v).shape;
}

double gauss_K(const SurfacePatch& patch, double u, double v) {
  return sample_at(patch, u, v).gauss;
}

double ar_q(const SurfacePatch& patch, double u, double v) { return sample_at(patch, u, v).q; }

Mat2 shape_operator_fd(const SurfacePatch& patch, double u, double v, double step) {
  const ExtrinsicSample s = sample_at(patch, u, v);
  const auto dn = coordinate_derivatives(
      patch, s, [&](double uu, double vv) { return normal_data(patch, uu, vv).normal; }, step);
  const Mat3 g = patch.space().metric_at(s.point);
  Mat2 a;
  for (int i = 0; i < 2; ++i) {
    const Vec3 d = s.frame_coords(0, i) * dn[0] + s.frame_coords(1, i) * dn[1];
    a(i, 0) = -d.dot(g * s.e1);
    a(i, 1) = -d.dot(g * s.e2);
  }
  return a;
}

std::complex<double> omega_form(const ChartedSpace& space, const ExtrinsicSample& s, const Vec3& a,
                                const Vec3& b) {
  const Mat3 g = space.metric_at(s.point);
  for (const Vec3* w : {&a, &b}) {
    const double len = std::sqrt(w->dot(g * *w));
    if (std::abs(w->dot(g * s.normal)) > kTangencyTolerance * (1.0 + len)) {
      fail(ErrorKind::Usage, "omega_form: argument is not tangent to the surface");
    }
  }
  const Vec2 fa(a.dot(g * s.e1), a.dot(g * s.e2));
  const Vec2 fb(b.dot(g * s.e1), b.dot(g * s.e2));
  const double tau = space.tau();
  const double second = fa.dot(s.shape * fb);
  return 2.0 * std::complex<double>(s.mean, tau) * second -
         space.bundle_gap() * fa.dot(s.t) * fb.dot(s.t);
}

std::complex<double> omega_20(const ChartedSpace& space, const ExtrinsicSample& s, const Vec2& w) {
  const std::complex<double> w11 = omega_form(space, s, s.e1, s.e1);
  const std::complex<double> w12 = omega_form(space, s, s.e1, s.e2);
  const std::complex<double> w22 = omega_form(space, s, s.e2, s.e2);
  const std::complex<double> i(0.0, 1.0);
  // The complex structure is N ^ v = -J v, so d/dz = (E1 + i E2) / 2 and
  // dz(w) = w1 - i w2.
  const std::complex<double> zz = 0.25 * (w11 - w22 + 2.0 * i * w12);
  const std::complex<double> dz(w(0), -w(1));
  return zz * dz * dz;
}

FrameChristoffels frame_christoffels(const SurfacePatch& patch, double u, double v, double step) {
  const ExtrinsicSample s = sample_at(patch, u, v);
  if (s.k1 - s.k2 < kUmbilicTolerance) {
    fail(ErrorKind::Umbilic, "principal frame undefined at an umbilic point");
  }
  const Vec2 c1 = leading_eigenvector(s.shape);
  const Vec3 e1_center = s.from_frame(c1);
  auto principal = [&](double uu, double vv) {
    const ExtrinsicSample local = sample_at(patch, uu, vv);
    Vec3 e = local.from_frame(leading_eigenvector(local.shape));
    return e.dot(e1_center) < 0.0 ? Vec3(-e) : e;
  };
  const auto de = coordinate_derivatives(patch, s, principal, step);

  const Vec2 c2 = rotate_j(c1);
  const Vec2 coords1 = s.frame_coords * c1;
  const Vec2 coords2 = s.frame_coords * c2;
  const Mat3 g = patch.space().metric_at(s.point);

  FrameChristoffels fc;
  fc.e1 = s.from_frame(c1);
  fc.e2 = s.from_frame(c2);
  const Vec3 d1 = coords1(0) * de[0] + coords1(1) * de[1];
  const Vec3 d2 = coords2(0) * de[0] + coords2(1) * de[1];
  fc.p1 = d1.dot(g * fc.e2);
  fc.p2 = d2.dot(g * fc.e2);

  const auto [hu, hv] = scaled_steps(s, step);
  auto curvatures = [&](double uu, double vv) {
    const ExtrinsicSample local = sample_at(patch, uu, vv);
    return Vec2(local.k1, local.k2);
  };
  const Vec2 k_u = central4([&](double t) { return curvatures(u + t, v); }, hu);
  const Vec2 k_v = central4([&](double t) { return curvatures(u, v + t); }, hv);
  fc.e2_k1 = coords2(0) * k_u(0) + coords2(1) * k_v(0);
  fc.e1_k2 = coords1(0) * k_u(1) + coords1(1) * k_v(1);
  return fc;
}

double intrinsic_gauss_fd(const SurfacePatch& patch, double u, double v, double step) {
  const ChartedSpace& space = patch.space();
  // (E, F, G) of the first fundamental form.
  auto form = [&](double uu, double vv) {
    const SurfaceJet j = patch.jet(uu, vv);
    const Mat3 m = space.metric_at(j.x);
    return Vec3(j.xu.dot(m * j.xu), j.xu.dot(m * j.xv), j.xv.dot(m * j.xv));
  };
  const double h = step;
  auto second = [&](auto&& f) {
    return Vec3((-f(2 * h) + 16.0 * f(h) - 30.0 * f(0.0) + 16.0 * f(-h) - f(-2 * h)) / (12.0 * h * h));
  };
  const Vec3 c = form(u, v);
  const Vec3 du = central4([&](double t) { return form(u + t, v); }, h);
  const Vec3 dv = central4([&](double t) { return form(u, v + t); }, h);
  const Vec3 duu = second([&](double t) { return form(u + t, v); });
  const Vec3 dvv = second([&](double t) { return form(u, v + t); });
  const Vec3 duv = central4(
      [&](double t) { return central4([&](double w) { return form(u + t, v + w); }, h); }, h);

  const double e = c(0), f = c(1), g = c(2);
  const double e_u = du(0), f_u = du(1), g_u = du(2);
  const double e_v = dv(0), f_v = dv(1), g_v = dv(2);
  const double e_vv = dvv(0), g_uu = duu(2), f_uv = duv(1);

  Mat3 m1;
  m1 << -0.5 * e_vv + f_uv - 0.5 * g_uu, 0.5 * e_u, f_u - 0.5 * e_v,  //
      f_v - 0.5 * g_u, e, f,                                         //
      0.5 * g_v, f, g;
  Mat3 m2;
  m2 << 0.0, 0.5 * e_v, 0.5 * g_u,  //
      0.5 * e_v, e, f,              //
      0.5 * g_u, f, g;
  const double w = e * g - f * f;
  return (m1.determinant() - m2.determinant()) / (w * w);
}

Vec2 grad_nu_fd(const SurfacePatch& patch, double u, double v, double step) {
  const ExtrinsicSample s = sample_at(patch, u, v);
  const auto [hu, hv] = scaled_steps(s, step);
  auto nu_at = [&](double uu, double vv) {
    const NormalData d = normal_data(patch, uu, vv);
    return d.normal.dot(d.g * Vec3::UnitZ());
  };
  const double du = central4([&](double h) { return nu_at(u + h, v); }, hu);
  const double dv = central4([&](double h) { return nu_at(u, v + h); }, hv);
  // <grad nu, X_a> = partial_a nu and <E_i, X_a> = (I F)_{ai}.
  const Mat2 m = s.first_form * s.frame_coords;
  return m.lu().solve(Vec2(du, dv));
}

Mat2 nabla_T_fd(const SurfacePatch& patch, double u, double v, double step) {
  const ExtrinsicSample s = sample_at(patch, u, v);
  auto tangent_xi = [&](double uu, double vv) {
    const NormalData d = normal_data(patch, uu, vv);
    const double nu = d.normal.dot(d.g * Vec3::UnitZ());
    return Vec3(Vec3::UnitZ() - nu * d.normal);
  };
  const auto dt = coordinate_derivatives(patch, s, tangent_xi, step);
  const Mat3 g = patch.space().metric_at(s.point);
  Mat2 out;
  for (int i = 0; i < 2; ++i) {
    const Vec3 d = s.frame_coords(0, i) * dt[0] + s.frame_coords(1, i) * dt[1];
    out.col(i) = Vec2(d.dot(g * s.e1), d.dot(g * s.e2));
  }
  return out;
}

Mat2 nabla_T_identity(const ExtrinsicSample& s, double tau) {
  Mat2 out;
  for (int i = 0; i < 2; ++i) {
    const Vec2 ei = Vec2::Unit(i);
    out.col(i) = tau * s.nu * rotate_j(ei) + s.nu * s.shape * ei;
  }
  return out;
}

}  // namespace ektau
