#include "ektau/jacobi_parallel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ektau/errors.hpp"

namespace ektau {

namespace {

constexpr double kFocalTolerance = 1e-10;
constexpr double kSpeedDrift = 1e-7;
constexpr double kSeriesThreshold = 0.5;  // |delta| t^2 below which power series are used

// s, c and the regularized quotients (s - t)/delta and (c - 1)/delta. The
// quotients satisfy s1' = c1, c1' = s, s' = c, c' = delta s.
struct DeltaFunctions {
  double s, c, s1, c1;
};

DeltaFunctions delta_functions(double delta, double t) {
  const double x = delta * t * t;
  DeltaFunctions d{};
  if (std::abs(x) < kSeriesThreshold) {
    // even = x^k/(2k)!, odd = t x^k/(2k+1)!, and the quotient terms drop one power of x.
    double even = 1.0, odd = t;
    double c1_term = 0.5 * t * t, s1_term = t * t * t / 6.0;
    d.c = 1.0 + x * 0.5;
    d.s = t + t * x / 6.0;
    d.c1 = c1_term;
    d.s1 = s1_term;
    even = x * 0.5;
    odd = t * x / 6.0;
    for (int k = 2; k < 40; ++k) {
      const double ce = x / ((2.0 * k - 1.0) * (2.0 * k));
      const double co = x / ((2.0 * k) * (2.0 * k + 1.0));
      even *= ce;
      odd *= co;
      c1_term *= ce;
      s1_term *= co;
      d.c += even;
      d.s += odd;
      d.c1 += c1_term;
      d.s1 += s1_term;
      if (std::abs(c1_term) <= 1e-18 * std::abs(d.c1) && std::abs(s1_term) <= 1e-18 * std::abs(d.s1))
        break;
    }
    return d;
  }
  if (delta > 0.0) {
    const double root = std::sqrt(delta);
    d.s = std::sinh(t * root) / root;
    d.c = std::cosh(t * root);
  } else {
    const double root = std::sqrt(-delta);
    d.s = std::sin(t * root) / root;
    d.c = std::cos(t * root);
  }
  d.s1 = (d.s - t) / delta;
  d.c1 = (d.c - 1.0) / delta;
  return d;
}

Mat2 c_from(const JacobiData& jd, const Mat2& b, const Mat2& bp) {
  const double tau = jd.tau;
  Mat2 c;
  c(0, 0) = bp(0, 0) - tau * b(1, 0);
  c(0, 1) = bp(0, 1) - tau * b(1, 1);
  c(1, 0) = bp(1, 0) + tau * b(0, 0);
  c(1, 1) = bp(1, 1) + tau * b(0, 1);
  return c;
}

double det_derivative(const Mat2& b, const Mat2& bp) {
  return bp(0, 0) * b(1, 1) + b(0, 0) * bp(1, 1) - bp(0, 1) * b(1, 0) - b(0, 1) * bp(1, 0);
}

void require_regular(double det, double r) {
  if (!(std::abs(det) >= kFocalTolerance)) {
    std::ostringstream os;
    os << "focal point: det B(" << r << ") = " << det;
    fail(ErrorKind::Focal, os.str());
  }
}

}  // namespace

GeodesicState geodesic_flow(const ChartedSpace& space, const GeodesicState& start, double t,
                            double step) {
  space.require_domain(start.point);
  if (t == 0.0) return start;
  if (!(step > 0.0)) fail(ErrorKind::Parameter, "geodesic step must be positive");

  using State = Eigen::Matrix<double, 6, 1>;
  double elapsed = 0.0;
  auto rhs = [&](const State& y) {
    const Vec3 x = y.head<3>();
    if (!space.in_domain(x)) {
      std::ostringstream os;
      os << "geodesic left the " << chart_name(space.chart()) << " chart at t = " << elapsed;
      throw EscapeError(os.str(), elapsed);
    }
    const Vec3 v = y.tail<3>();
    State dy;
    dy.head<3>() = v;
    dy.tail<3>() = -ChartedSpace::contract(space.christoffel_at(x), v, v);
    return dy;
  };
  const double speed0 = space.norm(start.point, start.velocity);

  GeodesicState end = start;
  double h_target = step;
  for (int attempt = 0; attempt < 7; ++attempt) {
    const long n = std::max(1L, static_cast<long>(std::ceil(std::abs(t) / h_target)));
    const double h = t / static_cast<double>(n);
    State y;
    y << start.point, start.velocity;
    for (long i = 0; i < n; ++i) {
      elapsed = static_cast<double>(i) * h;
      const State k1 = rhs(y);
      const State k2 = rhs(y + 0.5 * h * k1);
      const State k3 = rhs(y + 0.5 * h * k2);
      const State k4 = rhs(y + h * k3);
      y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    elapsed = t;
    if (!space.in_domain(y.head<3>())) {
      throw EscapeError("geodesic left the chart at the final time", t);
    }
    end = {y.head<3>(), y.tail<3>()};
    const double drift = std::abs(space.norm(end.point, end.velocity) - speed0);
    if (drift < kSpeedDrift * std::max(1.0, std::abs(t))) break;
    h_target *= 0.5;
  }
  return end;
}

Vec3 normal_exponential(const SurfacePatch& patch, double u, double v, double r, double step) {
  const ExtrinsicSample s = sample_at(patch, u, v);
  return geodesic_flow(patch.space(), {s.point, s.normal}, r, step).point;
}

SurfacePatch parallel_patch(const SurfacePatch& patch, double r, double step) {
  SurfacePatch base = patch;
  SurfacePatch shifted(
      patch.space(), [base, r, step](double u, double v) { return normal_exponential(base, u, v, r, step); },
      patch.domain());
  const ParamDomain& d = patch.domain();
  const ExtrinsicSample s = sample_at(patch, d.u_mid(), d.v_mid());
  const GeodesicState end = geodesic_flow(patch.space(), {s.point, s.normal}, r, step);
  const ExtrinsicSample moved = sample_at(shifted, d.u_mid(), d.v_mid());
  if (patch.space().inner(end.point, moved.normal, end.velocity) < 0.0) {
    return shifted.with_normal_sign(-1);
  }
  return shifted;
}

SinCosDelta s_c_delta(double delta, double t) {
  const DeltaFunctions d = delta_functions(delta, t);
  return {d.s, d.c};
}

JacobiData JacobiData::make(double kappa, double tau, double nu, double a11, double a12,
                            double a22) {
  JacobiData jd;
  jd.a11 = a11;
  jd.a12 = a12;
  jd.a22 = a22;
  jd.nu = nu;
  jd.tau = tau;
  jd.delta = (kappa - 4.0 * tau * tau) * nu * nu - kappa;
  return jd;
}

JacobiData jacobi_data(const ChartedSpace& space, const ExtrinsicSample& sample) {
  const double t_len = sample.t.norm();
  Vec2 u1;
  if (t_len > 1e-7) {
    u1 = sample.t / t_len;
  } else if (space.tau() == 0.0) {
    u1 = Vec2::UnitX();
  } else {
    fail(ErrorKind::Consistency, "Jacobi frame undefined where nu^2 = 1 and tau != 0");
  }
  // N ^ U1 = -J U1.
  const Vec2 u2 = -rotate_j(u1);
  const Mat2& a = sample.shape;
  return JacobiData::make(space.kappa(), space.tau(), sample.nu, u1.dot(a * u1), u1.dot(a * u2),
                          u2.dot(a * u2));
}

Mat2 closed_form_B(const JacobiData& jd, double r) {
  const DeltaFunctions d = delta_functions(jd.delta, r);
  const double tau = jd.tau;
  const double w = jd.a12 + tau;
  Mat2 b;
  b(0, 0) = 1.0 + 4.0 * tau * tau * jd.a11 * d.s1 - 2.0 * tau * w * d.c1 - jd.a11 * r;
  b(1, 0) = 2.0 * tau * jd.a11 * d.c1 - w * d.s;
  b(0, 1) = 2.0 * tau * d.s + 4.0 * tau * tau * w * d.s1 - 2.0 * tau * jd.a22 * d.c1 - w * r;
  b(1, 1) = d.c - jd.a22 * d.s + 2.0 * tau * w * d.c1;
  return b;
}

Mat2 closed_form_B_prime(const JacobiData& jd, double r) {
  const DeltaFunctions d = delta_functions(jd.delta, r);
  const double tau = jd.tau;
  const double w = jd.a12 + tau;
  Mat2 b;
  b(0, 0) = 4.0 * tau * tau * jd.a11 * d.c1 - 2.0 * tau * w * d.s - jd.a11;
  b(1, 0) = 2.0 * tau * jd.a11 * d.s - w * d.c;
  b(0, 1) = 2.0 * tau * d.c + 4.0 * tau * tau * w * d.c1 - 2.0 * tau * jd.a22 * d.s - w;
  b(1, 1) = jd.delta * d.s - jd.a22 * d.c + 2.0 * tau * w * d.s;
  return b;
}

Mat2 closed_form_C(const JacobiData& jd, double r) {
  return c_from(jd, closed_form_B(jd, r), closed_form_B_prime(jd, r));
}

Mat2 integrate_jacobi_system(const JacobiData& jd, double r, int steps) {
  // Per column: (b1, b2, b1', b2') with b1'' = 2 tau b2', b2'' = -2 tau b1' + (delta + 4 tau^2) b2.
  using State = Eigen::Vector4d;
  const double tau = jd.tau;
  const double stiffness = jd.delta + 4.0 * tau * tau;
  auto rhs = [&](const State& y) {
    return State(y(2), y(3), 2.0 * tau * y(3), -2.0 * tau * y(2) + stiffness * y(1));
  };
  const State initial[2] = {State(1.0, 0.0, -jd.a11, -tau - jd.a12),
                            State(0.0, 1.0, tau - jd.a12, -jd.a22)};
  const double h = r / steps;
  Mat2 b;
  for (int j = 0; j < 2; ++j) {
    State y = initial[j];
    for (int i = 0; i < steps; ++i) {
      const State k1 = rhs(y);
      const State k2 = rhs(y + 0.5 * h * k1);
      const State k3 = rhs(y + 0.5 * h * k2);
      const State k4 = rhs(y + h * k3);
      y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    b(0, j) = y(0);
    b(1, j) = y(1);
  }
  return b;
}

Mat2 parallel_shape(const JacobiData& jd, double r) {
  const Mat2 b = closed_form_B(jd, r);
  require_regular(b.determinant(), r);
  return -closed_form_C(jd, r) * b.inverse();
}

ParallelMean parallel_mean_forms(const JacobiData& jd, double r) {
  const Mat2 b = closed_form_B(jd, r);
  const Mat2 bp = closed_form_B_prime(jd, r);
  const double det = b.determinant();
  require_regular(det, r);
  ParallelMean m;
  m.trace_form = -0.5 * (c_from(jd, b, bp) * b.inverse()).trace();
  m.log_derivative = -det_derivative(b, bp) / (2.0 * det);
  return m;
}

double parallel_mean_h(const JacobiData& jd, double r) {
  return parallel_mean_forms(jd, r).log_derivative;
}

double f_function(const JacobiData& jd, const ScalarFunction& h, double r) {
  const double d = jd.delta;
  if (d == 0.0) fail(ErrorKind::Parameter, "f_function requires delta != 0");
  const double t = jd.tau, a11 = jd.a11, a12 = jd.a12, a22 = jd.a22;
  const SinCosDelta sc = s_c_delta(d, r);
  const double s = sc.s, c = sc.c;
  const double hr = h(r);
  const double p = d + 4.0 * t * t;
  const double w2 = (t + a12) * (t + a12);
  const double det_a = a11 * a22 - a12 * a12;

  double value = d * (d * d + 3.0 * d * t * t + 4.0 * t * t * t * t + 2.0 * t * p * a12 +
                      (d - 4.0 * t * t) * det_a) * s;
  value -= d * d * (a11 + a22) * c;
  value -= d * d * p * a11 * r * s;
  value += d * p * (a11 * a22 - w2) * r * c;
  value -= 2.0 * d * p * (w2 - a11 * a22) * r * hr * s;
  value -= 2.0 * d * p * a11 * r * hr * c;
  value -= 2.0 * d * (d * a22 - 4.0 * t * t * a11) * hr * s;
  value += 2.0 * (p * (d + 4.0 * t * a12) - 8.0 * t * t * (det_a - t * t)) * hr * c;
  value += 8.0 * t * (2.0 * t * a11 * a22 - (t + a12) * (d + 2.0 * t * t + 2.0 * t * a12)) * hr;
  return value / (d * d);
}

double f_definition(const JacobiData& jd, const ScalarFunction& h, double r) {
  const Mat2 b = closed_form_B(jd, r);
  const Mat2 bp = closed_form_B_prime(jd, r);
  return det_derivative(b, bp) + 2.0 * h(r) * b.determinant();
}

double DerivativeRelations::max_residual() const {
  return std::max({std::abs(a22_residual), std::abs(a12_residual), std::abs(a11_residual)});
}

DerivativeRelations derivative_relations(const JacobiData& jd, double h0, double h1, double h2,
                                         double h3) {
  const double d = jd.delta, t = jd.tau;
  const double a11 = jd.a11, a12 = jd.a12, a22 = jd.a22;
  const double t2 = t * t;
  if (std::abs(d + 4.0 * t2) < 1e-14) {
    fail(ErrorKind::Consistency, "derivative relations require delta + 4 tau^2 != 0");
  }
  DerivativeRelations out;
  out.a22_residual = a22 - (2.0 * h0 - a11);

  const double radicand = d + 2.0 * t2 - 4.0 * h0 * h0 + 2.0 * h1 + 4.0 * h0 * a11 - 2.0 * a11 * a11;
  const double scale = std::abs(d) + 2.0 * t2 + 4.0 * h0 * h0 + 2.0 * std::abs(h1) +
                       4.0 * std::abs(h0 * a11) + 2.0 * a11 * a11;
  if (radicand < -1e-9 * (1.0 + scale)) {
    std::ostringstream os;
    os << "negative radicand " << radicand << " in the a12 relation";
    fail(ErrorKind::Consistency, os.str());
  }
  out.a12_residual = std::abs(a12) - std::sqrt(std::max(radicand, 0.0) / 2.0);

  out.a11_residual = a11 - (4.0 * h0 * h0 * h0 - 6.0 * h0 * h1 + h2 - h0 * d) / (d + 4.0 * t2);

  out.f1 = d + 2.0 * t2 - 2.0 * h0 * (a11 + a22) + 2.0 * a11 * a22 - 2.0 * a12 * a12 + 2.0 * h1;
  out.f2 = 2.0 * (d * h0 + 2.0 * t2 * h0 + h2) - 4.0 * h0 * a12 * a12 + 4.0 * h0 * a11 * a22 -
           (d + 4.0 * h1) * a22 - (3.0 * d + 8.0 * t2 + 4.0 * h1) * a11;
  out.f3 = d * d - 8.0 * t2 * t2 + 6.0 * (d + 2.0 * t2) * h1 + 2.0 * h3 - 6.0 * h2 * (a11 + a22) -
           2.0 * d * h0 * a22 - 4.0 * t * (d + 4.0 * t2) * a12 -
           4.0 * (d + 2.0 * t2 + 3.0 * h1) * a12 * a12 - 2.0 * (3.0 * d + 8.0 * t2) * h0 * a11 +
           4.0 * (d + 2.0 * t2 + 3.0 * h1) * a11 * a22;
  return out;
}

std::array<double, 4> h_derivatives_at_zero(const JacobiData& jd, double step) {
  const double s = step;
  const double hm2 = parallel_mean_h(jd, -2 * s), hm1 = parallel_mean_h(jd, -s);
  const double h0 = parallel_mean_h(jd, 0.0);
  const double hp1 = parallel_mean_h(jd, s), hp2 = parallel_mean_h(jd, 2 * s);
  return {h0, (-hp2 + 8.0 * hp1 - 8.0 * hm1 + hm2) / (12.0 * s),
          (-hp2 + 16.0 * hp1 - 30.0 * h0 + 16.0 * hm1 - hm2) / (12.0 * s * s),
          (hp2 - 2.0 * hp1 + 2.0 * hm1 - hm2) / (2.0 * s * s * s)};
}

ParallelCurve parallel_curve(const JacobiData& jd, const std::vector<double>& radii) {
  ParallelCurve curve;
  for (double r : radii) {
    const double det = closed_form_B(jd, r).determinant();
    if (!(det > 0.0)) {
      std::ostringstream os;
      os << "focal point crossed before r = " << r << " (det B = " << det << ")";
      fail(ErrorKind::Focal, os.str());
    }
    curve.radii.push_back(r);
    curve.h_values.push_back(parallel_mean_h(jd, r));
    curve.detB_values.push_back(det);
  }
  return curve;
}

}  // namespace ektau
