#include "ektau/ambient_space.hpp"

#include <cmath>
#include <sstream>

#include "ektau/errors.hpp"

namespace ektau {

namespace {

constexpr double kBoundaryTolerance = 1e-9;
constexpr double kDegenerateGap = 1e-12;

// The metric in either chart has the shape c (dx^2 + dy^2) + theta (x) theta.
struct MetricParts {
  double c = 0.0;
  Vec3 theta = Vec3::Zero();
  Vec3 dc = Vec3::Zero();
  Mat3 dtheta = Mat3::Zero();  // dtheta(k, i) = partial_k theta_i
};

MetricParts metric_parts(double kappa, double tau, Chart chart, const Vec3& p) {
  MetricParts m;
  const double x = p.x();
  const double y = p.y();
  if (chart == Chart::Standard) {
    const double lambda = 1.0 / (1.0 + 0.25 * kappa * (x * x + y * y));
    const double dlx = -0.5 * kappa * x * lambda * lambda;
    const double dly = -0.5 * kappa * y * lambda * lambda;
    m.c = lambda * lambda;
    m.dc = Vec3(2.0 * lambda * dlx, 2.0 * lambda * dly, 0.0);
    m.theta = Vec3(-tau * lambda * y, tau * lambda * x, 1.0);
    m.dtheta(0, 0) = -tau * y * dlx;
    m.dtheta(1, 0) = -tau * lambda - tau * y * dly;
    m.dtheta(0, 1) = tau * lambda + tau * x * dlx;
    m.dtheta(1, 1) = tau * x * dly;
  } else {
    m.c = -1.0 / (kappa * y * y);
    m.dc = Vec3(0.0, 2.0 / (kappa * y * y * y), 0.0);
    m.theta = Vec3(-2.0 * tau / (kappa * y), 0.0, 1.0);
    m.dtheta(1, 0) = 2.0 * tau / (kappa * y * y);
  }
  return m;
}

Mat3 assemble_metric(const MetricParts& m) {
  Mat3 g = m.theta * m.theta.transpose();
  g(0, 0) += m.c;
  g(1, 1) += m.c;
  return g;
}

std::array<Mat3, 3> assemble_derivatives(const MetricParts& m) {
  std::array<Mat3, 3> d;
  for (int k = 0; k < 3; ++k) {
    const Vec3 dth = m.dtheta.row(k).transpose();
    d[k] = dth * m.theta.transpose() + m.theta * dth.transpose();
    d[k](0, 0) += m.dc(k);
    d[k](1, 1) += m.dc(k);
  }
  return d;
}

Christoffel christoffel_from(const Mat3& g, const std::array<Mat3, 3>& dg) {
  const Mat3 ginv = g.inverse();
  Christoffel gamma;
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      // Lowered symbol Gamma_{l,ij}.
      Vec3 lowered;
      for (int l = 0; l < 3; ++l) {
        lowered(l) = 0.5 * (dg[i](l, j) + dg[j](l, i) - dg[l](i, j));
      }
      const Vec3 raised = ginv * lowered;
      for (int k = 0; k < 3; ++k) {
        gamma[k](i, j) = raised(k);
        gamma[k](j, i) = raised(k);
      }
    }
  }
  return gamma;
}

Vec3 unsigned_cross(const Mat3& g, const Vec3& u, const Vec3& v) {
  const Vec3 lowered = std::sqrt(g.determinant()) * u.cross(v);
  return g.ldlt().solve(lowered);
}

}  // namespace

const char* chart_name(Chart chart) { return chart == Chart::Standard ? "standard" : "halfspace"; }

ChartedSpace ChartedSpace::make(double kappa, double tau, Chart chart) {
  if (!std::isfinite(kappa) || !std::isfinite(tau)) {
    fail(ErrorKind::Parameter, "kappa and tau must be finite");
  }
  if (std::abs(kappa - 4.0 * tau * tau) < kDegenerateGap) {
    fail(ErrorKind::Parameter, "kappa - 4 tau^2 must be nonzero");
  }
  if (chart == Chart::Halfspace && !(kappa < 0.0)) {
    fail(ErrorKind::Parameter, "the halfspace chart requires kappa < 0");
  }
  ChartedSpace space(kappa, tau, chart);

  // Fix the sign of the cross product so that D_v xi = tau v ^ xi. The
  // probe uses unit twist, since the sign does not depend on tau.
  const Vec3 ref = chart == Chart::Standard ? Vec3::Zero() : Vec3(0.0, 1.0, 0.0);
  const MetricParts probe = metric_parts(kappa, 1.0, chart, ref);
  const Mat3 g = assemble_metric(probe);
  const Christoffel gamma = christoffel_from(g, assemble_derivatives(probe));
  const Vec3 ex = Vec3::UnitX();
  const Vec3 dxi = contract(gamma, ex, Vec3::UnitZ());
  const Vec3 w = unsigned_cross(g, ex, Vec3::UnitZ());
  space.orientation_ = dxi.dot(g * w) >= 0.0 ? 1 : -1;
  return space;
}

bool ChartedSpace::in_domain(const Vec3& p) const {
  if (!p.allFinite()) return false;
  if (chart_ == Chart::Standard) {
    return 1.0 + 0.25 * kappa_ * (p.x() * p.x() + p.y() * p.y()) > kBoundaryTolerance;
  }
  return p.y() > kBoundaryTolerance;
}

void ChartedSpace::require_domain(const Vec3& p) const {
  if (!in_domain(p)) {
    std::ostringstream os;
    os << "point (" << p.x() << ", " << p.y() << ", " << p.z() << ") lies outside the "
       << chart_name(chart_) << " chart";
    fail(ErrorKind::Domain, os.str());
  }
}

Mat3 ChartedSpace::metric_at(const Vec3& p) const {
  require_domain(p);
  return assemble_metric(metric_parts(kappa_, tau_, chart_, p));
}

std::array<Mat3, 3> ChartedSpace::metric_derivatives(const Vec3& p) const {
  require_domain(p);
  return assemble_derivatives(metric_parts(kappa_, tau_, chart_, p));
}

Christoffel ChartedSpace::christoffel_at(const Vec3& p) const {
  require_domain(p);
  const MetricParts m = metric_parts(kappa_, tau_, chart_, p);
  return christoffel_from(assemble_metric(m), assemble_derivatives(m));
}

Christoffel ChartedSpace::christoffel_fd(const Vec3& p, double step) const {
  require_domain(p);
  auto central = [&](int k, double h) {
    Vec3 e = Vec3::Zero();
    e(k) = h;
    return Mat3((metric_at(p + e) - metric_at(p - e)) / (2.0 * h));
  };
  std::array<Mat3, 3> dg;
  for (int k = 0; k < 3; ++k) {
    dg[k] = (4.0 * central(k, 0.5 * step) - central(k, step)) / 3.0;
  }
  return christoffel_from(metric_at(p), dg);
}

double ChartedSpace::inner(const Vec3& p, const Vec3& a, const Vec3& b) const {
  return a.dot(metric_at(p) * b);
}

double ChartedSpace::norm(const Vec3& p, const Vec3& a) const { return std::sqrt(inner(p, a, a)); }

Vec3 ChartedSpace::contract(const Christoffel& gamma, const Vec3& a, const Vec3& b) {
  return Vec3(a.dot(gamma[0] * b), a.dot(gamma[1] * b), a.dot(gamma[2] * b));
}

Vec3 ChartedSpace::curvature_R(const Vec3& p, const Vec3& x, const Vec3& y, const Vec3& z) const {
  const Mat3 g = metric_at(p);
  const Vec3 xi = Vec3::UnitZ();
  auto ip = [&](const Vec3& a, const Vec3& b) { return a.dot(g * b); };
  const double yz = ip(y, z), xz = ip(x, z);
  const double xxi = ip(x, xi), yxi = ip(y, xi), zxi = ip(z, xi);
  const double gap = bundle_gap();
  return (kappa_ - 3.0 * tau_ * tau_) * (yz * x - xz * y) -
         gap * (yxi * zxi * x + yz * xxi * xi - xz * yxi * xi - xxi * zxi * y);
}

Vec3 ChartedSpace::curvature_R(const AmbientVector& x, const AmbientVector& y,
                               const AmbientVector& z) const {
  if (x.base != y.base || x.base != z.base) {
    fail(ErrorKind::Usage, "curvature_R: vectors are attached to different points");
  }
  return curvature_R(x.base, x.components, y.components, z.components);
}

Vec3 ChartedSpace::riemann_from_connection(const Vec3& p, const Vec3& x, const Vec3& y,
                                           const Vec3& z, double step) const {
  const Christoffel gamma = christoffel_at(p);
  // dgamma[i][l](j, k) = partial_i Gamma^l_jk, fourth-order central stencil.
  std::array<Christoffel, 3> dgamma;
  for (int i = 0; i < 3; ++i) {
    Vec3 e = Vec3::Zero();
    e(i) = step;
    const Christoffel p1 = christoffel_at(p + e), m1 = christoffel_at(p - e);
    const Christoffel p2 = christoffel_at(p + 2.0 * e), m2 = christoffel_at(p - 2.0 * e);
    for (int l = 0; l < 3; ++l) {
      dgamma[i][l] = (8.0 * (p1[l] - m1[l]) - (p2[l] - m2[l])) / (12.0 * step);
    }
  }
  Vec3 out = Vec3::Zero();
  for (int l = 0; l < 3; ++l) {
    double acc = 0.0;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) {
          double r = dgamma[i][l](j, k) - dgamma[j][l](i, k);
          for (int m = 0; m < 3; ++m) {
            r += gamma[l](i, m) * gamma[m](j, k) - gamma[l](j, m) * gamma[m](i, k);
          }
          acc += x(i) * y(j) * z(k) * r;
        }
      }
    }
    out(l) = acc;
  }
  return out;
}

Vec3 ChartedSpace::killing_xi(const Vec3& p) const {
  require_domain(p);
  return Vec3::UnitZ();
}

Vec3 ChartedSpace::nabla_xi(const Vec3& p, const Vec3& v) const {
  // xi has constant components, so only the connection term survives.
  return contract(christoffel_at(p), v, Vec3::UnitZ());
}

Vec3 ChartedSpace::cross(const Vec3& p, const Vec3& u, const Vec3& v) const {
  return orientation_ * unsigned_cross(metric_at(p), u, v);
}

}  // namespace ektau
