#pragma once

#include <array>

#include <Eigen/Dense>

namespace ektau {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;

enum class Chart { Standard, Halfspace };

const char* chart_name(Chart chart);

// gamma[k](i, j) holds the Christoffel symbol of the second kind with upper index k.
using Christoffel = std::array<Mat3, 3>;

// A tangent vector together with the chart point it is attached to.
struct AmbientVector {
  Vec3 base;
  Vec3 components;
};

/// The homogeneous space E(kappa, tau) seen through one coordinate chart.
///
/// Standard chart: {1 + kappa/4 (x^2 + y^2) > 0} with metric
///   lambda^2 (dx^2 + dy^2) + (dz + tau lambda (x dy - y dx))^2,  lambda = 1 / (1 + kappa/4 (x^2+y^2)).
/// Halfspace chart (kappa < 0 only): {y > 0} with metric
///   (dx^2 + dy^2) / (-kappa y^2) + (dz - 2 tau / (kappa y) dx)^2.
/// In both charts the unit Killing field is the coordinate field d/dz.
///
/// Instances are immutable; all member functions are pure.
class ChartedSpace {
 public:
  /// Throws Error(Parameter) when kappa - 4 tau^2 vanishes or when the
  /// halfspace chart is requested with kappa >= 0.
  static ChartedSpace make(double kappa, double tau, Chart chart = Chart::Standard);

  double kappa() const { return kappa_; }
  double tau() const { return tau_; }
  Chart chart() const { return chart_; }
  /// kappa - 4 tau^2.
  double bundle_gap() const { return kappa_ - 4.0 * tau_ * tau_; }
  /// +1 or -1: sign relating the cross product to the coordinate determinant.
  int orientation() const { return orientation_; }

  /// Points closer than 1e-9 to the chart boundary count as outside.
  bool in_domain(const Vec3& p) const;
  void require_domain(const Vec3& p) const;

  Mat3 metric_at(const Vec3& p) const;
  /// d[k] = partial_k of the metric matrix.
  std::array<Mat3, 3> metric_derivatives(const Vec3& p) const;
  Christoffel christoffel_at(const Vec3& p) const;
  /// Central differences of metric_at with one Richardson step.
  Christoffel christoffel_fd(const Vec3& p, double step = 1e-5) const;

  double inner(const Vec3& p, const Vec3& a, const Vec3& b) const;
  double norm(const Vec3& p, const Vec3& a) const;

  /// Gamma(a, b)^k = Gamma^k_ij a^i b^j.
  static Vec3 contract(const Christoffel& gamma, const Vec3& a, const Vec3& b);

  /// Closed-form curvature tensor R(X,Y)Z, convention R(X,Y) = [D_X, D_Y] - D_[X,Y].
  Vec3 curvature_R(const Vec3& p, const Vec3& x, const Vec3& y, const Vec3& z) const;
  /// Same, with base points checked; mismatch throws Error(Usage).
  Vec3 curvature_R(const AmbientVector& x, const AmbientVector& y, const AmbientVector& z) const;
  /// Riemann tensor assembled from differentiated Christoffel symbols of the chart.
  Vec3 riemann_from_connection(const Vec3& p, const Vec3& x, const Vec3& y, const Vec3& z,
                               double step = 1e-4) const;

  Vec3 killing_xi(const Vec3& p) const;
  /// Covariant derivative of xi in direction v.
  Vec3 nabla_xi(const Vec3& p, const Vec3& v) const;

  Vec3 cross(const Vec3& p, const Vec3& u, const Vec3& v) const;

 private:
  ChartedSpace(double kappa, double tau, Chart chart) : kappa_(kappa), tau_(tau), chart_(chart) {}

  double kappa_;
  double tau_;
  Chart chart_;
  int orientation_ = 1;
};

}  // namespace ektau
