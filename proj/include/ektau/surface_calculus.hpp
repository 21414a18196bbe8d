#pragma once

#include <complex>
#include <functional>
#include <memory>

#include "ektau/ambient_space.hpp"

namespace ektau {

struct ParamDomain {
  double u0 = 0.0, u1 = 1.0, v0 = 0.0, v1 = 1.0;

  bool contains(double u, double v) const { return u >= u0 && u <= u1 && v >= v0 && v <= v1; }
  double u_mid() const { return 0.5 * (u0 + u1); }
  double v_mid() const { return 0.5 * (v0 + v1); }
};

// Position of the immersion together with its first and second partials.
struct SurfaceJet {
  Vec3 x, xu, xv, xuu, xuv, xvv;
};

/// An immersed parameterized surface patch in a charted space.
///
/// The immersion may come with an analytic jet; otherwise partial derivatives
/// are taken by fourth-order central differences of the immersion.
class SurfacePatch {
 public:
  using Immersion = std::function<Vec3(double, double)>;
  using JetFunction = std::function<SurfaceJet(double, double)>;

  SurfacePatch(ChartedSpace space, Immersion immersion, ParamDomain domain, int normal_sign = 1,
               JetFunction jet = nullptr);

  const ChartedSpace& space() const { return space_; }
  const ParamDomain& domain() const { return domain_; }
  int normal_sign() const { return normal_sign_; }
  bool has_analytic_jet() const { return static_cast<bool>(*jet_); }

  Vec3 position(double u, double v) const { return (*immersion_)(u, v); }
  SurfaceJet jet(double u, double v) const;
  SurfaceJet jet_fd(double u, double v, double step = 1e-3) const;

  SurfacePatch with_normal_sign(int sign) const;
  SurfacePatch with_domain(ParamDomain domain) const;

 private:
  ChartedSpace space_;
  std::shared_ptr<const Immersion> immersion_;
  std::shared_ptr<const JetFunction> jet_;
  ParamDomain domain_;
  int normal_sign_;
};

/// Pointwise extrinsic record of a patch.
///
/// Frame vectors and the normal are chart components. The shape matrix is
/// expressed in the orthonormal frame {E1, E2} with E1 = X_u/|X_u| and
/// E2 = E1 ^ N, so that J E1 = E2 for J v = v ^ N.
struct ExtrinsicSample {
  double u = 0.0, v = 0.0;
  Vec3 point, xu, xv;
  Vec3 e1, e2, normal;
  Mat2 first_form;   // induced metric in (u, v)
  Mat2 frame_coords; // column i: E_i in the basis {X_u, X_v}
  Mat2 shape;        // a_ij = <A E_i, E_j>
  double mean = 0.0;
  double gauss = 0.0;
  double nu = 0.0;
  Vec2 t = Vec2::Zero();  // <T, E1>, <T, E2>
  double q = 0.0;
  double k1 = 0.0, k2 = 0.0;  // k1 >= k2

  double det_shape() const { return shape.determinant(); }
  /// Frame components of a tangent chart vector.
  Vec2 to_frame(const ChartedSpace& space, const Vec3& w) const;
  Vec3 from_frame(const Vec2& c) const { return c(0) * e1 + c(1) * e2; }
};

struct TangentFrame {
  Vec3 e1, e2, normal;
};

struct FrameChristoffels {
  double p1 = 0.0;
  double p2 = 0.0;
  Vec3 e1, e2;  // principal directions (chart components), e2 = e1 ^ N
  double e2_k1 = 0.0;  // derivative of k1 along e2
  double e1_k2 = 0.0;  // derivative of k2 along e1
};

/// J(c1, c2) = (-c2, c1) in any positively oriented orthonormal tangent frame.
inline Vec2 rotate_j(const Vec2& c) { return Vec2(-c(1), c(0)); }

/// Gradient of the angle function from the identity grad nu = -A T + tau J T.
Vec2 grad_nu(const ExtrinsicSample& s, double tau);

/// Abresch-Rosenberg scalar q from H, det A, nu and |grad nu|.
double ar_q_from(double kappa, double tau, double mean, double det_shape, double nu,
                 const Vec2& grad_nu);

ExtrinsicSample sample_at(const SurfacePatch& patch, double u, double v);

TangentFrame frame_at(const SurfacePatch& patch, double u, double v);
Mat2 shape_operator(const SurfacePatch& patch, double u, double v);
double gauss_K(const SurfacePatch& patch, double u, double v);
double ar_q(const SurfacePatch& patch, double u, double v);

/// Shape operator from directional differences of the unit normal, without
/// symmetrization: entry (i, j) is -<D_{E_i} N, E_j>.
Mat2 shape_operator_fd(const SurfacePatch& patch, double u, double v, double step = 1e-5);

/// Complex 2-form omega(a, b) = 2 (H + i tau) <A a, b> - (kappa - 4 tau^2) <a, xi><b, xi>
/// for tangent chart vectors a, b. Non-tangent input throws Error(Usage).
std::complex<double> omega_form(const ChartedSpace& space, const ExtrinsicSample& s, const Vec3& a,
                                const Vec3& b);
/// (2,0)-part of omega evaluated on (w, w), w given by frame components.
std::complex<double> omega_20(const ChartedSpace& space, const ExtrinsicSample& s, const Vec2& w);

/// Connection coefficients of the principal frame. Throws Error(Umbilic) when
/// |k1 - k2| < 1e-8.
FrameChristoffels frame_christoffels(const SurfacePatch& patch, double u, double v,
                                     double step = 1e-5);

/// Gaussian curvature of the induced metric via the Brioschi formula with
/// fourth-order finite differences of the first fundamental form.
double intrinsic_gauss_fd(const SurfacePatch& patch, double u, double v, double step = 1e-3);

/// Frame components of grad nu from finite differences of nu.
Vec2 grad_nu_fd(const SurfacePatch& patch, double u, double v, double step = 1e-5);

/// Column i holds the frame components of the tangential part of D_{E_i} T,
/// with T differentiated numerically.
Mat2 nabla_T_fd(const SurfacePatch& patch, double u, double v, double step = 1e-5);

/// Closed-form counterpart of nabla_T_fd: column i is tau nu J E_i + nu A E_i.
Mat2 nabla_T_identity(const ExtrinsicSample& s, double tau);

}  // namespace ektau
