#pragma once

#include <functional>
#include <vector>

#include "ektau/surface_calculus.hpp"

namespace ektau {

struct GeodesicState {
  Vec3 point;
  Vec3 velocity;
};

/// Integrates the geodesic equation for signed time t with classical RK4.
/// The step is halved (up to six times) until the speed drifts by less than
/// 1e-7 per unit time. Leaving the chart throws EscapeError.
GeodesicState geodesic_flow(const ChartedSpace& space, const GeodesicState& start, double t,
                            double step = 1e-3);

/// exp_p(r N_p) for the patch point p = X(u, v).
Vec3 normal_exponential(const SurfacePatch& patch, double u, double v, double r,
                        double step = 1e-3);

/// The equidistant patch X^r = exp(r N), oriented by the geodesic velocity at r.
/// Its derivatives are taken numerically.
SurfacePatch parallel_patch(const SurfacePatch& patch, double r, double step = 1e-3);

struct SinCosDelta {
  double s = 0.0;  // sinh(t sqrt(d))/sqrt(d), sin(t sqrt(-d))/sqrt(-d), or t at d = 0
  double c = 1.0;  // cosh(t sqrt(d)), cos(t sqrt(-d)), or 1 at d = 0
};

SinCosDelta s_c_delta(double delta, double t);

/// Shape operator entries in the frame U1 = T/|T|, U2 = N ^ U1 along with the
/// angle function and delta = (kappa - 4 tau^2) nu^2 - kappa.
struct JacobiData {
  double a11 = 0.0, a12 = 0.0, a22 = 0.0;
  double nu = 0.0;
  double delta = 0.0;
  double tau = 0.0;

  static JacobiData make(double kappa, double tau, double nu, double a11, double a12, double a22);
  Mat2 shape() const {
    Mat2 a;
    a << a11, a12, a12, a22;
    return a;
  }
};

/// Throws Error(Consistency) at points with nu^2 = 1 unless tau = 0, where the
/// frame E1 is used for U1.
JacobiData jacobi_data(const ChartedSpace& space, const ExtrinsicSample& sample);

Mat2 closed_form_B(const JacobiData& jd, double r);
/// Entry-wise r-derivative of closed_form_B.
Mat2 closed_form_B_prime(const JacobiData& jd, double r);
/// Matrix of the covariant derivatives of the Jacobi fields; C(0) = -A.
Mat2 closed_form_C(const JacobiData& jd, double r);
/// B(r) obtained by RK4 integration of the Jacobi system.
Mat2 integrate_jacobi_system(const JacobiData& jd, double r, int steps = 4000);

/// A^r = -C B^{-1}. Throws Error(Focal) when |det B| < 1e-10.
Mat2 parallel_shape(const JacobiData& jd, double r);

struct ParallelMean {
  double trace_form = 0.0;      // tr(A^r) / 2
  double log_derivative = 0.0;  // -(det B)' / (2 det B)
};

ParallelMean parallel_mean_forms(const JacobiData& jd, double r);
double parallel_mean_h(const JacobiData& jd, double r);

using ScalarFunction = std::function<double(double)>;

/// f(r) from its expanded closed form divided by delta^2.
double f_function(const JacobiData& jd, const ScalarFunction& h, double r);
/// f(r) = (det B)'(r) + 2 h(r) det B(r).
double f_definition(const JacobiData& jd, const ScalarFunction& h, double r);

struct DerivativeRelations {
  double a22_residual = 0.0;
  double a12_residual = 0.0;  // |a12| against the square-root expression
  double a11_residual = 0.0;
  double f1 = 0.0, f2 = 0.0, f3 = 0.0;  // f'(0), f''(0), f'''(0) from their expansions

  double max_residual() const;
};

/// Residuals of the a_ij recovery formulas given h(0), h'(0), h''(0), h'''(0).
/// A negative radicand in the a12 formula throws Error(Consistency).
DerivativeRelations derivative_relations(const JacobiData& jd, double h0, double h1, double h2,
                                         double h3);

/// h(0..3) at r = 0 from 5-point stencils of parallel_mean_h.
std::array<double, 4> h_derivatives_at_zero(const JacobiData& jd, double step = 1e-3);

struct ParallelCurve {
  std::vector<double> radii;
  std::vector<double> h_values;
  std::vector<double> detB_values;
};

/// Throws Error(Focal) if det B is not positive at one of the radii.
ParallelCurve parallel_curve(const JacobiData& jd, const std::vector<double>& radii);

}  // namespace ektau
