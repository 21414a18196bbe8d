#include "ektau/model_surfaces.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ektau/errors.hpp"

namespace ektau {

namespace {

using std::numbers::pi;

template <typename F>
double integrate(F&& f, double a, double b) {
  if (a == b) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 15, 1e-12);
}

void require_finite(std::initializer_list<double> values) {
  for (double x : values) {
    if (!std::isfinite(x)) fail(ErrorKind::Parameter, "model parameters must be finite");
  }
}

// Half-width of a square around the origin that stays well inside the standard chart.
double standard_half_width(double kappa) {
  double w = 0.5;
  if (kappa < 0.0) w = std::min(w, 0.35 * 2.0 / std::sqrt(-kappa));
  return w;
}

// Flip the normal so that the sampled mean curvature carries the sign of H.
SurfacePatch orient(SurfacePatch patch, double H) {
  if (H == 0.0) return patch;
  const ParamDomain& d = patch.domain();
  const ExtrinsicSample s = sample_at(patch, d.u_mid(), d.v_mid());
  return s.mean * H < 0.0 ? patch.with_normal_sign(-patch.normal_sign()) : patch;
}

}  // namespace

const char* family_name(Family family) {
  switch (family) {
    case Family::Cylinder: return "cylinder";
    case Family::Slice: return "slice";
    case Family::S: return "S";
    case Family::C: return "C";
    case Family::P: return "P";
    case Family::PerturbedSlice: return "graph";
  }
  return "unknown";
}

Family parse_family(const std::string& name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "cylinder") return Family::Cylinder;
  if (lower == "slice") return Family::Slice;
  if (lower == "s") return Family::S;
  if (lower == "c") return Family::C;
  if (lower == "p") return Family::P;
  if (lower == "graph") return Family::PerturbedSlice;
  fail(ErrorKind::Usage, "unknown surface family '" + name + "'");
}

ModelSurface make_cylinder(double kappa, double tau, double H) {
  require_finite({kappa, tau, H});
  const ChartedSpace space = ChartedSpace::make(kappa, tau);
  // Circle through the origin with Euclidean curvature k = 2H, tangent to the
  // y-axis there. The conformal factor is stationary at the origin, so the
  // geodesic curvature equals k; Euclidean circles keep it constant.
  const double k = 2.0 * H;
  double half_length = 0.5;
  if (kappa < 0.0) half_length = std::min(half_length, 0.45 * 2.0 / std::sqrt(-kappa));
  if (k != 0.0) half_length = std::min(half_length, 0.9 * pi / std::abs(k));

  auto jet = [k](double u, double v) {
    SurfaceJet j;
    if (k == 0.0) {
      j.x = Vec3(0.0, u, v);
      j.xu = Vec3(0.0, 1.0, 0.0);
      j.xuu = Vec3::Zero();
    } else {
      const double c = std::cos(k * u), s = std::sin(k * u);
      j.x = Vec3((1.0 - c) / k, s / k, v);
      j.xu = Vec3(s, c, 0.0);
      j.xuu = Vec3(k * c, -k * s, 0.0);
    }
    j.xv = Vec3::UnitZ();
    j.xuv = Vec3::Zero();
    j.xvv = Vec3::Zero();
    return j;
  };
  SurfacePatch patch(space, [jet](double u, double v) { return jet(u, v).x; },
                     {-half_length, half_length, -0.5, 0.5}, 1, jet);
  ModelSurfaceSpec spec{Family::Cylinder, H, kappa, tau};
  return {spec, orient(patch, H)};
}

ModelSurface make_slice(double kappa, double t0) {
  require_finite({kappa, t0});
  const ChartedSpace space = ChartedSpace::make(kappa, 0.0);
  auto jet = [t0](double u, double v) {
    return SurfaceJet{Vec3(u, v, t0), Vec3::UnitX(), Vec3::UnitY(),
                      Vec3::Zero(), Vec3::Zero(), Vec3::Zero()};
  };
  const double w = standard_half_width(kappa);
  SurfacePatch patch(space, [t0](double u, double v) { return Vec3(u, v, t0); }, {-w, w, -w, w},
                     1, jet);
  ModelSurfaceSpec spec{Family::Slice, 0.0, kappa, 0.0, t0};
  return {spec, patch};
}

ModelSurface make_S(double H, double kappa, double tau, double margin, double v_max) {
  require_finite({H, kappa, tau, margin});
  const ChartedSpace space = ChartedSpace::make(kappa, tau);
  double end = std::numeric_limits<double>::infinity();
  if (H != 0.0) end = 1.0 / std::abs(H);
  if (kappa < 0.0) end = std::min(end, 2.0 / std::sqrt(-kappa));
  if (v_max > 0.0 && v_max >= end) {
    fail(ErrorKind::Domain, "S-surface parameter v must stay below min{1/H, 2/sqrt(-kappa)}");
  }
  if (!std::isfinite(end)) end = 2.0;
  const double v_lo = margin * end;
  const double v_hi = v_max > 0.0 ? v_max : (1.0 - margin) * end;

  // Third coordinate z(v) = int_0^v F, written in terms of its slope F and F'.
  auto slope = [H, kappa, tau](double s) {
    return -4.0 * H * s * std::sqrt(1.0 + tau * tau * s * s) /
           ((4.0 + kappa * s * s) * std::sqrt(1.0 - H * H * s * s));
  };
  auto slope_prime = [H, kappa, tau](double s) {
    const double s2 = s * s;
    const double base = -4.0 * H * std::sqrt(1.0 + tau * tau * s2) /
                        ((4.0 + kappa * s2) * std::sqrt(1.0 - H * H * s2));
    const double log_terms = tau * tau / (1.0 + tau * tau * s2) - 2.0 * kappa / (4.0 + kappa * s2) +
                             H * H / (1.0 - H * H * s2);
    return base * (1.0 + s2 * log_terms);
  };
  auto height = [slope](double v) { return integrate(slope, 0.0, v); };

  auto jet = [=](double u, double v) {
    const double c = std::cos(u), s = std::sin(u);
    SurfaceJet j;
    j.x = Vec3(v * c, v * s, height(v));
    j.xu = Vec3(-v * s, v * c, 0.0);
    j.xv = Vec3(c, s, slope(v));
    j.xuu = Vec3(-v * c, -v * s, 0.0);
    j.xuv = Vec3(-s, c, 0.0);
    j.xvv = Vec3(0.0, 0.0, slope_prime(v));
    return j;
  };
  SurfacePatch patch(
      space, [=](double u, double v) { return Vec3(v * std::cos(u), v * std::sin(u), height(v)); },
      {-pi, pi, v_lo, v_hi}, 1, jet);
  ModelSurfaceSpec spec{Family::S, H, kappa, tau};
  spec.margin = margin;
  spec.v_max = v_max;
  return {spec, orient(patch, H)};
}

ModelSurface make_C(double H, double kappa, double tau, int branch, double margin, double v_max) {
  require_finite({H, kappa, tau, margin});
  if (!(4.0 * H * H + kappa < 0.0)) {
    fail(ErrorKind::Parameter, "C-surfaces require 4H^2 + kappa < 0");
  }
  const ChartedSpace space = ChartedSpace::make(kappa, tau);
  const double sign = branch >= 0 ? 1.0 : -1.0;
  const double inner = 4.0 * std::abs(H) / (-kappa);
  const double outer = 2.0 / std::sqrt(-kappa);
  if (v_max > 0.0 && v_max >= outer) {
    fail(ErrorKind::Domain, "C-surface parameter v must stay below 2/sqrt(-kappa)");
  }
  const double width = outer - inner;
  const double v_lo = inner + margin * width;
  const double v_hi = v_max > 0.0 ? v_max : outer - margin * width;
  const double pitch = 4.0 * tau / kappa;

  auto slope = [H, kappa, tau](double s) {
    if (H == 0.0) return 0.0;
    return 16.0 * H * std::sqrt(16.0 * tau * tau + kappa * kappa * s * s) /
           (kappa * s * (4.0 + kappa * s * s) * std::sqrt(kappa * kappa * s * s - 16.0 * H * H));
  };
  auto slope_prime = [=](double s) {
    if (H == 0.0) return 0.0;
    const double k2s2 = kappa * kappa * s * s;
    const double log_terms = kappa * kappa * s / (16.0 * tau * tau + k2s2) - 1.0 / s -
                             2.0 * kappa * s / (4.0 + kappa * s * s) -
                             kappa * kappa * s / (k2s2 - 16.0 * H * H);
    return slope(s) * log_terms;
  };
  // Substituting s = inner + w^2 removes the inverse square root at the inner endpoint.
  auto regular = [=](double w) {
    if (H == 0.0) return 0.0;
    const double s = inner + w * w;
    return 32.0 * H * std::sqrt(16.0 * tau * tau + kappa * kappa * s * s) /
           (kappa * std::abs(kappa) * s * (4.0 + kappa * s * s) * std::sqrt(s + inner));
  };
  auto height = [=](double v) {
    return v <= inner ? 0.0 : integrate(regular, 0.0, std::sqrt(v - inner));
  };

  // The rotation runs clockwise so that the screw motion matches the handedness of the metric.
  auto jet = [=](double u, double v) {
    const double c = std::cos(u), s = std::sin(u);
    SurfaceJet j;
    j.x = Vec3(v * c, -v * s, pitch * u + sign * height(v));
    j.xu = Vec3(-v * s, -v * c, pitch);
    j.xv = Vec3(c, -s, sign * slope(v));
    j.xuu = Vec3(-v * c, v * s, 0.0);
    j.xuv = Vec3(-s, -c, 0.0);
    j.xvv = Vec3(0.0, 0.0, sign * slope_prime(v));
    return j;
  };
  SurfacePatch patch(
      space,
      [=](double u, double v) {
        return Vec3(v * std::cos(u), -v * std::sin(u), pitch * u + sign * height(v));
      },
      {-pi, pi, v_lo, v_hi}, 1, jet);
  ModelSurfaceSpec spec{Family::C, H, kappa, tau};
  spec.margin = margin;
  spec.branch = branch >= 0 ? 1 : -1;
  spec.v_max = v_max;
  return {spec, orient(patch, H)};
}

double parabolic_helicoid_slope(double H, double kappa, double tau) {
  return 2.0 * H * std::sqrt(-kappa + 4.0 * tau * tau) / (-kappa * std::sqrt(-4.0 * H * H - kappa));
}

ModelSurface make_P(double H, double kappa, double tau) {
  require_finite({H, kappa, tau});
  if (!(4.0 * H * H + kappa < 0.0)) {
    fail(ErrorKind::Parameter, "parabolic helicoids require 4H^2 + kappa < 0");
  }
  const ChartedSpace space = ChartedSpace::make(kappa, tau, Chart::Halfspace);
  const double a = parabolic_helicoid_slope(H, kappa, tau);
  auto jet = [a](double u, double v) {
    return SurfaceJet{Vec3(u, v, a * std::log(v)), Vec3::UnitX(),      Vec3(0.0, 1.0, a / v),
                      Vec3::Zero(),                 Vec3::Zero(),       Vec3(0.0, 0.0, -a / (v * v))};
  };
  SurfacePatch patch(space, [a](double u, double v) { return Vec3(u, v, a * std::log(v)); },
                     {-1.0, 1.0, 0.5, 2.0}, 1, jet);
  ModelSurfaceSpec spec{Family::P, H, kappa, tau};
  return {spec, orient(patch, H)};
}

ModelSurface make_perturbed_slice(double kappa, double tau, double amplitude) {
  require_finite({kappa, tau, amplitude});
  const ChartedSpace space = ChartedSpace::make(kappa, tau);
  auto jet = [amplitude](double u, double v) {
    return SurfaceJet{Vec3(u, v, amplitude * u * u), Vec3(1.0, 0.0, 2.0 * amplitude * u),
                      Vec3::UnitY(),                 Vec3(0.0, 0.0, 2.0 * amplitude),
                      Vec3::Zero(),                  Vec3::Zero()};
  };
  const double w = standard_half_width(kappa);
  SurfacePatch patch(space, [amplitude](double u, double v) { return Vec3(u, v, amplitude * u * u); },
                     {-w, w, -w, w}, 1, jet);
  ModelSurfaceSpec spec{Family::PerturbedSlice, 0.0, kappa, tau};
  spec.amplitude = amplitude;
  return {spec, patch};
}

ModelSurface make_model(const ModelSurfaceSpec& spec) {
  switch (spec.family) {
    case Family::Cylinder: return make_cylinder(spec.kappa, spec.tau, spec.H);
    case Family::Slice:
      if (spec.tau != 0.0) fail(ErrorKind::Parameter, "horizontal slices require tau = 0");
      return make_slice(spec.kappa, spec.t0);
    case Family::S: return make_S(spec.H, spec.kappa, spec.tau, spec.margin, spec.v_max);
    case Family::C:
      return make_C(spec.H, spec.kappa, spec.tau, spec.branch, spec.margin, spec.v_max);
    case Family::P: return make_P(spec.H, spec.kappa, spec.tau);
    case Family::PerturbedSlice: return make_perturbed_slice(spec.kappa, spec.tau, spec.amplitude);
  }
  fail(ErrorKind::Usage, "unknown surface family");
}

SisterParameters sister_parameters(double H, double kappa, double tau) {
  require_finite({H, kappa, tau});
  if (kappa - 4.0 * tau * tau == 0.0) {
    fail(ErrorKind::Parameter, "kappa - 4 tau^2 must be nonzero");
  }
  return {std::sqrt(H * H + tau * tau), kappa - 4.0 * tau * tau, 0.0};
}

}  // namespace ektau
