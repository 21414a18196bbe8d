#pragma once

#include <string>

#include "ektau/surface_calculus.hpp"

namespace ektau {

enum class Family { Cylinder, Slice, S, C, P, PerturbedSlice };

const char* family_name(Family family);
/// Accepts the names produced by family_name (case-insensitive); throws Error(Usage).
Family parse_family(const std::string& name);

struct ModelSurfaceSpec {
  Family family = Family::Cylinder;
  double H = 0.0;
  double kappa = -1.0;
  double tau = 0.0;
  double t0 = 0.0;           // slice height
  double margin = 1e-3;      // relative truncation near singular parameter endpoints
  int branch = 1;            // sign in front of the C-family integral
  double amplitude = 0.1;    // PerturbedSlice: z = amplitude * u^2
  double v_max = 0.0;        // S and C: explicit upper v bound, 0 = automatic
};

struct ModelSurface {
  ModelSurfaceSpec spec;
  SurfacePatch patch;
};

/// Vertical cylinder over a Euclidean circle through the chart origin; such
/// circles have constant geodesic curvature 2H in the base.
ModelSurface make_cylinder(double kappa, double tau, double H);
/// Horizontal slice z = t0; requires tau = 0.
ModelSurface make_slice(double kappa, double t0);
/// Rotationally invariant surface with vanishing Abresch-Rosenberg differential.
ModelSurface make_S(double H, double kappa, double tau, double margin = 1e-3, double v_max = 0.0);
/// Screw-motion invariant surface; requires 4H^2 + kappa < 0.
ModelSurface make_C(double H, double kappa, double tau, int branch = 1, double margin = 1e-3,
                    double v_max = 0.0);
/// Parabolic helicoid in the halfspace chart; requires 4H^2 + kappa < 0.
ModelSurface make_P(double H, double kappa, double tau);
/// Graph z = amplitude u^2 over the slice z = 0 (negative control).
ModelSurface make_perturbed_slice(double kappa, double tau, double amplitude = 0.1);

ModelSurface make_model(const ModelSurfaceSpec& spec);

/// Coefficient a of the parabolic helicoid z = a log y.
double parabolic_helicoid_slope(double H, double kappa, double tau);

struct SisterParameters {
  double H = 0.0;
  double kappa = 0.0;
  double tau = 0.0;
};

/// (H, kappa, tau) -> (sqrt(H^2 + tau^2), kappa - 4 tau^2, 0).
SisterParameters sister_parameters(double H, double kappa, double tau);

}  // namespace ektau
