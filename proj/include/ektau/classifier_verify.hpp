#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ektau/jacobi_parallel.hpp"
#include "ektau/model_surfaces.hpp"

namespace ektau {

struct Grid {
  int nu = 20;
  int nv = 20;
};

/// Cell-centred parameter points, so that no sample touches the domain edge.
std::vector<std::pair<double, double>> interior_points(const ParamDomain& domain, const Grid& grid);
/// Node points including the domain edges.
std::vector<std::pair<double, double>> node_points(const ParamDomain& domain, const Grid& grid);

struct CheckSpec {
  std::string name;
  ModelSurface surface;
  Grid grid;
  std::vector<double> radii{0.0, 0.05, 0.1, 0.2};
  std::map<std::string, double> tolerances;

  double tolerance_for(const std::string& key, double fallback) const;
};

struct VerificationReport {
  std::string name;
  std::string family;  // empty for checks that do not involve a surface
  std::vector<std::pair<std::string, double>> params;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  bool expect_fail = false;
  int samples = 0;
  int skipped = 0;
  std::string note;
};

/// Report skeleton carrying the surface's family and parameters.
VerificationReport surface_report(const std::string& name, const ModelSurface& surface);

/// Spread of the principal curvatures about their grid means. Tolerance key "check_cpc".
VerificationReport check_cpc(const CheckSpec& spec);

/// Spread over base points of h(r) (radii taken with both signs). Tolerance key
/// "check_isoparametric".
VerificationReport check_isoparametric(const CheckSpec& spec);

/// max |q - expected| over the interior grid. Tolerance key "check_q".
VerificationReport check_q(const CheckSpec& spec, double expected);
VerificationReport check_q_vanishing(const CheckSpec& spec);

enum class AngleSignature {
  HorizontalAndVertical,  // nu^2 reaches 1 and nu reaches 0
  HorizontalOnly,         // nu^2 reaches 1, |nu| bounded away from 0
  VerticalOnly,           // nu reaches 0, nu^2 bounded away from 1
  ConstantOblique,        // nu constant with 0 < nu^2 < 1
  Vertical,               // nu identically 0
  Horizontal,             // nu^2 identically 1
  Other
};

const char* signature_name(AngleSignature signature);

struct AngleStats {
  double nu2_min = 0.0, nu2_max = 0.0;
  double abs_nu_min = 0.0, abs_nu_max = 0.0;
  double nu_spread = 0.0;
  AngleSignature signature = AngleSignature::Other;
};

/// Statistics over node points (edges included). `reach` is the threshold for
/// "attains": min |nu| < reach, max nu^2 > 1 - reach^2.
AngleStats angle_stats(const SurfacePatch& patch, const Grid& grid, double reach = 0.1);

/// Passes when the observed signature equals `expected`; the residual is the
/// distance of the deciding statistic from its threshold when it does not.
/// Tolerance key "angle_reach".
VerificationReport check_angle_signature(const CheckSpec& spec, AngleSignature expected);

/// Principal-frame Christoffel relations at non-umbilic interior samples:
///   (k1 - k2) p1 - e2(k1) = (kappa - 4 tau^2) nu <T, e2>
///   (k1 - k2) p2 - e1(k2) = (kappa - 4 tau^2) nu <T, e1>
/// For P inputs also the sigma, determinant and angle identities. Tolerance
/// keys "cpc_christoffel", "cpc_identity" and "cpc_angle".
std::vector<VerificationReport> check_cpc_relations(const CheckSpec& spec);

/// |gauss_K - Brioschi K| over the interior grid. Tolerance key "gauss".
VerificationReport check_gauss(const CheckSpec& spec);

/// D_v T = tau nu J v + nu A v and grad nu = -A T + tau J T against finite
/// differences. Tolerance key "frame_identities".
VerificationReport check_frame_identities(const CheckSpec& spec);

/// Recovery of a11, a12, a22 from derivatives of h at r = 0 at the domain
/// centre. Tolerance key "derivative_relations".
VerificationReport check_derivative_relations(const CheckSpec& spec);

/// h(r) from the closed form against the mean curvature of the directly
/// constructed parallel patch at the domain centre. Tolerance key "parallel_direct".
VerificationReport check_parallel_direct(const CheckSpec& spec);

enum class SurfaceClass { Cylinder, Slice, ParabolicHelicoid, NotIsoparametric, Unclassified };

const char* class_name(SurfaceClass c);

struct Classification {
  SurfaceClass label = SurfaceClass::Unclassified;
  double mean_H = 0.0;
  double H_spread = 0.0;
  double mean_nu = 0.0;
  double nu_spread = 0.0;
  std::string diagnostics;
};

/// Constant mean curvature together with a constant angle function decides the
/// type; fields count as constant when max - min < 1e-6 (1 + |mean|).
Classification classify(const SurfacePatch& patch, const Grid& grid = {});

/// Passes when classify returns `expected`. Tolerance key "classify" is unused.
VerificationReport check_classify(const CheckSpec& spec, SurfaceClass expected);

}  // namespace ektau
