#include "ektau/classifier_verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ektau/errors.hpp"

namespace ektau {

namespace {

constexpr double kConstancy = 1e-6;

struct RunningRange {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  double sum = 0.0;
  int count = 0;

  void add(double x) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
    sum += x;
    ++count;
  }
  double spread() const { return count ? hi - lo : 0.0; }
  double mean() const { return count ? sum / count : 0.0; }
  double max_deviation() const {
    return count ? std::max(hi - mean(), mean() - lo) : 0.0;
  }
  bool constant() const { return spread() < kConstancy * (1.0 + std::abs(mean())); }
};

std::vector<double> symmetric_radii(const std::vector<double>& radii) {
  std::vector<double> out;
  for (double r : radii) {
    out.push_back(r);
    if (r != 0.0) out.push_back(-r);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

VerificationReport finish(VerificationReport report) {
  report.pass = std::isfinite(report.max_residual) && report.max_residual <= report.tolerance;
  return report;
}

VerificationReport failed(VerificationReport report, const std::exception& e) {
  report.max_residual = std::numeric_limits<double>::quiet_NaN();
  report.pass = false;
  report.note = e.what();
  return report;
}

double xi_component(const ChartedSpace& space, const ExtrinsicSample& s, const Vec3& e) {
  return space.inner(s.point, space.killing_xi(s.point), e);
}

}  // namespace

std::vector<std::pair<double, double>> interior_points(const ParamDomain& d, const Grid& grid) {
  std::vector<std::pair<double, double>> pts;
  pts.reserve(static_cast<std::size_t>(grid.nu) * grid.nv);
  for (int i = 0; i < grid.nu; ++i) {
    for (int j = 0; j < grid.nv; ++j) {
      pts.emplace_back(d.u0 + (i + 0.5) * (d.u1 - d.u0) / grid.nu,
                       d.v0 + (j + 0.5) * (d.v1 - d.v0) / grid.nv);
    }
  }
  return pts;
}

std::vector<std::pair<double, double>> node_points(const ParamDomain& d, const Grid& grid) {
  std::vector<std::pair<double, double>> pts;
  const int nu = std::max(grid.nu, 2), nv = std::max(grid.nv, 2);
  for (int i = 0; i < nu; ++i) {
    for (int j = 0; j < nv; ++j) {
      pts.emplace_back(d.u0 + i * (d.u1 - d.u0) / (nu - 1), d.v0 + j * (d.v1 - d.v0) / (nv - 1));
    }
  }
  return pts;
}

double CheckSpec::tolerance_for(const std::string& key, double fallback) const {
  auto it = tolerances.find(key);
  return it == tolerances.end() ? fallback : it->second;
}

VerificationReport surface_report(const std::string& name, const ModelSurface& surface) {
  VerificationReport r;
  r.name = name;
  r.family = family_name(surface.spec.family);
  r.params = {{"H", surface.spec.H}, {"kappa", surface.spec.kappa}, {"tau", surface.spec.tau}};
  if (surface.spec.family == Family::Slice) r.params.emplace_back("t0", surface.spec.t0);
  if (surface.spec.family == Family::PerturbedSlice) {
    r.params.emplace_back("amplitude", surface.spec.amplitude);
  }
  return r;
}

VerificationReport check_cpc(const CheckSpec& spec) {
  VerificationReport report = surface_report(spec.name, spec.surface);
  report.tolerance = spec.tolerance_for("check_cpc", 1e-6);
  try {
    RunningRange k1, k2;
    for (auto [u, v] : interior_points(spec.surface.patch.domain(), spec.grid)) {
      const ExtrinsicSample s = sample_at(spec.surface.patch, u, v);
      k1.add(s.k1);
      k2.add(s.k2);
    }
    report.samples = k1.count;
    report.max_residual = std::max(k1.max_deviation(), k2.max_deviation());
    std::ostringstream os;
    os.precision(10);
    os << "k1 in [" << k1.lo << ", " << k1.hi << "], k2 in [" << k2.lo << ", " << k2.hi << "]";
    report.note = os.str();
  } catch (const Error& e) {
    return failed(report, e);
  }
  return finish(report);
}

VerificationReport check_isoparametric(const CheckSpec& spec) {
  VerificationReport report = surface_report(spec.name, spec.surface);
  report.tolerance = spec.tolerance_for("check_isoparametric", 1e-5);
  try {
    const ChartedSpace& space = spec.surface.patch.space();
    const std::vector<double> radii = symmetric_radii(spec.radii);
    std::vector<RunningRange> ranges(radii.size());
    for (auto [u, v] : interior_points(spec.surface.patch.domain(), spec.grid)) {
      JacobiData jd;
      try {
        jd = jacobi_data(space, sample_at(spec.surface.patch, u, v));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::Consistency) throw;
        ++report.skipped;
        continue;
      }
      for (std::size_t k = 0; k < radii.size(); ++k) ranges[k].add(parallel_mean_h(jd, radii[k]));
      ++report.samples;
    }
    double worst = 0.0, worst_r = 0.0;
    for (std::size_t k = 0; k < radii.size(); ++k) {
      if (ranges[k].spread() >= worst) {
        worst = ranges[k].spread();
        worst_r = radii[k];
      }
    }
    report.max_residual = worst;
    std::ostringstream os;
    os << "largest h(r) spread at r = " << worst_r;
    if (report.skipped) os << "; " << report.skipped << " points without a Jacobi frame skipped";
    report.note = os.str();
  } catch (const Error& e) {
    return failed(report, e);
  }
  return finish(report);
}

VerificationReport check_q(const CheckSpec& spec, double expected) {
  VerificationReport report = surface_report(spec.name, spec.surface);
  report.tolerance = spec.tolerance_for("check_q", 1e-6);
  try {
    double worst = 0.0;
    for (auto [u, v] : interior_points(spec.surface.patch.domain(), spec.grid)) {
      worst = std::max(worst, std::abs(sample_at(spec.surface.patch, u, v).q - expected));
      ++report.samples;
    }
    report.max_residual = worst;
    std::ostringstream os;
    os.precision(17);
    os << "expected q = " << expected;
    report.note = os.str();
  } catch (const Error& e) {
    return failed(report, e);
  }
  return finish(report);
}

VerificationReport check_q_vanishing(const CheckSpec& spec) { return check_q(spec, 0.0); }

const char* signature_name(AngleSignature signature) {
  switch (signature) {
    case AngleSignature::HorizontalAndVertical: return "nu^2 reaches 1 and nu reaches 0";
    case AngleSignature::HorizontalOnly: return "nu^2 reaches 1 only";
    case AngleSignature::VerticalOnly: return "nu reaches 0 only";
    case AngleSignature::ConstantOblique: return "constant nu with 0 < nu^2 < 1";
    case AngleSignature::Vertical: return "nu = 0";
    case AngleSignature::Horizontal: return "nu^2 = 1";
    case AngleSignature::Other: return "other";
  }
  return "other";
}

AngleStats angle_stats(const SurfacePatch& patch, const Grid& grid, double reach) {
  RunningRange nu, nu2, abs_nu;
  for (auto [u, v] : node_points(patch.domain(), grid)) {
    const double n = sample_at(patch, u, v).nu;
    nu.add(n);
    nu2.add(n * n);
    abs_nu.add(std::abs(n));
  }
  AngleStats st;
  st.nu2_min = nu2.lo;
  st.nu2_max = nu2.hi;
  st.abs_nu_min = abs_nu.lo;
  st.abs_nu_max = abs_nu.hi;
  st.nu_spread = nu.spread();

  const bool constant = nu.constant();
  if (constant && abs_nu.hi < kConstancy) {
    st.signature = AngleSignature::Vertical;
  } else if (constant && 1.0 - nu2.lo < kConstancy) {
    st.signature = AngleSignature::Horizontal;
  } else if (constant) {
    st.signature = AngleSignature::ConstantOblique;
  } else {
    const bool reaches_zero = abs_nu.lo < reach;
    const bool reaches_one = nu2.hi > 1.0 - reach * reach;
    if (reaches_zero && reaches_one) {
      st.signature = AngleSignature::HorizontalAndVertical;
    } else if (reaches_one) {
      st.signature = AngleSignature::HorizontalOnly;
    } else if (reaches_zero) {
      st.signature = AngleSignature::VerticalOnly;
    }
  }
  return st;
}

VerificationReport check_angle_signature(const CheckSpec& spec, AngleSignature expected) {
  VerificationReport report = surface_report(spec.name, spec.surface);
  const double reach = spec.tolerance_for("angle_reach", 0.1);
  report.tolerance = 0.0;
  try {
    const AngleStats st = angle_stats(spec.surface.patch, spec.grid, reach);
    report.samples = std::max(spec.grid.nu, 2) * std::max(spec.grid.nv, 2);
    std::ostringstream os;
    os.precision(10);
    os << "observed: " << signature_name(st.signature) << "; expected: " << signature_name(expected)
       << "; nu^2 in [" << st.nu2_min << ", " << st.nu2_max << "], |nu| in [" << st.abs_nu_min
       << ", " << st.abs_nu_max << "]";
    report.note = os.str();
    if (st.signature == expected) {
      report.max_residual = 0.0;
    } else {
      // Distance by which the observation missed the expected signature.
      double miss = 1.0;
      switch (expected) {
        case AngleSignature::Vertical: miss = st.abs_nu_max; break;
        case AngleSignature::Horizontal: miss = 1.0 - st.nu2_min; break;
        case AngleSignature::ConstantOblique: miss = st.nu_spread; break;
        case AngleSignature::VerticalOnly: miss = std::max(st.abs_nu_min - reach, 0.0) + std::max(st.nu2_max - (1.0 - reach * reach), 0.0); break;
        case AngleSignature::HorizontalOnly: miss = std::max(1.0 - reach * reach - st.nu2_max, 0.0) + std::max(reach - st.abs_nu_min, 0.0); break;
        case AngleSignature::HorizontalAndVertical: miss = std::max(st.abs_nu_min - reach, 0.0) + std::max(1.0 - reach * reach - st.nu2_max, 0.0); break;
        case AngleSignature::Other: break;
      }
      report.max_residual = miss > 0.0 ? miss : 1.0;
    }
  } catch (const Error& e) {
    return failed(report, e);
  }
  return finish(report);
}

std::vector<VerificationReport> check_cpc_relations(const CheckSpec& spec) {
  const ChartedSpace& space = spec.surface.patch.space();
  const double gap = space.bundle_gap();
  const double tau = space.tau();

  VerificationReport christoffel = surface_report(spec.name + ".christoffel", spec.surface);
  christoffel.tolerance = spec.tolerance_for("cpc_christoffel", 1e-4);
  const bool oblique = spec.surface.spec.family == Family::P;
  VerificationReport sigma = surface_report(spec.name + ".sigma", spec.surface);
  VerificationReport det = surface_report(spec.name + ".det", spec.surface);
  VerificationReport angle = surface_report(spec.name + ".angle", spec.surface);
  sigma.tolerance = det.tolerance = spec.tolerance_for("cpc_identity", 1e-6);
  angle.tolerance = spec.tolerance_for("cpc_angle", 1e-9);

  try {
    double worst_c = 0.0, worst_s = 0.0, worst_d = 0.0, worst_a = 0.0;
    for (auto [u, v] : interior_points(spec.surface.patch.domain(), spec.grid)) {
      const ExtrinsicSample s = sample_at(spec.surface.patch, u, v);
      const double split = s.k1 - s.k2;
      if (split < 1e-8) {
        ++christoffel.skipped;
        ++sigma.skipped;
        continue;
      }
      const FrameChristoffels fc = frame_christoffels(spec.surface.patch, u, v);
      const double t1 = xi_component(space, s, fc.e1);
      const double t2 = xi_component(space, s, fc.e2);
      // Codazzi in the principal frame; the derivative terms vanish for constant principal curvatures.
      worst_c = std::max({worst_c, std::abs(split * fc.p1 - fc.e2_k1 - gap * s.nu * t2),
                          std::abs(split * fc.p2 - fc.e1_k2 - gap * s.nu * t1)});
      ++christoffel.samples;
      if (oblique) {
        worst_s = std::max(worst_s, std::abs(gap / split * (1.0 - s.nu * s.nu) + split));
        ++sigma.samples;
      }
      worst_d = std::max(worst_d, std::abs(s.k1 * s.k2 + tau * tau));
      worst_a = std::max(worst_a, std::abs(s.nu * s.nu - (4.0 * s.mean * s.mean + space.kappa()) / gap));
      ++det.samples;
      ++angle.samples;
    }
    christoffel.max_residual = worst_c;
    sigma.max_residual = worst_s;
    det.max_residual = worst_d;
    angle.max_residual = worst_a;
    if (christoffel.skipped) {
      christoffel.note = std::to_string(christoffel.skipped) + " umbilic samples skipped";
    }
  } catch (const Error& e) {
    return {failed(christoffel, e)};
  }
  std::vector<VerificationReport> out{finish(christoffel)};
  if (oblique) {
    out.push_back(finish(sigma));
    out.push_back(finish(det));
    out.push_back(finish(angle));
  }
  return out;
}

VerificationReport check_gauss(const CheckSpec& spec) {
  VerificationReport report = surface_report(spec.name, spec.surface);
  report.tolerance = spec.tolerance_for("gauss", 1e-3);
  try {
    double worst = 0.0;
    for (auto [u, v] : interior_points(spec.surface.patch.domain(), spec.grid)) {
      const double extrinsic = sample_at(spec.surface.patch, u, v).gauss;
      worst = std::max(worst, std::abs(extrinsic - intrinsic_gauss_fd(spec.surface.patch, u, v)));
      ++report.samples;
    }
    report.max_residual = worst;
  } catch (const Error& e) {
    return failed(report, e);
  }
  return finish(report);
}

VerificationReport check_frame_identities(const CheckSpec& spec) {
  VerificationReport report = surface_report(spec.name, spec.surface);
  report.tolerance = spec.tolerance_for("frame_identities", 1e-4);
  const double tau = spec.surface.patch.space().tau();
  try {
    double worst_t = 0.0, worst_n = 0.0;
    for (auto [u, v] : interior_points(spec.surface.patch.domain(), spec.grid)) {
      const ExtrinsicSample s = sample_at(spec.surface.patch, u, v);
      worst_t = std::max(worst_t, (nabla_T_fd(spec.surface.patch, u, v) - nabla_T_identity(s, tau))
                                      .cwiseAbs()
                                      .maxCoeff());
      worst_n = std::max(worst_n,
                         (grad_nu_fd(spec.surface.patch, u, v) - grad_nu(s, tau)).cwiseAbs().maxCoeff());
      ++report.samples;
    }
    report.max_residual = std::max(worst_t, worst_n);
    std::ostringstream os;
    os << "nabla T residual " << worst_t << ", grad nu residual " << worst_n;
    report.note = os.str();
  } catch (const Error& e) {
    return failed(report, e);
  }
  return finish(report);
}

VerificationReport check_derivative_relations(const CheckSpec& spec) {
  VerificationReport report = surface_report(spec.name, spec.surface);
  report.tolerance = spec.tolerance_for("derivative_relations", 1e-5);
  try {
    const ParamDomain& d = spec.surface.patch.domain();
    const JacobiData jd =
        jacobi_data(spec.surface.patch.space(), sample_at(spec.surface.patch, d.u_mid(), d.v_mid()));
    const auto h = h_derivatives_at_zero(jd);
    const DerivativeRelations rel = derivative_relations(jd, h[0], h[1], h[2], h[3]);
    report.max_residual = rel.max_residual();
    report.samples = 1;
    std::ostringstream os;
    os << "a22 " << rel.a22_residual << ", |a12| " << rel.a12_residual << ", a11 " << rel.a11_residual;
    report.note = os.str();
  } catch (const Error& e) {
    return failed(report, e);
  }
  return finish(report);
}

VerificationReport check_parallel_direct(const CheckSpec& spec) {
  VerificationReport report = surface_report(spec.name, spec.surface);
  report.tolerance = spec.tolerance_for("parallel_direct", 1e-4);
  try {
    const SurfacePatch& patch = spec.surface.patch;
    const ParamDomain& d = patch.domain();
    const double u = d.u_mid(), v = d.v_mid();
    const JacobiData jd = jacobi_data(patch.space(), sample_at(patch, u, v));
    double worst = 0.0;
    for (double r : symmetric_radii(spec.radii)) {
      const double closed = parallel_mean_h(jd, r);
      const double direct = sample_at(parallel_patch(patch, r), u, v).mean;
      worst = std::max(worst, std::abs(closed - direct));
      ++report.samples;
    }
    report.max_residual = worst;
  } catch (const Error& e) {
    return failed(report, e);
  }
  return finish(report);
}

const char* class_name(SurfaceClass c) {
  switch (c) {
    case SurfaceClass::Cylinder: return "Cylinder";
    case SurfaceClass::Slice: return "Slice";
    case SurfaceClass::ParabolicHelicoid: return "ParabolicHelicoid";
    case SurfaceClass::NotIsoparametric: return "NotIsoparametric";
    case SurfaceClass::Unclassified: return "Unclassified";
  }
  return "Unclassified";
}

Classification classify(const SurfacePatch& patch, const Grid& grid) {
  const ChartedSpace& space = patch.space();
  RunningRange H, nu;
  double shape_max = 0.0;
  for (auto [u, v] : interior_points(patch.domain(), grid)) {
    const ExtrinsicSample s = sample_at(patch, u, v);
    H.add(s.mean);
    nu.add(s.nu);
    shape_max = std::max(shape_max, s.shape.cwiseAbs().maxCoeff());
  }
  Classification c;
  c.mean_H = H.mean();
  c.H_spread = H.spread();
  c.mean_nu = nu.mean();
  c.nu_spread = nu.spread();

  std::ostringstream os;
  os.precision(10);
  os << "H spread " << c.H_spread << ", nu spread " << c.nu_spread;
  if (!H.constant() || !nu.constant()) {
    c.label = SurfaceClass::NotIsoparametric;
  } else if (std::abs(c.mean_nu) < kConstancy) {
    c.label = SurfaceClass::Cylinder;
  } else if (1.0 - c.mean_nu * c.mean_nu < kConstancy) {
    if (space.tau() == 0.0 && shape_max < kConstancy) {
      c.label = SurfaceClass::Slice;
    } else {
      os << "; horizontal but not totally geodesic (max |A| " << shape_max << ")";
    }
  } else {
    const double predicted = (4.0 * c.mean_H * c.mean_H + space.kappa()) / space.bundle_gap();
    const double residual = std::abs(c.mean_nu * c.mean_nu - predicted);
    if (residual < kConstancy) {
      c.label = SurfaceClass::ParabolicHelicoid;
    } else {
      os << "; constant angle with nu^2 off the helicoid value by " << residual;
    }
  }
  c.diagnostics = os.str();
  return c;
}

VerificationReport check_classify(const CheckSpec& spec, SurfaceClass expected) {
  VerificationReport report = surface_report(spec.name, spec.surface);
  report.tolerance = 0.0;
  try {
    const Classification c = classify(spec.surface.patch, spec.grid);
    report.samples = spec.grid.nu * spec.grid.nv;
    report.max_residual = c.label == expected ? 0.0 : 1.0;
    report.note = std::string("label ") + class_name(c.label) + ", expected " + class_name(expected) +
                  "; " + c.diagnostics;
  } catch (const Error& e) {
    return failed(report, e);
  }
  return finish(report);
}

}  // namespace ektau
