#include "ektau/ektau.h"

#include <cstring>
#include <fstream>
#include <iostream>
#include <new>
#include <sstream>
#include <string>

#include "ektau/errors.hpp"
#include "ektau/report_io.hpp"

struct ekt_space {
  ektau::ChartedSpace space;
};

struct ekt_surface {
  ektau::ModelSurface surface;
};

namespace {

thread_local std::string last_error;

ekt_status status_of(ektau::ErrorKind kind) {
  using ektau::ErrorKind;
  switch (kind) {
    case ErrorKind::Parameter: return EKT_ERR_PARAMETER;
    case ErrorKind::Domain: return EKT_ERR_DOMAIN;
    case ErrorKind::Usage: return EKT_ERR_USAGE;
    case ErrorKind::Immersion: return EKT_ERR_IMMERSION;
    case ErrorKind::Umbilic: return EKT_ERR_UMBILIC;
    case ErrorKind::Focal: return EKT_ERR_FOCAL;
    case ErrorKind::Escape: return EKT_ERR_ESCAPE;
    case ErrorKind::Consistency: return EKT_ERR_CONSISTENCY;
    case ErrorKind::Io: return EKT_ERR_IO;
  }
  return EKT_ERR_INTERNAL;
}

template <typename F>
ekt_status guarded(F&& body) {
  try {
    body();
    return EKT_OK;
  } catch (const ektau::Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return EKT_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return EKT_ERR_INTERNAL;
  }
}

ekt_status null_argument() {
  last_error = "null argument";
  return EKT_ERR_NULL;
}

ektau::Vec3 vec(const double* p) { return ektau::Vec3(p[0], p[1], p[2]); }

void store(const ektau::Vec3& v, double* out) {
  for (int i = 0; i < 3; ++i) out[i] = v(i);
}

void store(const ektau::Mat2& m, double* out) {
  out[0] = m(0, 0);
  out[1] = m(0, 1);
  out[2] = m(1, 0);
  out[3] = m(1, 1);
}

ektau::JacobiData unpack(const ekt_jacobi* jd) {
  ektau::JacobiData d;
  d.a11 = jd->a11;
  d.a12 = jd->a12;
  d.a22 = jd->a22;
  d.nu = jd->nu;
  d.delta = jd->delta;
  d.tau = jd->tau;
  return d;
}

void pack(const ektau::JacobiData& d, ekt_jacobi* out) {
  *out = ekt_jacobi{d.a11, d.a12, d.a22, d.nu, d.delta, d.tau};
}

ektau::Grid grid_of(int nu, int nv) {
  if (nu < 1 || nv < 1) ektau::fail(ektau::ErrorKind::Usage, "grid dimensions must be positive");
  return {nu, nv};
}

// Runs `write` against the file at path, or standard output for null / "-".
template <typename F>
void with_output(const char* path, F&& write) {
  if (path == nullptr || std::strcmp(path, "-") == 0) {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ostringstream buffer;
  write(buffer);
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) ektau::fail(ektau::ErrorKind::Io, std::string("cannot open ") + path + " for writing");
  file << buffer.str();
  file.close();
  if (!file) ektau::fail(ektau::ErrorKind::Io, std::string("failed writing ") + path);
}

}  // namespace

extern "C" {

const char* ekt_last_error(void) { return last_error.c_str(); }

const char* ekt_status_name(ekt_status status) {
  switch (status) {
    case EKT_OK: return "ok";
    case EKT_ERR_PARAMETER: return "parameter error";
    case EKT_ERR_DOMAIN: return "domain error";
    case EKT_ERR_USAGE: return "usage error";
    case EKT_ERR_IMMERSION: return "immersion error";
    case EKT_ERR_UMBILIC: return "umbilic point";
    case EKT_ERR_FOCAL: return "focal point";
    case EKT_ERR_ESCAPE: return "escaped chart";
    case EKT_ERR_CONSISTENCY: return "consistency error";
    case EKT_ERR_IO: return "i/o error";
    case EKT_ERR_NULL: return "null argument";
    case EKT_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

ekt_status ekt_space_create(double kappa, double tau, int halfspace, ekt_space** out) {
  if (!out) return null_argument();
  *out = nullptr;
  return guarded([&] {
    *out = new ekt_space{ektau::ChartedSpace::make(
        kappa, tau, halfspace ? ektau::Chart::Halfspace : ektau::Chart::Standard)};
  });
}

void ekt_space_destroy(ekt_space* space) { delete space; }

ekt_status ekt_space_metric(const ekt_space* space, const double p[3], double g[9]) {
  if (!space || !p || !g) return null_argument();
  return guarded([&] {
    const ektau::Mat3 m = space->space.metric_at(vec(p));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) g[3 * i + j] = m(i, j);
  });
}

ekt_status ekt_space_christoffel(const ekt_space* space, const double p[3], double gamma[27]) {
  if (!space || !p || !gamma) return null_argument();
  return guarded([&] {
    const ektau::Christoffel c = space->space.christoffel_at(vec(p));
    for (int k = 0; k < 3; ++k)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) gamma[9 * k + 3 * i + j] = c[k](i, j);
  });
}

ekt_status ekt_space_curvature(const ekt_space* space, const double p[3], const double x[3],
                               const double y[3], const double z[3], double out[3]) {
  if (!space || !p || !x || !y || !z || !out) return null_argument();
  return guarded([&] { store(space->space.curvature_R(vec(p), vec(x), vec(y), vec(z)), out); });
}

ekt_status ekt_space_cross(const ekt_space* space, const double p[3], const double u[3],
                           const double v[3], double out[3]) {
  if (!space || !p || !u || !v || !out) return null_argument();
  return guarded([&] { store(space->space.cross(vec(p), vec(u), vec(v)), out); });
}

ekt_status ekt_geodesic_flow(const ekt_space* space, const double p[3], const double v[3], double t,
                             double step, double p_out[3], double v_out[3], double* exit_t) {
  if (!space || !p || !v || !p_out || !v_out) return null_argument();
  return guarded([&] {
    try {
      const ektau::GeodesicState end =
          ektau::geodesic_flow(space->space, {vec(p), vec(v)}, t, step > 0.0 ? step : 1e-3);
      store(end.point, p_out);
      store(end.velocity, v_out);
    } catch (const ektau::EscapeError& e) {
      if (exit_t) *exit_t = e.exit_parameter();
      throw;
    }
  });
}

void ekt_surface_params_default(ekt_surface_params* params) {
  if (!params) return;
  const ektau::ModelSurfaceSpec spec;
  *params = ekt_surface_params{EKT_FAMILY_CYLINDER, spec.H,      spec.kappa,  spec.tau,
                               spec.t0,             spec.margin, spec.branch, spec.amplitude};
}

ekt_status ekt_family_parse(const char* name, ekt_family* out) {
  if (!name || !out) return null_argument();
  return guarded([&] { *out = static_cast<ekt_family>(ektau::parse_family(name)); });
}

const char* ekt_family_name(ekt_family family) {
  if (family < EKT_FAMILY_CYLINDER || family > EKT_FAMILY_PERTURBED_SLICE) return "unknown";
  return ektau::family_name(static_cast<ektau::Family>(family));
}

ekt_status ekt_surface_create(const ekt_surface_params* params, ekt_surface** out) {
  if (!params || !out) return null_argument();
  *out = nullptr;
  return guarded([&] {
    if (params->family < EKT_FAMILY_CYLINDER || params->family > EKT_FAMILY_PERTURBED_SLICE) {
      ektau::fail(ektau::ErrorKind::Usage, "unknown surface family");
    }
    ektau::ModelSurfaceSpec spec;
    spec.family = static_cast<ektau::Family>(params->family);
    spec.H = params->H;
    spec.kappa = params->kappa;
    spec.tau = params->tau;
    spec.t0 = params->t0;
    spec.margin = params->margin;
    spec.branch = params->branch;
    spec.amplitude = params->amplitude;
    *out = new ekt_surface{ektau::make_model(spec)};
  });
}

void ekt_surface_destroy(ekt_surface* surface) { delete surface; }

ekt_status ekt_surface_domain(const ekt_surface* surface, double domain[4]) {
  if (!surface || !domain) return null_argument();
  const ektau::ParamDomain& d = surface->surface.patch.domain();
  domain[0] = d.u0;
  domain[1] = d.u1;
  domain[2] = d.v0;
  domain[3] = d.v1;
  return EKT_OK;
}

ekt_status ekt_surface_sample(const ekt_surface* surface, double u, double v, ekt_sample* out) {
  if (!surface || !out) return null_argument();
  return guarded([&] {
    const ektau::ParamDomain& d = surface->surface.patch.domain();
    if (!d.contains(u, v)) ektau::fail(ektau::ErrorKind::Domain, "parameter outside the patch domain");
    const ektau::ExtrinsicSample s = ektau::sample_at(surface->surface.patch, u, v);
    ekt_sample r{};
    r.u = u;
    r.v = v;
    store(s.point, r.point);
    store(s.normal, r.normal);
    store(s.shape, r.shape);
    r.H = s.mean;
    r.K = s.gauss;
    r.nu = s.nu;
    r.q = s.q;
    r.k1 = s.k1;
    r.k2 = s.k2;
    r.T1 = s.t(0);
    r.T2 = s.t(1);
    *out = r;
  });
}

ekt_status ekt_surface_normal_exponential(const ekt_surface* surface, double u, double v, double r,
                                          double out[3]) {
  if (!surface || !out) return null_argument();
  return guarded([&] { store(ektau::normal_exponential(surface->surface.patch, u, v, r), out); });
}

ekt_status ekt_surface_classify(const ekt_surface* surface, int nu, int nv, ekt_class* out) {
  if (!surface || !out) return null_argument();
  return guarded([&] {
    *out = static_cast<ekt_class>(ektau::classify(surface->surface.patch, grid_of(nu, nv)).label);
  });
}

const char* ekt_class_name(ekt_class label) {
  if (label < EKT_CLASS_CYLINDER || label > EKT_CLASS_UNCLASSIFIED) return "unknown";
  return ektau::class_name(static_cast<ektau::SurfaceClass>(label));
}

ekt_status ekt_jacobi_make(double kappa, double tau, double nu, double a11, double a12, double a22,
                           ekt_jacobi* out) {
  if (!out) return null_argument();
  return guarded([&] { pack(ektau::JacobiData::make(kappa, tau, nu, a11, a12, a22), out); });
}

ekt_status ekt_surface_jacobi(const ekt_surface* surface, double u, double v, ekt_jacobi* out) {
  if (!surface || !out) return null_argument();
  return guarded([&] {
    const ektau::SurfacePatch& patch = surface->surface.patch;
    pack(ektau::jacobi_data(patch.space(), ektau::sample_at(patch, u, v)), out);
  });
}

ekt_status ekt_jacobi_B(const ekt_jacobi* jd, double r, double B[4]) {
  if (!jd || !B) return null_argument();
  return guarded([&] { store(ektau::closed_form_B(unpack(jd), r), B); });
}

ekt_status ekt_jacobi_C(const ekt_jacobi* jd, double r, double C[4]) {
  if (!jd || !C) return null_argument();
  return guarded([&] { store(ektau::closed_form_C(unpack(jd), r), C); });
}

ekt_status ekt_jacobi_parallel_shape(const ekt_jacobi* jd, double r, double A[4]) {
  if (!jd || !A) return null_argument();
  return guarded([&] { store(ektau::parallel_shape(unpack(jd), r), A); });
}

ekt_status ekt_jacobi_mean(const ekt_jacobi* jd, double r, double* h) {
  if (!jd || !h) return null_argument();
  return guarded([&] { *h = ektau::parallel_mean_h(unpack(jd), r); });
}

ekt_status ekt_sister_parameters(double H, double kappa, double tau, double out[3]) {
  if (!out) return null_argument();
  return guarded([&] {
    const ektau::SisterParameters s = ektau::sister_parameters(H, kappa, tau);
    out[0] = s.H;
    out[1] = s.kappa;
    out[2] = s.tau;
  });
}

ekt_status ekt_write_sample_csv(const ekt_surface* surface, int nu, int nv, const char* path) {
  if (!surface) return null_argument();
  return guarded([&] {
    const ektau::Grid grid = grid_of(nu, nv);
    with_output(path, [&](std::ostream& os) { ektau::write_sample_csv(os, surface->surface.patch, grid); });
  });
}

ekt_status ekt_write_parallel_csv(const ekt_surface* surface, int nu, int nv, const double* radii,
                                  size_t n_radii, const char* path) {
  if (!surface || (!radii && n_radii > 0)) return null_argument();
  return guarded([&] {
    const ektau::Grid grid = grid_of(nu, nv);
    const auto rows = ektau::parallel_table(surface->surface.patch, grid,
                                            std::vector<double>(radii, radii + n_radii));
    with_output(path, [&](std::ostream& os) { ektau::write_parallel_csv(os, rows); });
  });
}

void ekt_verify_options_default(ekt_verify_options* options) {
  if (!options) return;
  const ektau::VerificationOptions d;
  *options = ekt_verify_options{};
  options->seed = d.seed;
  options->grid_nu = d.grid.nu;
  options->grid_nv = d.grid.nv;
  options->margin = d.margin;
}

ekt_status ekt_run_verification(const ekt_verify_options* options, const char* json_path, int* all_pass,
                                int* n_checks) {
  if (!options) return null_argument();
  if ((options->n_tol > 0 && (!options->tol_keys || !options->tol_values)) ||
      (options->n_radii > 0 && !options->radii)) {
    return null_argument();
  }
  return guarded([&] {
    ektau::VerificationOptions o;
    o.seed = options->seed;
    o.grid = {options->grid_nu, options->grid_nv};
    if (options->radii && options->n_radii > 0) {
      o.radii.assign(options->radii, options->radii + options->n_radii);
    }
    for (size_t i = 0; i < options->n_tol; ++i) o.tolerances[options->tol_keys[i]] = options->tol_values[i];
    if (options->only) o.only = options->only;
    if (options->family && *options->family) o.family = ektau::parse_family(options->family);
    o.margin = options->margin;
    const ektau::SuiteResult result = ektau::run_verification_suite(o);
    const std::string json = ektau::verification_json(result);
    with_output(json_path, [&](std::ostream& os) { os << json; });
    if (all_pass) *all_pass = result.all_pass ? 1 : 0;
    if (n_checks) *n_checks = static_cast<int>(result.checks.size());
  });
}

}  // extern "C"
