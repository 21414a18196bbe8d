#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "ektau/ektau.h"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string temp_path(const char* name) { return std::string(EKTAU_TEST_TMP) + "/" + name; }

}  // namespace

TEST_CASE("space handles") {
  ekt_space* space = nullptr;
  REQUIRE(ekt_space_create(0.0, 0.5, 0, &space) == EKT_OK);

  const double p[3] = {1.0, 0.0, 0.0};
  double g[9];
  REQUIRE(ekt_space_metric(space, p, g) == EKT_OK);
  const double expected[9] = {1.0, 0.0, 0.0, 0.0, 1.25, 0.5, 0.0, 0.5, 1.0};
  for (int i = 0; i < 9; ++i) CHECK(g[i] == doctest::Approx(expected[i]).epsilon(1e-15));

  double gamma[27];
  CHECK(ekt_space_christoffel(space, p, gamma) == EKT_OK);

  const double x[3] = {1.0, 0.0, 0.0}, z[3] = {0.0, 0.0, 1.0};
  double r[3];
  REQUIRE(ekt_space_curvature(space, p, x, z, z, r) == EKT_OK);
  double gx[3] = {0.0, 0.0, 0.0};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) gx[i] += g[i * 3 + j] * x[j];
  }
  // x is horizontal at p, so <R(x, xi) xi, x> = tau^2 |x|^2.
  const double sectional = r[0] * gx[0] + r[1] * gx[1] + r[2] * gx[2];
  CHECK(sectional == doctest::Approx(0.25 * g[0]).epsilon(1e-10));

  double w[3];
  CHECK(ekt_space_cross(space, p, x, z, w) == EKT_OK);

  const double origin[3] = {0.0, 0.0, 0.0};
  double p_out[3], v_out[3];
  REQUIRE(ekt_geodesic_flow(space, origin, z, 2.0, 1e-3, p_out, v_out, nullptr) == EKT_OK);
  CHECK(p_out[2] == doctest::Approx(2.0).epsilon(1e-12));
  ekt_space_destroy(space);
}

TEST_CASE("error statuses and messages") {
  ekt_space* space = nullptr;
  CHECK(ekt_space_create(1.0, 0.5, 0, &space) == EKT_ERR_PARAMETER);
  CHECK(space == nullptr);
  CHECK(std::string(ekt_last_error()).size() > 0);
  CHECK(ekt_space_create(-1.0, 0.0, 0, nullptr) == EKT_ERR_NULL);
  CHECK(std::string(ekt_status_name(EKT_ERR_FOCAL)) == "focal point");

  REQUIRE(ekt_space_create(-1.0, 0.0, 1, &space) == EKT_OK);
  const double outside[3] = {0.0, -1.0, 0.0};
  double g[9];
  CHECK(ekt_space_metric(space, outside, g) == EKT_ERR_DOMAIN);

  const double start[3] = {0.0, 1.0, 0.0}, down[3] = {0.0, -1.0, 0.0};
  double p_out[3], v_out[3], exit_t = 0.0;
  CHECK(ekt_geodesic_flow(space, start, down, 40.0, 1e-2, p_out, v_out, &exit_t) == EKT_ERR_ESCAPE);
  CHECK(exit_t > 15.0);
  CHECK(exit_t < 25.0);
  ekt_space_destroy(space);
  ekt_space_destroy(nullptr);
}

TEST_CASE("surfaces through the C interface") {
  ekt_surface_params params;
  ekt_surface_params_default(&params);
  REQUIRE(ekt_family_parse("P", &params.family) == EKT_OK);
  params.H = 0.25;
  params.kappa = -1.0;
  params.tau = 0.0;

  ekt_surface* surface = nullptr;
  REQUIRE(ekt_surface_create(&params, &surface) == EKT_OK);
  double dom[4];
  REQUIRE(ekt_surface_domain(surface, dom) == EKT_OK);

  ekt_sample s;
  REQUIRE(ekt_surface_sample(surface, 0.5 * (dom[0] + dom[1]), 0.5 * (dom[2] + dom[3]), &s) == EKT_OK);
  CHECK(s.H == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(s.nu * s.nu == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(std::abs(s.q) < 1e-10);

  ekt_class label;
  REQUIRE(ekt_surface_classify(surface, 20, 20, &label) == EKT_OK);
  CHECK(label == EKT_CLASS_PARABOLIC_HELICOID);
  CHECK(std::string(ekt_class_name(label)) == "ParabolicHelicoid");

  ekt_jacobi jd;
  REQUIRE(ekt_surface_jacobi(surface, s.u, s.v, &jd) == EKT_OK);
  double h0 = 0.0;
  REQUIRE(ekt_jacobi_mean(&jd, 0.0, &h0) == EKT_OK);
  CHECK(h0 == doctest::Approx(0.25).epsilon(1e-12));

  double far[3];
  CHECK(ekt_surface_normal_exponential(surface, s.u, s.v, 0.0, far) == EKT_OK);
  CHECK(far[0] == doctest::Approx(s.point[0]));
  ekt_surface_destroy(surface);

  params.H = 0.6;
  CHECK(ekt_surface_create(&params, &surface) == EKT_ERR_PARAMETER);
  ekt_family family;
  CHECK(ekt_family_parse("torus", &family) == EKT_ERR_USAGE);
}

TEST_CASE("Jacobi propagation through the C interface") {
  ekt_jacobi jd;
  REQUIRE(ekt_jacobi_make(-1.0, 0.0, 0.0, 0.0, 0.0, 0.0, &jd) == EKT_OK);
  CHECK(jd.delta == 1.0);
  double h = 0.0;
  REQUIRE(ekt_jacobi_mean(&jd, 1.0, &h) == EKT_OK);
  CHECK(h == doctest::Approx(-0.3807970780).epsilon(1e-10));

  double b[4], c[4], a[4];
  REQUIRE(ekt_jacobi_B(&jd, 1.0, b) == EKT_OK);
  CHECK(b[3] == doctest::Approx(std::cosh(1.0)));
  REQUIRE(ekt_jacobi_C(&jd, 1.0, c) == EKT_OK);
  CHECK(c[3] == doctest::Approx(std::sinh(1.0)));
  REQUIRE(ekt_jacobi_parallel_shape(&jd, 1.0, a) == EKT_OK);
  CHECK(a[0] + a[3] == doctest::Approx(-std::tanh(1.0)));

  ekt_jacobi sphere;
  REQUIRE(ekt_jacobi_make(1.0, 0.0, 0.0, 0.0, 0.0, 0.0, &sphere) == EKT_OK);
  CHECK(ekt_jacobi_parallel_shape(&sphere, std::acos(0.0), a) == EKT_ERR_FOCAL);

  double sister[3];
  REQUIRE(ekt_sister_parameters(0.0, -1.0, 0.5, sister) == EKT_OK);
  CHECK(sister[0] == doctest::Approx(0.5));
  CHECK(sister[1] == doctest::Approx(-2.0));
  CHECK(sister[2] == 0.0);
}

TEST_CASE("CSV writers") {
  ekt_surface_params params;
  ekt_surface_params_default(&params);
  params.family = EKT_FAMILY_CYLINDER;
  params.kappa = -1.0;
  ekt_surface* surface = nullptr;
  REQUIRE(ekt_surface_create(&params, &surface) == EKT_OK);

  const std::string sample = temp_path("capi_sample.csv");
  REQUIRE(ekt_write_sample_csv(surface, 4, 3, sample.c_str()) == EKT_OK);
  const std::string text = slurp(sample);
  CHECK(text.rfind("u,v,H,K,nu,q,k1,k2,T1,T2\n", 0) == 0);
  int lines = 0;
  for (char ch : text) lines += ch == '\n';
  CHECK(lines == 13);

  const double radii[] = {0.0, 1.0};
  const std::string parallel = temp_path("capi_parallel.csv");
  REQUIRE(ekt_write_parallel_csv(surface, 6, 6, radii, 2, parallel.c_str()) == EKT_OK);
  CHECK(slurp(parallel).find("ok") != std::string::npos);

  CHECK(ekt_write_sample_csv(surface, 4, 3, "/nonexistent-dir/x.csv") == EKT_ERR_IO);
  CHECK(ekt_write_sample_csv(nullptr, 4, 3, sample.c_str()) == EKT_ERR_NULL);
  ekt_surface_destroy(surface);
}

TEST_CASE("verification through the C interface") {
  ekt_verify_options options;
  ekt_verify_options_default(&options);
  options.only = "check_cpc";
  options.family = "S";
  const std::string json = temp_path("capi_verify.json");
  int all_pass = 1, n = 0;
  REQUIRE(ekt_run_verification(&options, json.c_str(), &all_pass, &n) == EKT_OK);
  CHECK(all_pass == 0);
  CHECK(n > 0);
  CHECK(slurp(json).find("\"all_pass\": false") != std::string::npos);

  options.family = "P";
  const char* keys[] = {"check_cpc"};
  const double values[] = {1e-3};
  options.tol_keys = keys;
  options.tol_values = values;
  options.n_tol = 1;
  REQUIRE(ekt_run_verification(&options, json.c_str(), &all_pass, &n) == EKT_OK);
  CHECK(all_pass == 1);
  CHECK(slurp(json).find("\"tolerance\": 0.001") != std::string::npos);

  options.family = "nonsense";
  CHECK(ekt_run_verification(&options, json.c_str(), &all_pass, &n) == EKT_ERR_USAGE);
}
