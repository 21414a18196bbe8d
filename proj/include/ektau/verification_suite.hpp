#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ektau/classifier_verify.hpp"

namespace ektau {

struct VerificationOptions {
  std::uint64_t seed = 0;
  Grid grid;
  std::vector<double> radii{0.0, 0.05, 0.1, 0.2};
  std::map<std::string, double> tolerances;
  /// Run only checks whose name equals this or starts with it followed by '.'.
  /// Expectations are dropped in this mode: every check must meet its tolerance.
  std::string only;
  /// Restrict to checks on this family; checks without a surface are dropped.
  std::optional<Family> family;
  double margin = 1e-3;
};

struct SuiteResult {
  std::vector<VerificationReport> checks;
  bool all_pass = false;
};

/// Parameter pairs (kappa, tau) covered by the built-in matrix.
const std::vector<std::pair<double, double>>& verification_matrix();

SuiteResult run_verification_suite(const VerificationOptions& options = {});

// Stand-alone numerical checks that do not involve a surface. Each draws its
// samples from a generator seeded with `seed`.
VerificationReport check_ambient_curvature(double kappa, double tau, Chart chart, std::uint64_t seed,
                                           int samples = 200, double tolerance = 1e-4);
VerificationReport check_killing(double kappa, double tau, Chart chart, std::uint64_t seed,
                                 int samples = 500, double tolerance = 1e-6);
VerificationReport check_jacobi_closed_form(std::uint64_t seed, int draws = 200,
                                            double tolerance = 1e-7);
VerificationReport check_initial_shape(std::uint64_t seed, int draws = 200, double tolerance = 1e-12);
VerificationReport check_f_expansion(std::uint64_t seed, int draws = 100, double tolerance = 1e-8);
VerificationReport check_tanh_oracle(double tolerance = 1e-10);
VerificationReport check_sister_map(std::uint64_t seed, int draws = 100, double tolerance = 1e-12);
VerificationReport check_delta_sign(std::uint64_t seed, int draws = 200);
VerificationReport check_horizontal_geodesic(double tolerance = 1e-6);

/// Random Jacobi data; a third of the draws have |delta| below 1e-8.
std::vector<JacobiData> random_jacobi_data(std::uint64_t seed, int draws, double min_abs_delta = 0.0);

}  // namespace ektau
