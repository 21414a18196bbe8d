// Command-line front end. Talks to the library exclusively through ektau.h.
#include <CLI11.hpp>

#include <cstdio>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "ektau/ektau.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitIo = 2;
constexpr int kExitUsage = 64;

struct RunConfig {
  std::string family;
  double H = 0.0;
  double kappa = -1.0;
  double tau = 0.0;
  double t0 = 0.0;
  double margin = 1e-3;
  int branch = 1;
  double amplitude = 0.1;
  std::string grid = "20x20";
  std::string radii = "0,0.05,0.1,0.2";
  std::vector<std::string> tolerances;
  std::uint64_t seed = 0;
  std::string out = "-";
  std::string only;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::pair<int, int> parse_grid(const std::string& text) {
  static const std::regex pattern(R"((\d+)[xX](\d+))");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) throw UsageError("--grid expects NxM, got '" + text + "'");
  const int nu = std::stoi(m[1]), nv = std::stoi(m[2]);
  if (nu < 3 || nv < 3) throw UsageError("--grid must be at least 3x3");
  return {nu, nv};
}

double parse_number(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double x = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return x;
  } catch (const std::exception&) {
    throw UsageError("invalid number '" + text + "' in " + what);
  }
}

std::vector<double> parse_radii(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number(item, "--radii"));
  if (out.empty()) throw UsageError("--radii needs at least one value");
  return out;
}

std::pair<std::vector<std::string>, std::vector<double>> parse_tolerances(const std::vector<std::string>& items) {
  std::vector<std::string> keys;
  std::vector<double> values;
  for (const std::string& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--tol expects key=value, got '" + item + "'");
    keys.push_back(item.substr(0, eq));
    values.push_back(parse_number(item.substr(eq + 1), "--tol"));
  }
  return {keys, values};
}

int exit_code_for(ekt_status status) {
  switch (status) {
    case EKT_OK: return kExitOk;
    case EKT_ERR_PARAMETER:
    case EKT_ERR_DOMAIN:
    case EKT_ERR_USAGE:
    case EKT_ERR_NULL: return kExitUsage;
    case EKT_ERR_IO: return kExitIo;
    default: return kExitFailure;
  }
}

int report(ekt_status status) {
  if (status != EKT_OK) {
    std::fprintf(stderr, "ektau: %s: %s\n", ekt_status_name(status), ekt_last_error());
  }
  return exit_code_for(status);
}

struct SurfaceHandle {
  ekt_surface* ptr = nullptr;
  ~SurfaceHandle() { ekt_surface_destroy(ptr); }
};

ekt_status build_surface(const RunConfig& cfg, SurfaceHandle& handle) {
  if (cfg.family.empty()) throw UsageError("--family is required");
  ekt_surface_params params;
  ekt_surface_params_default(&params);
  if (ekt_status s = ekt_family_parse(cfg.family.c_str(), &params.family); s != EKT_OK) return s;
  params.H = cfg.H;
  params.kappa = cfg.kappa;
  params.tau = cfg.tau;
  params.t0 = cfg.t0;
  params.margin = cfg.margin;
  params.branch = cfg.branch;
  params.amplitude = cfg.amplitude;
  return ekt_surface_create(&params, &handle.ptr);
}

int cmd_sample(const RunConfig& cfg) {
  const auto [nu, nv] = parse_grid(cfg.grid);
  SurfaceHandle surface;
  if (ekt_status s = build_surface(cfg, surface); s != EKT_OK) return report(s);
  return report(ekt_write_sample_csv(surface.ptr, nu, nv, cfg.out.c_str()));
}

int cmd_parallel(const RunConfig& cfg) {
  const auto [nu, nv] = parse_grid(cfg.grid);
  const std::vector<double> radii = parse_radii(cfg.radii);
  SurfaceHandle surface;
  if (ekt_status s = build_surface(cfg, surface); s != EKT_OK) return report(s);
  return report(ekt_write_parallel_csv(surface.ptr, nu, nv, radii.data(), radii.size(), cfg.out.c_str()));
}

int cmd_verify(const RunConfig& cfg, bool radii_given) {
  const auto [nu, nv] = parse_grid(cfg.grid);
  const std::vector<double> radii = parse_radii(cfg.radii);
  const auto [keys, values] = parse_tolerances(cfg.tolerances);
  std::vector<const char*> key_ptrs;
  for (const std::string& k : keys) key_ptrs.push_back(k.c_str());

  ekt_verify_options options;
  ekt_verify_options_default(&options);
  options.seed = cfg.seed;
  options.grid_nu = nu;
  options.grid_nv = nv;
  if (radii_given) {
    options.radii = radii.data();
    options.n_radii = radii.size();
  }
  options.tol_keys = key_ptrs.data();
  options.tol_values = values.data();
  options.n_tol = keys.size();
  options.only = cfg.only.c_str();
  options.family = cfg.family.c_str();
  options.margin = cfg.margin;

  int all_pass = 0, n_checks = 0;
  if (ekt_status s = ekt_run_verification(&options, cfg.out.c_str(), &all_pass, &n_checks); s != EKT_OK) {
    return report(s);
  }
  std::fprintf(stderr, "ektau verify: %d checks, %s\n", n_checks, all_pass ? "all pass" : "FAILURES");
  return all_pass ? kExitOk : kExitFailure;
}

void add_surface_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--family", cfg.family, "cylinder, slice, S, C, P or graph");
  cmd->add_option("--H", cfg.H, "mean curvature");
  cmd->add_option("--kappa", cfg.kappa, "base curvature");
  cmd->add_option("--tau", cfg.tau, "bundle curvature");
  cmd->add_option("--t0", cfg.t0, "slice height");
  cmd->add_option("--margin", cfg.margin, "relative truncation at singular parameter endpoints");
  cmd->add_option("--branch", cfg.branch, "sign branch of the C family (+1 or -1)");
  cmd->add_option("--amplitude", cfg.amplitude, "amplitude of the perturbed slice z = a u^2");
  cmd->add_option("--grid", cfg.grid, "sampling grid NxM");
  cmd->add_option("--out", cfg.out, "output path ('-' for stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Surfaces in the homogeneous spaces E(kappa, tau)"};
  app.require_subcommand(1);
  RunConfig cfg;

  CLI::App* sample = app.add_subcommand("sample", "sample surface invariants on a grid to CSV");
  add_surface_options(sample, cfg);
  CLI::App* parallel = app.add_subcommand("parallel", "mean curvature of parallel surfaces to CSV");
  add_surface_options(parallel, cfg);
  parallel->add_option("--radii", cfg.radii, "comma-separated radii");
  CLI::App* verify = app.add_subcommand("verify", "run the verification suite and write a JSON report");
  verify->add_option("--family", cfg.family, "restrict to one surface family");
  verify->add_option("--grid", cfg.grid, "sampling grid NxM");
  CLI::Option* radii_opt = verify->add_option("--radii", cfg.radii, "comma-separated radii");
  verify->add_option("--margin", cfg.margin, "relative truncation at singular parameter endpoints");
  verify->add_option("--tol", cfg.tolerances, "tolerance override key=value (repeatable)");
  verify->add_option("--seed", cfg.seed, "random seed");
  verify->add_option("--out", cfg.out, "output path ('-' for stdout)");
  verify->add_option("--only", cfg.only, "run only checks with this name or name prefix");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::fprintf(stderr, "%s", app.help().c_str());
    return kExitUsage;
  }

  try {
    if (sample->parsed()) return cmd_sample(cfg);
    if (parallel->parsed()) return cmd_parallel(cfg);
    if (verify->parsed()) return cmd_verify(cfg, radii_opt->count() > 0);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "ektau: %s\n%s", e.what(), app.help().c_str());
    return kExitUsage;
  }
  return kExitUsage;
}
