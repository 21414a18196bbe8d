#include "ektau/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include <json.hpp>

#include "ektau/errors.hpp"

namespace ektau {

namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

void write_sample_csv(std::ostream& out, const SurfacePatch& patch, const Grid& grid) {
  out << "u,v,H,K,nu,q,k1,k2,T1,T2\n";
  for (auto [u, v] : interior_points(patch.domain(), grid)) {
    const ExtrinsicSample s = sample_at(patch, u, v);
    out << num(u) << ',' << num(v) << ',' << num(s.mean) << ',' << num(s.gauss) << ',' << num(s.nu)
        << ',' << num(s.q) << ',' << num(s.k1) << ',' << num(s.k2) << ',' << num(s.t(0)) << ','
        << num(s.t(1)) << '\n';
  }
}

std::vector<ParallelRow> parallel_table(const SurfacePatch& patch, const Grid& grid,
                                        const std::vector<double>& radii) {
  const ChartedSpace& space = patch.space();
  const ParamDomain& d = patch.domain();
  const JacobiData centre = jacobi_data(space, sample_at(patch, d.u_mid(), d.v_mid()));
  std::vector<JacobiData> base;
  for (auto [u, v] : interior_points(d, grid)) {
    try {
      base.push_back(jacobi_data(space, sample_at(patch, u, v)));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Consistency) throw;
    }
  }

  std::vector<ParallelRow> rows;
  for (double r : radii) {
    ParallelRow row;
    row.r = r;
    try {
      row.detB = closed_form_B(centre, r).determinant();
      row.h_closed_form = parallel_mean_h(centre, r);
      double lo = std::numeric_limits<double>::infinity(), hi = -lo;
      for (const JacobiData& jd : base) {
        const double h = parallel_mean_h(jd, r);
        lo = std::min(lo, h);
        hi = std::max(hi, h);
      }
      row.spread = base.empty() ? 0.0 : hi - lo;
      row.h_direct = sample_at(parallel_patch(patch, r), d.u_mid(), d.v_mid()).mean;
    } catch (const EscapeError&) {
      row.status = "escape";
      row.h_direct = kNaN;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Focal && e.kind() != ErrorKind::Immersion) throw;
      row.status = "focal";
      row.h_closed_form = row.h_direct = row.spread = kNaN;
    }
    rows.push_back(row);
  }
  return rows;
}

void write_parallel_csv(std::ostream& out, const std::vector<ParallelRow>& rows) {
  out << "r,h_closed_form,h_direct,detB,spread_over_base_points,status\n";
  for (const ParallelRow& row : rows) {
    out << num(row.r) << ',' << num(row.h_closed_form) << ',' << num(row.h_direct) << ','
        << num(row.detB) << ',' << num(row.spread) << ',' << row.status << '\n';
  }
}

std::string verification_json(const SuiteResult& result) {
  using nlohmann::ordered_json;
  ordered_json checks = ordered_json::array();
  for (const VerificationReport& r : result.checks) {
    ordered_json params = ordered_json::object();
    if (!r.family.empty()) params["family"] = r.family;
    for (const auto& [key, value] : r.params) params[key] = value;
    ordered_json entry;
    entry["name"] = r.name;
    entry["params"] = params;
    entry["max_residual"] = r.max_residual;
    entry["tolerance"] = r.tolerance;
    entry["pass"] = r.pass;
    entry["expect"] = r.expect_fail ? "fail" : "pass";
    entry["samples"] = r.samples;
    if (r.skipped) entry["skipped"] = r.skipped;
    if (!r.note.empty()) entry["note"] = r.note;
    checks.push_back(std::move(entry));
  }
  ordered_json doc;
  doc["checks"] = std::move(checks);
  doc["all_pass"] = result.all_pass;
  return doc.dump(2) + "\n";
}

}  // namespace ektau
