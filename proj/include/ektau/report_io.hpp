#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "ektau/verification_suite.hpp"

namespace ektau {

/// Header `u,v,H,K,nu,q,k1,k2,T1,T2`, one row per cell-centred grid point.
void write_sample_csv(std::ostream& out, const SurfacePatch& patch, const Grid& grid);

struct ParallelRow {
  double r = 0.0;
  double h_closed_form = 0.0;  // at the domain centre
  double h_direct = 0.0;       // mean curvature of the constructed parallel patch there
  double detB = 0.0;
  double spread = 0.0;         // spread of the closed-form h(r) over grid base points
  std::string status = "ok";   // ok | focal | escape
};

/// Failures at one radius are recorded in the row's status with NaN values.
std::vector<ParallelRow> parallel_table(const SurfacePatch& patch, const Grid& grid,
                                        const std::vector<double>& radii);

/// Header `r,h_closed_form,h_direct,detB,spread_over_base_points,status`.
void write_parallel_csv(std::ostream& out, const std::vector<ParallelRow>& rows);

std::string verification_json(const SuiteResult& result);

}  // namespace ektau
