#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "grhd/config.hpp"

namespace grhd {

struct RunResult {
  int status = 0;  // nonzero on any invariant violation or module error
  long steps = 0;
  double t = 0;
  std::string error;
};

/// Executes a run end to end: builds the scheme from the configuration,
/// advances to t_end with the scheme's CFL bound scaled by the configured
/// safety factor, writes snapshots and a per-step diagnostics CSV. Any state
/// failing admissibility terminates the run with a context report; nothing
/// is repaired silently.
RunResult run(const RunConfig& config);

struct ConvergenceRow {
  int cells;
  double l1_error;
  double order;  // vs the previous row; 0 for the first
};

/// Smooth-advection refinement study for the configured scheme. Each level
/// doubles the cell count along the wave axis; errors are L1 errors of the
/// recovered rest-mass density against the exact advected profile.
std::vector<ConvergenceRow> convergence_harness(const RunConfig& base,
                                                int levels,
                                                const std::string& csv_path);

/// Randomized property suites over the admissible-state algebra (sampled
/// set equivalence, splitting, convexity, scaling, concavity). Prints one
/// pass/fail line per suite; returns the number of failed suites.
int run_property_suite(unsigned long seed, std::ostream& out);

}  // namespace grhd
