#pragma once

#include "spinstar/analysis.hpp"
#include "spinstar/model.hpp"

#include <string>
#include <vector>

namespace spinstar {

struct VerificationCheck {
  std::string name;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  bool skipped = false;
  std::string note;
};

// Compares every registered closed form against the numeric pipeline on a
// uniform grid. Only valid for the 3-ligand star; time is rescaled by the
// coupling before evaluating the J = 1 formulas.
std::vector<VerificationCheck> run_closed_form_checks(const StarModel& model,
                                                      double t_max, int steps,
                                                      double tolerance);

// Scenario-independent invariants that hold for any ligand count: norm
// preservation, unitarity of U(t), total-magnetization conservation, the
// probability-magnetization identity, xx = yy correlator equality, sector
// permutation symmetry, and shortcut-vs-general concurrence agreement.
std::vector<VerificationCheck> run_generic_invariants(const StarModel& model,
                                                      double t_max, int samples,
                                                      unsigned seed);

}  // namespace spinstar
