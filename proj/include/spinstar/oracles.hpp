#pragma once

#include "spinstar/model.hpp"

#include <string>
#include <vector>

namespace spinstar {

struct OracleReport {
  std::string check_name;
  double max_deviation = 0.0;
  int sample_count = 0;
  double tolerance = 0.0;
  unsigned seed = 0;  // zero for deterministic checks
  bool pass = false;
};

// Evolves the embedded one-particle state in the full space with the
// series matrix exponential (one exp per distinct grid gap, applied
// cumulatively) and compares the projected amplitudes against the sector
// propagator at every sample; the reported deviation also covers any leakage
// out of the sector. Requires ligand_count <= 8.
OracleReport oracle_full_vs_sector(const StarModel& model, const OneParticleAmplitudes& initial,
                                   const std::vector<double>& t_samples,
                                   double tolerance = 1e-9);

// Seeded random one-particle amplitudes (plus the fixed product-state and
// W-state cases); every pair is compared between the one-particle shortcut
// and the general Wootters path through partial traces.
OracleReport oracle_concurrence_exhaustive(int trials, unsigned seed, int ligand_count = 3,
                                           double tolerance = 1e-10);

}  // namespace spinstar
