#include "spinstar/oracles.hpp"

#include "spinstar/entanglement.hpp"
#include "spinstar/evolution.hpp"
#include "spinstar/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>
#include <vector>

namespace spinstar {

OracleReport oracle_full_vs_sector(const StarModel& model, const OneParticleAmplitudes& initial,
                                   const std::vector<double>& t_samples, double tolerance) {
  validate(model);
  if (model.ligand_count > 8) {
    throw std::invalid_argument("oracle_full_vs_sector: supports up to 8 ligands");
  }
  if (t_samples.empty()) {
    throw std::invalid_argument("oracle_full_vs_sector: no time samples");
  }
  std::vector<double> times = t_samples;
  std::sort(times.begin(), times.end());
  if (!(times.front() >= 0.0) || !std::isfinite(times.back())) {
    throw std::invalid_argument("oracle_full_vs_sector: samples must be finite and >= 0");
  }

  const ComplexMatrix full = build_full_hamiltonian(model);
  const Propagator sector(build_sector_hamiltonian(model));

  // Series route: one exponential per distinct grid gap, applied
  // cumulatively. The Hamiltonian never couples magnetization sectors, so
  // every product in the series keeps exact zeros outside the block and the
  // stepping cannot leak by construction error.
  std::map<double, ComplexMatrix> step_cache;
  const auto step_unitary = [&](double dt) -> const ComplexMatrix& {
    auto it = step_cache.find(dt);
    if (it == step_cache.end()) {
      it = step_cache.emplace(dt, matrix_exp_series(full, Complex(0.0, -dt), 1e-13)).first;
    }
    return it->second;
  };

  StateVector series_state = embed_one_particle(initial, model);
  double current_t = 0.0;
  double max_deviation = 0.0;
  for (const double t : times) {
    const double dt = t - current_t;
    if (dt > 0.0) {
      series_state = step_unitary(dt) * series_state;
      current_t = t;
    }
    const OneParticleAmplitudes series_amps = project_one_particle(series_state, model, t);
    OneParticleAmplitudes sector_amps;
    sector_amps.b = sector.propagate(initial.b, t);
    max_deviation =
        std::max(max_deviation, (series_amps.b - sector_amps.b).cwiseAbs().maxCoeff());
    max_deviation = std::max(max_deviation, one_particle_leakage(series_state, model));
  }

  OracleReport report;
  report.check_name = "full_vs_sector(L=" + std::to_string(model.ligand_count) + ")";
  report.max_deviation = max_deviation;
  report.sample_count = static_cast<int>(times.size());
  report.tolerance = tolerance;
  report.pass = max_deviation < tolerance;
  return report;
}

OracleReport oracle_concurrence_exhaustive(int trials, unsigned seed, int ligand_count,
                                           double tolerance) {
  if (trials < 1) {
    throw std::invalid_argument("oracle_concurrence_exhaustive: need at least one trial");
  }
  StarModel model;
  model.ligand_count = ligand_count;
  validate(model);
  const int dim = static_cast<int>(model.sector_dimension());

  std::mt19937 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  std::vector<ComplexVector> cases;
  {
    // Fixed cases: the bare excitation and the equal-weight W amplitudes.
    ComplexVector product = ComplexVector::Zero(dim);
    product(0) = 1.0;
    cases.push_back(product);
    ComplexVector w(dim);
    for (int k = 0; k < dim; ++k) {
      w(k) = (k == 0 ? 1.0 : -1.0) / std::sqrt(static_cast<double>(dim));
    }
    cases.push_back(w);
  }
  for (int trial = 0; trial < trials; ++trial) {
    ComplexVector b(dim);
    for (int k = 0; k < dim; ++k) {
      b(k) = Complex(gauss(rng), gauss(rng));
    }
    cases.push_back(b / b.norm());
  }

  double max_deviation = 0.0;
  for (const ComplexVector& b : cases) {
    OneParticleAmplitudes amps;
    amps.b = b;
    const StateVector psi = embed_one_particle(amps, model);
    const RealMatrix general = pairwise_concurrence_matrix(psi);
    const RealMatrix shortcut = pairwise_concurrence_matrix(amps);
    max_deviation = std::max(max_deviation, (general - shortcut).cwiseAbs().maxCoeff());
  }

  OracleReport report;
  report.check_name = "concurrence_shortcut_vs_general(L=" + std::to_string(ligand_count) + ")";
  report.max_deviation = max_deviation;
  report.sample_count = static_cast<int>(cases.size());
  report.tolerance = tolerance;
  report.seed = seed;
  report.pass = max_deviation < tolerance;
  return report;
}

}  // namespace spinstar
