#include "spinstar/verify.hpp"

#include "spinstar/entanglement.hpp"
#include "spinstar/evolution.hpp"
#include "spinstar/linalg.hpp"
#include "spinstar/observables.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace spinstar {

namespace {

VerificationCheck make_check(std::string name, double deviation, double tolerance) {
  VerificationCheck check;
  check.name = std::move(name);
  check.max_deviation = deviation;
  check.tolerance = tolerance;
  check.pass = deviation < tolerance;
  return check;
}

OneParticleAmplitudes random_amplitudes(int dim, std::mt19937& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  OneParticleAmplitudes amps;
  amps.b.resize(dim);
  for (int k = 0; k < dim; ++k) {
    amps.b(k) = Complex(gauss(rng), gauss(rng));
  }
  amps.b /= amps.b.norm();
  return amps;
}

}  // namespace

std::vector<VerificationCheck> run_closed_form_checks(const StarModel& model, double t_max,
                                                      int steps, double tolerance) {
  validate(model);
  if (model.ligand_count != 3) {
    throw std::invalid_argument("closed-form checks require the 3-ligand star");
  }

  std::vector<VerificationCheck> checks;
  for (Scenario scenario : {Scenario::Cops, Scenario::Lops}) {
    ScanConfig config;
    config.model = model;
    config.scenario = scenario;
    config.t_max = t_max;
    config.steps = steps;
    for (const ClosedForm& form : closed_form_catalog()) {
      if (form.scenario == scenario) config.quantities.push_back(form.id);
    }
    const TimeSeries series = scan(config);
    for (const ClosedForm& form : closed_form_catalog()) {
      if (form.scenario != scenario) continue;
      const std::vector<double>& column = series.column(form.id);
      double deviation = 0.0;
      for (std::size_t i = 0; i < column.size(); ++i) {
        // Reference formulas hold at J = 1; rescale time by the coupling.
        deviation = std::max(deviation,
                             std::abs(column[i] - form.eval(model.coupling * series.grid[i])));
      }
      checks.push_back(make_check(to_string(scenario) + ":" + form.id, deviation, tolerance));
    }
  }

  // Evolved amplitudes against the closed forms, complex and entrywise.
  {
    const Propagator propagator(build_full_hamiltonian(model));
    for (Scenario scenario : {Scenario::Cops, Scenario::Lops}) {
      ScanConfig config;
      config.model = model;
      config.scenario = scenario;
      config.t_max = t_max;
      config.steps = steps;
      const StateVector psi0 = embed_one_particle(initial_amplitudes(config), model);
      double deviation = 0.0;
      for (int i = 0; i < steps; ++i) {
        const double t = t_max * static_cast<double>(i) / static_cast<double>(steps - 1);
        const OneParticleAmplitudes numeric =
            project_one_particle(propagator.propagate(psi0, t), model, t);
        const OneParticleAmplitudes reference =
            scenario == Scenario::Cops ? cops_amplitudes_closed_form(model.coupling * t)
                                       : lops_amplitudes_closed_form(model.coupling * t, 3);
        deviation = std::max(deviation, (numeric.b - reference.b).cwiseAbs().maxCoeff());
      }
      checks.push_back(
          make_check(to_string(scenario) + ":amplitudes", deviation, tolerance));
    }
  }
  return checks;
}

std::vector<VerificationCheck> run_generic_invariants(const StarModel& model, double t_max,
                                                      int samples, unsigned seed) {
  validate(model);
  if (samples < 2) {
    throw std::invalid_argument("generic invariants need at least 2 samples");
  }

  std::vector<VerificationCheck> checks;
  std::mt19937 rng(seed);

  const ComplexMatrix sector = build_sector_hamiltonian(model);
  const Propagator propagator(sector);
  const int dim = static_cast<int>(model.sector_dimension());

  // Norm preservation and U(t) unitarity along the grid.
  {
    const OneParticleAmplitudes amps = random_amplitudes(dim, rng);
    double norm_defect = 0.0;
    double unitarity_defect = 0.0;
    for (int i = 0; i < samples; ++i) {
      const double t = t_max * static_cast<double>(i) / static_cast<double>(samples - 1);
      norm_defect = std::max(norm_defect, std::abs(propagator.propagate(amps.b, t).norm() - 1.0));
      if (i % std::max(1, samples / 8) == 0) {
        const ComplexMatrix u = propagator.unitary(t);
        unitarity_defect = std::max(
            unitarity_defect,
            (u.adjoint() * u - ComplexMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff());
      }
    }
    checks.push_back(make_check("unitarity:norm", norm_defect, default_tolerances().unitarity));
    checks.push_back(
        make_check("unitarity:U", unitarity_defect, default_tolerances().unitarity));
  }

  // Ligand permutation symmetry of the sector Hamiltonian, exact.
  {
    double defect = 0.0;
    for (int a = 1; a < dim; ++a) {
      for (int b = a + 1; b < dim; ++b) {
        ComplexMatrix permuted = sector;
        permuted.row(a).swap(permuted.row(b));
        permuted.col(a).swap(permuted.col(b));
        defect = std::max(defect, (permuted - sector).cwiseAbs().maxCoeff());
      }
    }
    checks.push_back(make_check("sector:permutation_symmetry", defect, 1e-300));
    checks.back().pass = defect == 0.0;
  }

  // Trajectory identities on a random one-particle initial state.
  {
    const OneParticleAmplitudes amps0 = random_amplitudes(dim, rng);
    const StateVector psi0 = embed_one_particle(amps0, model);
    const Propagator full(build_full_hamiltonian(model));
    double magnetization_drift = 0.0;
    double probability_identity = 0.0;
    double xx_yy_defect = 0.0;
    double shortcut_defect = 0.0;
    const double expected_m = 1.0 - 0.5 * model.sites();
    for (int i = 0; i < samples; ++i) {
      const double t = t_max * static_cast<double>(i) / static_cast<double>(samples - 1);
      const StateVector psi = full.propagate(psi0, t);
      const OneParticleAmplitudes amps = project_one_particle(psi, model, t);
      magnetization_drift =
          std::max(magnetization_drift, std::abs(total_magnetization(psi) - expected_m));
      const RealVector probs = amps.b.cwiseAbs2();
      for (int site = 1; site <= model.sites(); ++site) {
        probability_identity =
            std::max(probability_identity, std::abs(spin_expectation(psi, site, Axis::Z) -
                                                    (probs(site - 1) - 0.5)));
      }
      xx_yy_defect = std::max(xx_yy_defect,
                              std::abs(two_point_correlator(psi, 1, 2, Axis::X) -
                                       two_point_correlator(psi, 1, 2, Axis::Y)));
      if (i % std::max(1, samples / 8) == 0) {
        const RealMatrix general = pairwise_concurrence_matrix(psi);
        const RealMatrix shortcut = pairwise_concurrence_matrix(amps);
        shortcut_defect = std::max(shortcut_defect, (general - shortcut).cwiseAbs().maxCoeff());
      }
    }
    checks.push_back(make_check("conservation:total_magnetization", magnetization_drift, 1e-10));
    checks.push_back(make_check("identity:sz_equals_p_minus_half", probability_identity, 1e-12));
    checks.push_back(make_check("identity:xx_equals_yy", xx_yy_defect, 1e-12));
    checks.push_back(make_check("concurrence:shortcut_vs_general", shortcut_defect, 1e-10));
  }

  return checks;
}

}  // namespace spinstar
