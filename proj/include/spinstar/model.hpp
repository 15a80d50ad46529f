#pragma once

#include "spinstar/linalg.hpp"
#include "spinstar/types.hpp"

#include <string>

namespace spinstar {

// Spin-1/2 star network: one central qubit exchange-coupled to ligand_count
// outer qubits (ligands); ligands do not couple to each other. hbar is fixed
// to 1 and time is measured in units of 1/coupling.
struct StarModel {
  int ligand_count = 3;
  double coupling = 1.0;

  int sites() const { return ligand_count + 1; }
  Eigen::Index sector_dimension() const { return ligand_count + 1; }
  Eigen::Index full_dimension() const { return Eigen::Index{1} << sites(); }
};

// Throws std::invalid_argument unless ligand_count >= 1 and coupling is
// finite and nonzero.
void validate(const StarModel& model);

// Reads ligand_count / coupling from a plain-text key=value file. Blank lines
// and lines starting with '#' are skipped; unknown keys are rejected.
StarModel model_from_config(const std::string& path);

// Coefficients of a one-particle (single up-spin) state: index 0 carries the
// central excitation, index k >= 1 the excitation of ligand k (site k + 1).
struct OneParticleAmplitudes {
  ComplexVector b;
  double time = 0.0;
};

// sigma_alpha / 2 in the basis (|0> = down, |1> = up).
ComplexMatrix spin_half_matrix(Axis axis);

// I x ... x sigma_alpha/2 x ... x I with the spin matrix on the given
// 1-based site.
ComplexMatrix site_spin_operator(Axis axis, int site, int n_sites);

// Full-space Hamiltonian J * sum_n (Sx_1 Sx_n + Sy_1 Sy_n + Sz_1 Sz_n), the
// sum running over the ligand sites. Real in the computational basis.
ComplexMatrix build_full_hamiltonian(const StarModel& model);

// One-particle-sector Hamiltonian in the {central, ligand 1, ..., ligand L}
// basis: diagonal -L*J/4 for the central excitation, (L-2)*J/4 for each
// ligand excitation, off-diagonal J/2 between the central entry and every
// ligand entry, zero between ligands.
ComplexMatrix build_sector_hamiltonian(const StarModel& model);

// Full-space basis index of the ket with a single up spin at site
// amplitude_index + 1.
Eigen::Index one_particle_basis_index(int amplitude_index, int n_sites);

// Full-space state with amplitude b(k) on the one-particle ket of site k+1.
StateVector embed_one_particle(const OneParticleAmplitudes& amps, const StarModel& model,
                               const Tolerances& tol = default_tolerances());

// One-particle components of a full-space state; anything outside the sector
// is ignored.
OneParticleAmplitudes project_one_particle(const StateVector& state, const StarModel& model,
                                           double time = 0.0);

// Norm of the component of the state outside the one-particle sector.
double one_particle_leakage(const StateVector& state, const StarModel& model);

}  // namespace spinstar
