#pragma once

#include "spinstar/linalg.hpp"
#include "spinstar/model.hpp"
#include "spinstar/types.hpp"

namespace spinstar {

// Unitary time evolution U(t) = exp(-i H t) realized through a cached
// eigendecomposition of H; propagation per time point is two matrix-vector
// products. Immutable after construction, safe for concurrent use.
class Propagator {
 public:
  explicit Propagator(const ComplexMatrix& hamiltonian,
                      const Tolerances& tol = default_tolerances());
  explicit Propagator(EigenDecomposition eig);

  Eigen::Index dimension() const { return eig_.eigenvalues.size(); }
  const EigenDecomposition& decomposition() const { return eig_; }

  // V exp(-i diag(w) t) V^dag psi. Requires a normalized state of matching
  // dimension and finite t.
  StateVector propagate(const StateVector& state, double t,
                        const Tolerances& tol = default_tolerances()) const;

  // Materialized U(t).
  ComplexMatrix unitary(double t) const;

 private:
  EigenDecomposition eig_;
};

// Exact amplitudes of the evolved central one-particle state of the 3-ligand
// star at J = 1:
//   b_central(t) = e^{-3it/4}/4 + 3 e^{5it/4}/4
//   b_ligand(t)  = e^{-3it/4}/4 -   e^{5it/4}/4   (each ligand)
OneParticleAmplitudes cops_amplitudes_closed_form(double t);

// Exact amplitudes of the evolved ligand one-particle state of the 3-ligand
// star at J = 1, with excited_ligand in {1, 2, 3}:
//   b_central(t)  = e^{-3it/4}/4 - e^{5it/4}/4
//   b_excited(t)  = 2 e^{-it/4}/3 + e^{-3it/4}/4 + e^{5it/4}/12
//   b_other(t)    =  -e^{-it/4}/3 + e^{-3it/4}/4 + e^{5it/4}/12
// Choosing a different excited ligand permutes the ligand coefficients.
OneParticleAmplitudes lops_amplitudes_closed_form(double t, int excited_ligand);

}  // namespace spinstar
