#include "spinstar/evolution.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace spinstar {

Propagator::Propagator(const ComplexMatrix& hamiltonian, const Tolerances& tol)
    : eig_(hermitian_eig(hamiltonian, tol)) {}

Propagator::Propagator(EigenDecomposition eig) : eig_(std::move(eig)) {
  if (eig_.eigenvectors.rows() != eig_.eigenvectors.cols() ||
      eig_.eigenvectors.rows() != eig_.eigenvalues.size()) {
    throw std::invalid_argument("Propagator: inconsistent eigendecomposition");
  }
}

StateVector Propagator::propagate(const StateVector& state, double t,
                                  const Tolerances& tol) const {
  if (state.size() != dimension()) {
    throw std::invalid_argument("propagate: state dimension mismatch");
  }
  if (!std::isfinite(t)) {
    throw std::invalid_argument("propagate: time must be finite");
  }
  if (std::abs(state.norm() - 1.0) > tol.normalization) {
    throw std::invalid_argument("propagate: state is not normalized");
  }
  ComplexVector coeffs = eig_.eigenvectors.adjoint() * state;
  for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
    coeffs(k) *= std::polar(1.0, -eig_.eigenvalues(k) * t);
  }
  return eig_.eigenvectors * coeffs;
}

ComplexMatrix Propagator::unitary(double t) const {
  ComplexVector phases(dimension());
  for (Eigen::Index k = 0; k < phases.size(); ++k) {
    phases(k) = std::polar(1.0, -eig_.eigenvalues(k) * t);
  }
  return eig_.eigenvectors * phases.asDiagonal() * eig_.eigenvectors.adjoint();
}

OneParticleAmplitudes cops_amplitudes_closed_form(double t) {
  const Complex e_slow = std::polar(1.0, -0.75 * t);
  const Complex e_fast = std::polar(1.0, 1.25 * t);
  OneParticleAmplitudes amps;
  amps.b.resize(4);
  amps.b(0) = 0.25 * e_slow + 0.75 * e_fast;
  const Complex ligand = 0.25 * e_slow - 0.25 * e_fast;
  amps.b(1) = ligand;
  amps.b(2) = ligand;
  amps.b(3) = ligand;
  amps.time = t;
  return amps;
}

OneParticleAmplitudes lops_amplitudes_closed_form(double t, int excited_ligand) {
  if (excited_ligand < 1 || excited_ligand > 3) {
    throw std::out_of_range("lops_amplitudes_closed_form: excited ligand must be 1..3");
  }
  const Complex e_quarter = std::polar(1.0, -0.25 * t);
  const Complex e_slow = std::polar(1.0, -0.75 * t);
  const Complex e_fast = std::polar(1.0, 1.25 * t);
  const Complex excited = (2.0 / 3.0) * e_quarter + 0.25 * e_slow + (1.0 / 12.0) * e_fast;
  const Complex other = (-1.0 / 3.0) * e_quarter + 0.25 * e_slow + (1.0 / 12.0) * e_fast;
  OneParticleAmplitudes amps;
  amps.b.resize(4);
  amps.b(0) = 0.25 * e_slow - 0.25 * e_fast;
  for (int ligand = 1; ligand <= 3; ++ligand) {
    amps.b(ligand) = ligand == excited_ligand ? excited : other;
  }
  amps.time = t;
  return amps;
}

}  // namespace spinstar
