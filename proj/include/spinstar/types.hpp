#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>

namespace spinstar {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Pure state of n qubits in the computational basis. Site 1 (the central
// qubit) maps to the most significant bit, so |q1 q2 ... qn> sits at index
// q1*2^(n-1) + q2*2^(n-2) + ... + qn. Bit value 1 means spin up.
using StateVector = ComplexVector;

// Hermitian, unit-trace, positive-semidefinite matrix.
using DensityMatrix = ComplexMatrix;

enum class Axis { X, Y, Z };

// Numerical thresholds backing the library contracts. The process-wide
// defaults can be tuned through default_tolerances().
struct Tolerances {
  double hermiticity = 1e-10;     // max entrywise |A - A^dag| accepted as Hermitian
  double normalization = 1e-10;   // accepted | ||psi|| - 1 |
  double unitarity = 1e-10;       // max entrywise |U^dag U - I|
  double reconstruction = 1e-12;  // relative Frobenius defect of V diag(w) V^dag
  double trace_defect = 1e-12;    // accepted |tr(rho) - 1|
  double psd_clamp = 1e-12;       // spectrum values in [-psd_clamp, 0) are clamped to 0
  double imag_residue = 1e-12;    // tolerated imaginary part of real-valued observables
  double w_state_exact = 1e-9;    // exact W-state detection window
  double w_state_pseudo = 0.05;   // pseudo-W-state window
};

Tolerances& default_tolerances();

// Dense-storage guard rails.
struct Limits {
  int max_qubits = 14;  // full Hilbert-space dimension capped at 2^max_qubits
  std::size_t max_dense_entries = std::size_t{1} << 24;
};

Limits& limits();

}  // namespace spinstar
