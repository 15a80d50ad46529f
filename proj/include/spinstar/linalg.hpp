#pragma once

#include "spinstar/types.hpp"

namespace spinstar {

// Spectral data of a Hermitian matrix: h = V diag(w) V^dag with the
// eigenvalues w ascending and the eigenvector columns of V orthonormal.
struct EigenDecomposition {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;
};

// Kronecker product with row-major block convention:
// out(i*p + k, j*q + l) = a(i, j) * b(k, l) for b of shape p x q.
// Throws std::length_error when the result would exceed
// limits().max_dense_entries.
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);

// Eigendecomposition of a Hermitian matrix. Throws std::invalid_argument when
// the Hermiticity defect exceeds tol.hermiticity and std::runtime_error when
// the solver fails to converge.
EigenDecomposition hermitian_eig(const ComplexMatrix& h,
                                 const Tolerances& tol = default_tolerances());

// Taylor series of exp(scale * m) with scaling and squaring; the series stops
// once the max-abs norm of the running term drops below tol (tol must lie in
// (0, 1e-6]). Serves as the brute-force oracle against the eigendecomposition
// propagator; not intended for hot paths.
ComplexMatrix matrix_exp_series(const ComplexMatrix& m, Complex scale, double tol);

// Reduced 4x4 density matrix of a kept pair of sites (1-based). site_left is
// the most significant qubit of the pair basis |q_left q_right>, ordered
// |00>, |01>, |10>, |11>. The result is Hermitian by construction.
DensityMatrix partial_trace(const StateVector& state, int site_left, int site_right,
                            const Tolerances& tol = default_tolerances());

// Number of qubits of a state with the given dimension; throws unless the
// dimension is a power of two no smaller than 2.
int qubit_count(Eigen::Index dimension);

}  // namespace spinstar
