#include "spinstar/linalg.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace spinstar {

namespace {

constexpr int kMaxSeriesTerms = 10000;

double hermiticity_defect(const ComplexMatrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t entries = static_cast<std::size_t>(a.rows()) * static_cast<std::size_t>(b.rows()) *
                              static_cast<std::size_t>(a.cols()) * static_cast<std::size_t>(b.cols());
  if (entries > limits().max_dense_entries) {
    throw std::length_error("tensor_product: result would hold " + std::to_string(entries) +
                            " entries, above the cap of " + std::to_string(limits().max_dense_entries));
  }
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

EigenDecomposition hermitian_eig(const ComplexMatrix& h, const Tolerances& tol) {
  if (h.rows() != h.cols() || h.rows() == 0) {
    throw std::invalid_argument("hermitian_eig: matrix must be square and non-empty");
  }
  if (!h.allFinite()) {
    throw std::invalid_argument("hermitian_eig: matrix has non-finite entries");
  }
  const double defect = hermiticity_defect(h);
  if (defect > tol.hermiticity) {
    throw std::invalid_argument("hermitian_eig: input is not Hermitian (defect " +
                                std::to_string(defect) + ")");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(((h + h.adjoint()) * 0.5).eval());
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_eig: eigensolver failed to converge after " +
                             std::to_string(h.rows()) + "x" + std::to_string(h.cols()) +
                             " iteration sweep");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix matrix_exp_series(const ComplexMatrix& m, Complex scale, double tol) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw std::invalid_argument("matrix_exp_series: matrix must be square and non-empty");
  }
  if (!m.allFinite() || !std::isfinite(scale.real()) || !std::isfinite(scale.imag())) {
    throw std::invalid_argument("matrix_exp_series: non-finite input");
  }
  if (!(tol > 0.0) || tol > 1e-6) {
    throw std::invalid_argument("matrix_exp_series: tol must lie in (0, 1e-6]");
  }

  const Eigen::Index n = m.rows();
  ComplexMatrix a = scale * m;

  // Halve until the max row sum is small enough for a short series, then
  // square back up.
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  }
  a /= std::exp2(squarings);

  ComplexMatrix sum = ComplexMatrix::Identity(n, n);
  ComplexMatrix term = ComplexMatrix::Identity(n, n);
  for (int k = 1;; ++k) {
    if (k > kMaxSeriesTerms) {
      throw std::runtime_error("matrix_exp_series: no convergence after " +
                               std::to_string(kMaxSeriesTerms) + " terms");
    }
    term = (term * a / static_cast<double>(k)).eval();
    sum += term;
    if (term.cwiseAbs().maxCoeff() < tol) {
      break;
    }
  }
  for (int s = 0; s < squarings; ++s) {
    sum = (sum * sum).eval();
  }
  return sum;
}

DensityMatrix partial_trace(const StateVector& state, int site_left, int site_right,
                            const Tolerances& tol) {
  const int n = qubit_count(state.size());
  if (site_left < 1 || site_left > n || site_right < 1 || site_right > n) {
    throw std::out_of_range("partial_trace: kept site out of range 1.." + std::to_string(n));
  }
  if (site_left == site_right) {
    throw std::invalid_argument("partial_trace: kept sites must be distinct");
  }
  if (std::abs(state.norm() - 1.0) > tol.normalization) {
    throw std::invalid_argument("partial_trace: state is not normalized");
  }

  const Eigen::Index dim = state.size();
  const int shift_left = n - site_left;
  const int shift_right = n - site_right;

  // Gather the kept-pair amplitudes per environment configuration, then
  // accumulate the rank-one contributions.
  Eigen::Matrix<Complex, 4, Eigen::Dynamic> groups =
      Eigen::Matrix<Complex, 4, Eigen::Dynamic>::Zero(4, dim / 4);
  for (Eigen::Index z = 0; z < dim; ++z) {
    const Eigen::Index qa = (z >> shift_left) & 1;
    const Eigen::Index qb = (z >> shift_right) & 1;
    Eigen::Index env = 0;
    for (int s = 1; s <= n; ++s) {
      if (s == site_left || s == site_right) continue;
      env = (env << 1) | ((z >> (n - s)) & 1);
    }
    groups(2 * qa + qb, env) = state(z);
  }

  DensityMatrix rho = DensityMatrix::Zero(4, 4);
  for (Eigen::Index e = 0; e < groups.cols(); ++e) {
    rho.noalias() += groups.col(e) * groups.col(e).adjoint();
  }
  return ((rho + rho.adjoint()) * 0.5).eval();
}

int qubit_count(Eigen::Index dimension) {
  if (dimension < 2 || (dimension & (dimension - 1)) != 0) {
    throw std::invalid_argument("state dimension " + std::to_string(dimension) +
                                " is not a power of two >= 2");
  }
  int n = 0;
  while ((Eigen::Index{1} << n) < dimension) ++n;
  return n;
}

}  // namespace spinstar
