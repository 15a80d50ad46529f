#include "spinstar/linalg.hpp"

#include "spinstar/evolution.hpp"
#include "spinstar/model.hpp"
#include "test_helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace spinstar;
using namespace spinstar::testing;

TEST_SUITE_BEGIN("linalg");

TEST_CASE("tensor product of identities") {
  const ComplexMatrix id2 = ComplexMatrix::Identity(2, 2);
  CHECK((tensor_product(id2, id2) - ComplexMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("tensor product reproduces the two-qubit spin flip") {
  const ComplexMatrix sy = 2.0 * spin_half_matrix(Axis::Y);
  const ComplexMatrix flip = tensor_product(sy, sy);
  CHECK(flip(3, 0) == Complex(-1.0, 0.0));
  // |00> maps to -|11>.
  ComplexMatrix e00 = ComplexMatrix::Zero(4, 1);
  e00(0, 0) = 1.0;
  const ComplexMatrix mapped = flip * e00;
  CHECK(mapped(3, 0) == Complex(-1.0, 0.0));
  CHECK(std::abs(mapped(0, 0)) == 0.0);
  CHECK(std::abs(mapped(1, 0)) == 0.0);
  CHECK(std::abs(mapped(2, 0)) == 0.0);
  CHECK(flip.imag().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("tensor product of Sz with Sz") {
  const ComplexMatrix sz = spin_half_matrix(Axis::Z);
  const ComplexMatrix prod = tensor_product(sz, sz);
  CHECK(prod(0, 0).real() == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(prod(1, 1).real() == doctest::Approx(-0.25).epsilon(1e-15));
  CHECK(prod(2, 2).real() == doctest::Approx(-0.25).epsilon(1e-15));
  CHECK(prod(3, 3).real() == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(prod.cwiseAbs().sum() == doctest::Approx(1.0));  // purely diagonal
}

TEST_CASE("tensor product associativity") {
  std::mt19937 rng(11);
  for (int round = 0; round < 20; ++round) {
    const ComplexMatrix a = random_complex_matrix(2, 3, rng);
    const ComplexMatrix b = random_complex_matrix(3, 2, rng);
    const ComplexMatrix c = random_complex_matrix(2, 2, rng);
    const ComplexMatrix left = tensor_product(tensor_product(a, b), c);
    const ComplexMatrix right = tensor_product(a, tensor_product(b, c));
    REQUIRE(left.rows() == right.rows());
    REQUIRE(left.cols() == right.cols());
    // Index placement is exact; entries may differ by one reassociated rounding.
    CHECK((left - right).cwiseAbs().maxCoeff() <= 1e-15 * left.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("tensor product size guard") {
  const ComplexMatrix tall = ComplexMatrix::Zero(4097, 1);
  CHECK_THROWS_AS((void)tensor_product(tall, tall.transpose()), std::length_error);
}

TEST_CASE("hermitian_eig on a diagonal matrix") {
  ComplexMatrix h = ComplexMatrix::Zero(2, 2);
  h(0, 0) = 0.25;
  h(1, 1) = -0.75;
  const EigenDecomposition eig = hermitian_eig(h);
  CHECK(eig.eigenvalues(0) == doctest::Approx(-0.75).epsilon(1e-15));
  CHECK(eig.eigenvalues(1) == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("hermitian_eig on the 3-ligand sector Hamiltonian") {
  StarModel model;
  const EigenDecomposition eig = hermitian_eig(build_sector_hamiltonian(model));
  CHECK(eig.eigenvalues(0) == doctest::Approx(-1.25).epsilon(1e-12));
  CHECK(eig.eigenvalues(1) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(eig.eigenvalues(2) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(eig.eigenvalues(3) == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("hermitian_eig on sigma_x") {
  ComplexMatrix h(2, 2);
  h << 0.0, 1.0, 1.0, 0.0;
  const EigenDecomposition eig = hermitian_eig(h);
  CHECK(eig.eigenvalues(0) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(eig.eigenvalues(1) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("hermitian_eig rejects non-Hermitian input") {
  ComplexMatrix h(2, 2);
  h << 0.0, 1.0, 0.0, 0.0;
  CHECK_THROWS_AS((void)hermitian_eig(h), std::invalid_argument);
}

TEST_CASE("hermitian_eig reconstruction and unitarity") {
  std::mt19937 rng(23);
  for (int dim : {2, 3, 5, 8, 16}) {
    const ComplexMatrix h = random_hermitian(dim, rng);
    const EigenDecomposition eig = hermitian_eig(h);
    const ComplexMatrix rebuilt = eig.eigenvectors *
                                  eig.eigenvalues.cast<Complex>().asDiagonal() *
                                  eig.eigenvectors.adjoint();
    CHECK((rebuilt - h).norm() / h.norm() < 1e-12);
    const ComplexMatrix gram = eig.eigenvectors.adjoint() * eig.eigenvectors;
    CHECK((gram - ComplexMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff() < 1e-12);
    for (int k = 1; k < dim; ++k) {
      CHECK(eig.eigenvalues(k) >= eig.eigenvalues(k - 1));
    }
  }
}

TEST_CASE("matrix_exp_series at zero scale is the identity") {
  std::mt19937 rng(5);
  const ComplexMatrix m = random_hermitian(6, rng);
  const ComplexMatrix u = matrix_exp_series(m, Complex(0.0, 0.0), 1e-12);
  CHECK((u - ComplexMatrix::Identity(6, 6)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("matrix_exp_series on a diagonal generator") {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = 0.75;
  m(1, 1) = -1.25;
  const ComplexMatrix u = matrix_exp_series(m, Complex(0.0, -kPi), 1e-13);
  CHECK(std::abs(u(0, 0) - std::polar(1.0, -0.75 * kPi)) < 1e-13);
  CHECK(std::abs(u(1, 1) - std::polar(1.0, 1.25 * kPi)) < 1e-13);
  CHECK(std::abs(u(0, 1)) == 0.0);
}

TEST_CASE("matrix_exp_series evolves the central excitation to the W point") {
  StarModel model;
  const ComplexMatrix u =
      matrix_exp_series(build_sector_hamiltonian(model), Complex(0.0, -kPi / 2.0), 1e-13);
  ComplexVector b0 = ComplexVector::Zero(4);
  b0(0) = 1.0;
  const ComplexVector b = u * b0;
  for (int k = 0; k < 4; ++k) {
    CHECK(std::abs(b(k)) == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("matrix_exp_series tolerance domain") {
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  CHECK_THROWS_AS((void)matrix_exp_series(id, Complex(1.0), 0.0), std::invalid_argument);
  CHECK_THROWS_AS((void)matrix_exp_series(id, Complex(1.0), 1e-3), std::invalid_argument);
}

TEST_CASE("series exponential agrees with the eigendecomposition propagator") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> time(0.0, 4.0 * kPi);
  for (int dim : {2, 4, 9, 16}) {
    const ComplexMatrix h = random_hermitian(dim, rng);
    const EigenDecomposition eig = hermitian_eig(h);
    for (int round = 0; round < 4; ++round) {
      const double t = time(rng);
      const ComplexMatrix series = matrix_exp_series(h, Complex(0.0, -t), 1e-13);
      ComplexVector phases(dim);
      for (int k = 0; k < dim; ++k) phases(k) = std::polar(1.0, -eig.eigenvalues(k) * t);
      const ComplexMatrix spectral =
          eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
      CHECK((series - spectral).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("partial trace of a product state") {
  const DensityMatrix rho = partial_trace(ket("0000"), 1, 2);
  CHECK(rho(0, 0).real() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(rho.cwiseAbs().sum() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("partial trace of the W state keeps the expected pair matrix") {
  StarModel model;
  const StateVector w = embed_one_particle(w_amplitudes(), model);
  const DensityMatrix rho = partial_trace(w, 1, 3);  // central and ligand 2
  CHECK(rho(0, 0).real() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(rho(1, 1).real() == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(rho(2, 2).real() == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(std::abs(rho(3, 3)) < 1e-14);
  CHECK(rho(2, 1).real() == doctest::Approx(-0.25).epsilon(1e-14));  // <10|rho|01>
}

TEST_CASE("partial trace of a Bell pair with a spectator pair") {
  StateVector psi = StateVector::Zero(16);
  psi(0) = 1.0 / std::sqrt(2.0);       // |0000>
  psi(0b1100) = 1.0 / std::sqrt(2.0);  // |1100>
  const DensityMatrix rho = partial_trace(psi, 1, 2);
  // Rank-one projector onto (|00> + |11>)/sqrt(2).
  CHECK(rho(0, 0).real() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(rho(3, 3).real() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(rho(0, 3).real() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(rho(3, 0).real() == doctest::Approx(0.5).epsilon(1e-14));
  const EigenDecomposition eig = hermitian_eig(rho);
  CHECK(eig.eigenvalues(3) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(std::abs(eig.eigenvalues(2)) < 1e-13);
}

TEST_CASE("partial trace contracts") {
  CHECK_THROWS_AS((void)partial_trace(ket("0000"), 1, 1), std::invalid_argument);
  CHECK_THROWS_AS((void)partial_trace(ket("0000"), 0, 2), std::out_of_range);
  CHECK_THROWS_AS((void)partial_trace(ket("0000"), 1, 5), std::out_of_range);
  StateVector unnormalized = ket("0000") * 2.0;
  CHECK_THROWS_AS((void)partial_trace(unnormalized, 1, 2), std::invalid_argument);
}

TEST_CASE("partial trace output is a density matrix for random states") {
  std::mt19937 rng(41);
  for (int round = 0; round < 25; ++round) {
    const StateVector psi = random_state(16, rng);
    const DensityMatrix rho = partial_trace(psi, 1 + round % 4, 1 + (round + 1 + round / 4) % 4);
    CHECK(std::abs(rho.trace().real() - 1.0) < 1e-12);
    CHECK(std::abs(rho.trace().imag()) < 1e-12);
    CHECK((rho - rho.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    const EigenDecomposition eig = hermitian_eig(rho);
    CHECK(eig.eigenvalues(0) > -1e-12);
  }
}

TEST_SUITE_END();
