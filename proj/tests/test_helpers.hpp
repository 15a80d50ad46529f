#pragma once

#include "spinstar/model.hpp"
#include "spinstar/types.hpp"

#include <numbers>
#include <random>

namespace spinstar::testing {

inline constexpr double kPi = std::numbers::pi;

inline ComplexMatrix random_hermitian(int dim, std::mt19937& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      m(i, j) = Complex(gauss(rng), gauss(rng));
    }
  }
  return ((m + m.adjoint()) * 0.5).eval();
}

inline ComplexMatrix random_complex_matrix(int rows, int cols, std::mt19937& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      m(i, j) = Complex(gauss(rng), gauss(rng));
    }
  }
  return m;
}

inline StateVector random_state(Eigen::Index dim, std::mt19937& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  StateVector psi(dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    psi(k) = Complex(gauss(rng), gauss(rng));
  }
  return psi / psi.norm();
}

inline OneParticleAmplitudes random_one_particle(int sites, std::mt19937& rng) {
  OneParticleAmplitudes amps;
  amps.b = random_state(sites, rng);
  return amps;
}

// Basis ket written as a bit string, site 1 first.
inline StateVector ket(const std::string& bits) {
  StateVector psi = StateVector::Zero(Eigen::Index{1} << bits.size());
  Eigen::Index index = 0;
  for (char c : bits) index = (index << 1) | (c == '1' ? 1 : 0);
  psi(index) = 1.0;
  return psi;
}

// Equal-weight single-excitation amplitudes (1, -1, -1, -1)/2.
inline OneParticleAmplitudes w_amplitudes() {
  OneParticleAmplitudes amps;
  amps.b.resize(4);
  amps.b << 0.5, -0.5, -0.5, -0.5;
  return amps;
}

}  // namespace spinstar::testing
