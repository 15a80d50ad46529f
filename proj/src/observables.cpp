#include "spinstar/observables.hpp"

#include "spinstar/linalg.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace spinstar {

StateVector apply_site_spin(const StateVector& state, int site, Axis axis) {
  const int n = qubit_count(state.size());
  if (site < 1 || site > n) {
    throw std::out_of_range("apply_site_spin: site out of range 1.." + std::to_string(n));
  }
  const Eigen::Index mask = Eigen::Index{1} << (n - site);
  StateVector out = StateVector::Zero(state.size());
  switch (axis) {
    case Axis::X:
      for (Eigen::Index z = 0; z < state.size(); ++z) {
        out(z ^ mask) += 0.5 * state(z);
      }
      break;
    case Axis::Y:
      // S^y|0> = -(i/2)|1>, S^y|1> = +(i/2)|0>.
      for (Eigen::Index z = 0; z < state.size(); ++z) {
        out(z ^ mask) += ((z & mask) ? Complex(0.0, 0.5) : Complex(0.0, -0.5)) * state(z);
      }
      break;
    case Axis::Z:
      for (Eigen::Index z = 0; z < state.size(); ++z) {
        out(z) = ((z & mask) ? 0.5 : -0.5) * state(z);
      }
      break;
  }
  return out;
}

namespace {

double checked_real(Complex value, const Tolerances& tol, const char* what) {
  if (std::abs(value.imag()) > tol.imag_residue) {
    throw std::runtime_error(std::string(what) + ": imaginary residue " +
                             std::to_string(value.imag()) + " above tolerance");
  }
  return value.real();
}

void check_normalized(double norm, const Tolerances& tol, const char* what) {
  if (std::abs(norm - 1.0) > tol.normalization) {
    throw std::invalid_argument(std::string(what) + ": state is not normalized");
  }
}

}  // namespace

double spin_expectation(const StateVector& state, int site, Axis axis, const Tolerances& tol) {
  check_normalized(state.norm(), tol, "spin_expectation");
  return checked_real(state.dot(apply_site_spin(state, site, axis)), tol, "spin_expectation");
}

double two_point_correlator(const StateVector& state, int site_i, int site_j, Axis axis,
                            const Tolerances& tol) {
  if (site_i == site_j) {
    throw std::invalid_argument("two_point_correlator: sites must be distinct");
  }
  check_normalized(state.norm(), tol, "two_point_correlator");
  const StateVector applied = apply_site_spin(apply_site_spin(state, site_j, axis), site_i, axis);
  return checked_real(state.dot(applied), tol, "two_point_correlator");
}

RealVector one_particle_probabilities(const OneParticleAmplitudes& amps, const Tolerances& tol) {
  check_normalized(amps.b.norm(), tol, "one_particle_probabilities");
  return amps.b.cwiseAbs2();
}

double total_magnetization(const StateVector& state, const Tolerances& tol) {
  const int n = qubit_count(state.size());
  check_normalized(state.norm(), tol, "total_magnetization");
  double total = 0.0;
  for (Eigen::Index z = 0; z < state.size(); ++z) {
    const int ups = std::popcount(static_cast<unsigned long long>(z));
    total += std::norm(state(z)) * (ups - 0.5 * n);
  }
  return total;
}

}  // namespace spinstar
