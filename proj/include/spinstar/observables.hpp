#pragma once

#include "spinstar/model.hpp"
#include "spinstar/types.hpp"

namespace spinstar {

// S^alpha acting on one site (1-based), applied through bit masks in
// O(2^n) without materializing the operator.
StateVector apply_site_spin(const StateVector& state, int site, Axis axis);

// <psi| S^alpha_site |psi>. The imaginary residue must stay below
// tol.imag_residue; it is checked and discarded.
double spin_expectation(const StateVector& state, int site, Axis axis,
                        const Tolerances& tol = default_tolerances());

// Two-point correlator <psi| S^alpha_i S^alpha_j |psi> for distinct sites.
double two_point_correlator(const StateVector& state, int site_i, int site_j, Axis axis,
                            const Tolerances& tol = default_tolerances());

// P_k = |b_k|^2 for a normalized one-particle state.
RealVector one_particle_probabilities(const OneParticleAmplitudes& amps,
                                      const Tolerances& tol = default_tolerances());

// sum_i <S^z_i>; equals popcount(z) - n/2 averaged over the amplitudes.
double total_magnetization(const StateVector& state,
                           const Tolerances& tol = default_tolerances());

}  // namespace spinstar
