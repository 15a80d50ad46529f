#pragma once

#include "spinstar/model.hpp"
#include "spinstar/types.hpp"

namespace spinstar {

enum class ConcurrenceMethod { WoottersGeneral, OneParticleShortcut };

struct ConcurrenceReport {
  int site_i = 0;
  int site_j = 0;
  double value = 0.0;
  ConcurrenceMethod method = ConcurrenceMethod::WoottersGeneral;
};

// Wootters concurrence of a two-qubit density matrix:
// C = max(0, lam1 - lam2 - lam3 - lam4) where the lam_r, sorted descending,
// are the square roots of the eigenvalues of rho (sy x sy) rho* (sy x sy).
// They are computed as the singular values of Psi^T (sy x sy) Psi for the
// spectral factorization rho = Psi Psi^dag, which is the same quantity
// without the square-root amplification of rounding noise in the null space
// of rho. Spectrum values below -tol.psd_clamp are rejected, values in
// [-tol.psd_clamp, 0) are clamped to zero.
double wootters_concurrence(const DensityMatrix& rho,
                            const Tolerances& tol = default_tolerances());

// 2 |b_i b_j| for a one-particle state; i, j are 0-based amplitude indices
// (index k is site k + 1).
double one_particle_concurrence(const OneParticleAmplitudes& amps, int i, int j);

// Symmetric matrix of all pairwise concurrences, entry (i, j) for sites
// (i + 1, j + 1), diagonal zero. The state overload runs the general Wootters
// path through partial traces; the amplitude overload uses the one-particle
// shortcut.
RealMatrix pairwise_concurrence_matrix(const StateVector& state,
                                       const Tolerances& tol = default_tolerances());
RealMatrix pairwise_concurrence_matrix(const OneParticleAmplitudes& amps);

// Largest overlap-squared |<W_N|psi>|^2 over all W-state phase choices,
// equal to (sum_i |b_i|)^2 / N.
double w_state_fidelity(const OneParticleAmplitudes& amps,
                        const Tolerances& tol = default_tolerances());

struct WStateVerdict {
  bool is_w_state = false;
  double spread = 0.0;     // max - min over all pairwise concurrences
  double deviation = 0.0;  // max |C_ij - 2/N| over all pairs
  double fidelity = 0.0;   // best-phase |<W_N|psi>|^2
  double time = 0.0;
};

// A state passes as a W state when every pairwise concurrence equals 2/N
// within tol (deviation < tol/2, so the spread stays below tol) and the
// fidelity exceeds 1 - tol.
WStateVerdict detect_w_state(const OneParticleAmplitudes& amps,
                             double tol = default_tolerances().w_state_exact);
WStateVerdict detect_w_state(const StateVector& state, double time = 0.0,
                             double tol = default_tolerances().w_state_exact);

}  // namespace spinstar
