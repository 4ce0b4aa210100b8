#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "sqz/errors.hpp"
#include "sqz/flow.hpp"

// Observables of a single-mode squeezed vacuum with parameter
// tau = r e^{i theta}, plus an independent truncated-Fock-space oracle.

namespace sqz::squeezed {

using flow::SqueezeParam;
using Complex = std::complex<double>;

struct OccupationSpectrum {
  std::vector<double> probs;  // indexed by n = 0..n_max; odd entries are 0
  double tail_bound;          // 1 - sum(probs), clipped at 0
};

/// p_{2k} = (tanh r)^{2k} q_k^2 / cosh r with q_k^2 = q_{k-1}^2 (2k-1)/(2k).
OccupationSpectrum occupation_probs(const SqueezeParam& tau, int n_max);

/// Probability of finding the squeezed state in the reference ground state:
/// p_0 = 1 / cosh r.
double fidelity(const SqueezeParam& tau);

/// L^2-normalized position wavefunction, a Gaussian of complex width
/// omega (1 + z)/(1 - z) with z = e^{i theta} tanh r.
Complex wavefunction(const SqueezeParam& tau, double omega, double x);

/// Phase-space rotation by beta: theta -> theta + 2 beta (mod 2 pi).
SqueezeParam rotate(const SqueezeParam& tau, double beta);

struct FockVector {
  Eigen::VectorXcd amplitudes;
};

/// Truncated-Fock-space oracle: exponentiate the squeeze generator
/// (conj(tau) a^2 - tau a*^2)/2 on dim levels and apply to |0>.
/// Requires dim >= 16 and r <= 1.5; throws DomainError when the truncation
/// tail exceeds 1e-8.
FockVector fock_oracle(const SqueezeParam& tau, int dim);

}  // namespace sqz::squeezed
