#pragma once

#include <complex>

#include "sqz/errors.hpp"

// Analytic solutions of the Weber equation  x'' + (t^2 + delta^2) x = 0,
// built from the complex Gamma function and the Kummer function M(a, b, z).
// This module is the closed-form counterpart of the ODE integrator in
// sqz::flow; the two are cross-checked against each other in the tests.

namespace sqz::weber {

using Complex = std::complex<double>;

/// Principal Gamma function for complex argument.
/// Lanczos rational approximation (g = 7, 9 terms) on Re z >= 0.5,
/// Euler reflection elsewhere. Relative accuracy ~1e-13 on the strip
/// |Im z| <= 10, 0 < Re z <= 10.
/// Throws DomainError at the poles (non-positive integers).
Complex gamma_complex(Complex z);

/// Kummer confluent hypergeometric M(a, b, z).
/// Taylor series in compensated double-double arithmetic for |z| <= kZSwitch,
/// the differentiable large-|z| expansion beyond. b must not be a
/// non-positive integer.
Complex hyp_m(Complex a, Complex b, Complex z);

/// Branch evaluators, exposed so the series/asymptotic overlap band can be
/// tested directly.
Complex hyp_m_series(Complex a, Complex b, Complex z);
Complex hyp_m_asymptotic(Complex a, Complex b, Complex z);

/// Switch radius between the two branches of hyp_m.
inline constexpr double kZSwitch = 30.0;

struct SolutionValue {
  double x;
  double xdot;
};

/// Even solution of x'' + (t^2 + delta_sq) x = 0 with x(0) = 1, x'(0) = 0.
/// Requires t >= 0; negative times follow from x(-t) = x(t).
SolutionValue even_solution(double t, double delta_sq);

/// Odd solution with x(0) = 0, x'(0) = 1 (so the pair has Wronskian 1).
SolutionValue odd_solution(double t, double delta_sq);

/// Large-time data of the two solutions: the inverse-Gamma amplitudes and
/// the phase model theta_pm(t) = t^2/2 + (delta_sq/2) log t + c_pm.
struct AsymptoticData {
  double delta_sq;
  Complex gamma_plus;   // 1 / Gamma((1 + i delta_sq)/4)
  Complex gamma_minus;  // 1 / Gamma((3 + i delta_sq)/4)
  double c_plus;        // -pi/8
  double c_minus;       // -3 pi/8

  double theta_plus(double t) const;
  double theta_minus(double t) const;
  /// d/dt of either phase: t + delta_sq / (2 t).
  double theta_prime(double t) const;
};

AsymptoticData asymptotic_data(double delta_sq);

struct AsymptoticSqueeze {
  double tanh_r;        // (1 + e^{pi delta_sq})^{-1/2}
  double theta_offset;  // -pi/2 - arg(gamma_plus * gamma_minus)
};

/// Closed-form squeezing of the far-future state for the gapped profile,
/// as a function of delta_sq = g^2/alpha. The full phase model is
/// theta(t) ~ -t^2 - delta_sq log t + theta_offset.
AsymptoticSqueeze asymptotic_squeeze(double delta_sq);

}  // namespace sqz::weber
