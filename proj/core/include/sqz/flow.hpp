#pragma once

#include <complex>
#include <vector>

#include "sqz/errors.hpp"

// Classical flow of the driven oscillator x'' + omega(t)^2 x = 0 with
// omega(t)^2 = alpha^2 t^2 + g^2, and the exact quantum propagator it
// induces as an SU(1,1) Bogoliubov matrix.

namespace sqz::flow {

using Complex = std::complex<double>;

/// Reduce an angle to [0, 2 pi).
double wrap_two_pi(double angle);

/// Distance between two angles on the circle, in [0, pi].
double circular_distance(double a, double b);

struct FrequencyProfile {
  double alpha = 1.0;  // > 0, angular acceleration
  double g = 0.0;      // >= 0, gap

  double omega_sq(double t) const { return alpha * alpha * t * t + g * g; }
  double omega(double t) const;
  double delta_sq() const { return g * g / alpha; }
  void require_valid() const;
};

double omega(const FrequencyProfile& profile, double t);

/// Map a time for the alpha = 1 problem to the same dynamical point of the
/// alpha != 1 problem: t = t_prime / sqrt(alpha).
double rescale_alpha(double t_prime, double alpha);

/// Even/odd fundamental solutions and their derivatives at one time.
/// Initial data x+(0) = 1, x'+(0) = 0, x-(0) = 0, x'-(0) = 1 pins the
/// Wronskian to 1 exactly at t = 0.
struct FundamentalPair {
  double t = 0.0;
  double x_plus = 1.0;
  double xdot_plus = 0.0;
  double x_minus = 0.0;
  double xdot_minus = 1.0;

  double wronskian() const { return x_plus * xdot_minus - xdot_plus * x_minus; }
  /// Values at -t, from the parity x+(-t) = x+(t), x-(-t) = -x-(t).
  FundamentalPair reflected() const;
};

/// Integrate the fundamental pair from 0 to t >= 0 with an adaptive
/// Dormand-Prince 5(4) scheme; tol controls the local error per step.
/// Throws IntegrationError (carrying the last good time) on step underflow.
FundamentalPair integrate_fundamental(const FrequencyProfile& profile, double t,
                                      double tol);

/// One integration pass through an ascending grid of times >= 0.
std::vector<FundamentalPair> integrate_fundamental_grid(
    const FrequencyProfile& profile, const std::vector<double>& ts, double tol);

/// Single-mode Bogoliubov matrix [[U, conj(V)], [V, conj(U)]],
/// |U|^2 - |V|^2 = 1.
struct Su11 {
  Complex U{1.0, 0.0};
  Complex V{0.0, 0.0};

  double symplectic_defect() const { return std::abs(std::norm(U) - std::norm(V) - 1.0); }
};

/// Group product: apply `first`, then `second`.
Su11 compose(const Su11& second, const Su11& first);

/// tau = r e^{i theta}; disk coordinate z = e^{i theta} tanh r.
struct SqueezeParam {
  double r = 0.0;      // >= 0
  double theta = 0.0;  // in [0, 2 pi)

  Complex z() const { return std::polar(std::tanh(r), theta); }
};

struct Su11Decomposition {
  SqueezeParam tau;  // squeeze factor phi_tau
  double beta;       // rotation factor phi_beta, in [0, 2 pi)
};

/// Unique splitting phi = phi_tau phi_beta of an SU(1,1) element into a
/// squeeze (U = cosh r, V = e^{-i theta} sinh r) and a phase rotation
/// diag(e^{i beta}, e^{-i beta}).
Su11Decomposition decompose(const Su11& phi);

/// Mode coefficients a_pm = (omega x_pm + i x'_pm) / sqrt(2 omega) of a
/// fundamental pair with respect to a reference frequency.
struct ModeCoefficients {
  Complex a_plus;
  Complex a_minus;
};

ModeCoefficients mode_coefficients(const FundamentalPair& pair, double omega_ref);

/// Exact propagator for [t1, t2] (t1 <= t2) mapping (a, conj a) at t1,
/// defined with reference frequency omega1, to (a, conj a) at t2 with
/// omega2.
Su11 propagator(const FrequencyProfile& profile, double t1, double t2,
                double omega1, double omega2, double tol);

/// Same, with the default reference frequencies omega_i = omega(t_i).
Su11 propagator(const FrequencyProfile& profile, double t1, double t2, double tol);

/// Squeezing of the evolved vacuum: e^{i theta} tanh r = -conj(V)/conj(U).
/// Requires |V| < |U|.
SqueezeParam squeeze_of_vacuum(const Su11& phi);

struct TrajectoryPoint {
  double t;
  Complex z;  // disk coordinate relative to the instantaneous ground state
  Complex w;  // e^{i alpha t^2} z
};

/// Evolve the instantaneous ground state of the first grid time through the
/// grid, reporting the squeezing disk coordinate relative to the
/// instantaneous ground state at each time. The instantaneous reference
/// frequency is floored at omega_floor (the g = 0 profile collapses at
/// t = 0) and |z| is clamped below 1 - 1e-12.
std::vector<TrajectoryPoint> instantaneous_trajectory(
    const FrequencyProfile& profile, const std::vector<double>& t_grid, double tol,
    double omega_floor = 1e-6);

}  // namespace sqz::flow
