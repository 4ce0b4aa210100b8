#include "sqz/squeezed.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <numbers>

namespace sqz::squeezed {

OccupationSpectrum occupation_probs(const SqueezeParam& tau, int n_max) {
  if (n_max < 0) throw DomainError("occupation_probs: n_max must be >= 0");
  OccupationSpectrum spec;
  spec.probs.assign(static_cast<size_t>(n_max) + 1, 0.0);
  const double t2 = std::tanh(tau.r) * std::tanh(tau.r);
  double qk_sq = 1.0;  // q_0^2
  double weight = 1.0 / std::cosh(tau.r);
  double sum = 0.0;
  for (int k = 0; 2 * k <= n_max; ++k) {
    if (k > 0) {
      qk_sq *= (2.0 * k - 1.0) / (2.0 * k);
      weight *= t2;
    }
    spec.probs[static_cast<size_t>(2 * k)] = weight * qk_sq;
    sum += weight * qk_sq;
  }
  spec.tail_bound = std::max(0.0, 1.0 - sum);
  return spec;
}

double fidelity(const SqueezeParam& tau) { return 1.0 / std::cosh(tau.r); }

Complex wavefunction(const SqueezeParam& tau, double omega, double x) {
  if (!(omega > 0.0)) throw DomainError("wavefunction: omega must be > 0");
  const Complex z = tau.z();
  const Complex one_minus = 1.0 - z;
  if (std::abs(one_minus) < 1e-300)
    throw DomainError("wavefunction: non-normalizable state (lambda = mu)");
  const Complex width = omega * (1.0 + z) / one_minus;
  if (!(width.real() > 0.0))
    throw DomainError("wavefunction: non-normalizable state (Re width <= 0)");
  const double amp = std::pow(width.real() / std::numbers::pi, 0.25);
  return amp * std::exp(-0.5 * width * (x * x));
}

SqueezeParam rotate(const SqueezeParam& tau, double beta) {
  return {tau.r, flow::wrap_two_pi(tau.theta + 2.0 * beta)};
}

FockVector fock_oracle(const SqueezeParam& tau, int dim) {
  if (dim < 16) throw DomainError("fock_oracle: dim must be >= 16");
  if (tau.r > 1.5) throw DomainError("fock_oracle: r must be <= 1.5");

  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  const Eigen::MatrixXcd a2 = a * a;
  const Complex tau_c = std::polar(tau.r, tau.theta);
  const Eigen::MatrixXcd gen =
      0.5 * (std::conj(tau_c) * a2 - tau_c * a2.adjoint());
  const Eigen::MatrixXcd u = gen.exp();

  FockVector out;
  out.amplitudes = u.col(0);
  const double tail = std::norm(out.amplitudes(dim - 1)) +
                      std::norm(out.amplitudes(dim - 2));
  if (tail > 1e-8)
    throw DomainError("fock_oracle: dimension too small (truncation loss > 1e-8)");
  return out;
}

}  // namespace sqz::squeezed
