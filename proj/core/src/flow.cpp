#include "sqz/flow.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace sqz::flow {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// State vector (x+, x'+, x-, x'-).
using State = std::array<double, 4>;

State rhs(const FrequencyProfile& profile, double t, const State& y) {
  const double w2 = profile.omega_sq(t);
  return {y[1], -w2 * y[0], y[3], -w2 * y[2]};
}

// Dormand-Prince 5(4) tableau.
constexpr double kC[7] = {0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5.0},
    {3.0 / 40.0, 9.0 / 40.0},
    {44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0},
    {19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0},
    {9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0,
     -5103.0 / 18656.0},
    {35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0,
     11.0 / 84.0}};
// 5th-order weights are row 6 of kA (FSAL); these are the 4th-order ones.
constexpr double kB4[7] = {5179.0 / 57600.0, 0.0,           7571.0 / 16695.0,
                           393.0 / 640.0,    -92097.0 / 339200.0,
                           187.0 / 2100.0,   1.0 / 40.0};

class DormandPrince {
 public:
  // The controller runs two orders tighter than the requested tol so that
  // the accumulated drift of conserved quantities (Wronskian, |U|^2 - |V|^2)
  // stays within a small multiple of tol even over ~1e5-step horizons.
  DormandPrince(const FrequencyProfile& profile, double tol)
      : profile_(profile), tol_(tol / 100.0) {
    if (!(tol > 0.0)) throw DomainError("integrate_fundamental: tol must be > 0");
  }

  void advance(double& t, State& y, double t_end) {
    if (t_end <= t) return;
    State k0 = rhs(profile_, t, y);
    double h_next = initial_step(t, t_end);
    double err_prev = 1.0;
    while (t < t_end) {
      const bool last = h_next >= t_end - t;
      const double h = last ? t_end - t : h_next;
      if (!last && h < 16.0 * std::numeric_limits<double>::epsilon() *
                           std::max(1.0, std::abs(t)))
        throw IntegrationError("integrate_fundamental: step size underflow", t);

      std::array<State, 7> k;
      k[0] = k0;
      State y_stage;
      for (int s = 1; s < 7; ++s) {
        for (int j = 0; j < 4; ++j) {
          double acc = 0.0;
          for (int q = 0; q < s; ++q) acc += kA[s][q] * k[q][j];
          y_stage[j] = y[j] + h * acc;
        }
        k[s] = rhs(profile_, t + kC[s] * h, y_stage);
      }
      // Stage 6 input is the 5th-order solution (FSAL).
      State y5 = y_stage;

      double err = 0.0;
      for (int j = 0; j < 4; ++j) {
        double e4 = 0.0;
        for (int s = 0; s < 7; ++s) e4 += kB4[s] * k[s][j];
        double diff = y5[j] - (y[j] + h * e4);
        double scale = tol_ * (1.0 + std::max(std::abs(y[j]), std::abs(y5[j])));
        err += (diff / scale) * (diff / scale);
      }
      err = std::sqrt(err / 4.0);

      if (err <= 1.0) {
        t = last ? t_end : t + h;
        y = y5;
        k0 = k[6];
        err_prev = std::max(err, 1e-4);
      }
      // PI step controller.
      double factor = 0.9 * std::pow(std::max(err, 1e-10), -0.7 / 5.0) *
                      std::pow(err_prev, 0.4 / 5.0);
      h_next = h * std::clamp(factor, 0.2, 5.0);
    }
  }

 private:
  double initial_step(double t, double t_end) const {
    double scale = 1.0 + std::sqrt(profile_.omega_sq(t_end));
    double h = 0.01 * std::pow(tol_, 0.2) / scale;
    return std::min(h, t_end - t);
  }

  const FrequencyProfile& profile_;
  double tol_;
};

}  // namespace

double wrap_two_pi(double angle) {
  double a = std::fmod(angle, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a = 0.0;
  return a;
}

double circular_distance(double a, double b) {
  double d = wrap_two_pi(a - b);
  return std::min(d, kTwoPi - d);
}

double FrequencyProfile::omega(double t) const { return std::sqrt(omega_sq(t)); }

void FrequencyProfile::require_valid() const {
  if (!(alpha > 0.0)) throw DomainError("FrequencyProfile: alpha must be > 0");
  if (!(g >= 0.0)) throw DomainError("FrequencyProfile: g must be >= 0");
}

double omega(const FrequencyProfile& profile, double t) { return profile.omega(t); }

double rescale_alpha(double t_prime, double alpha) {
  if (!(alpha > 0.0)) throw DomainError("rescale_alpha: alpha must be > 0");
  return t_prime / std::sqrt(alpha);
}

FundamentalPair FundamentalPair::reflected() const {
  return {-t, x_plus, -xdot_plus, -x_minus, xdot_minus};
}

FundamentalPair integrate_fundamental(const FrequencyProfile& profile, double t,
                                      double tol) {
  if (t < 0.0) throw DomainError("integrate_fundamental: t must be >= 0");
  profile.require_valid();
  State y = {1.0, 0.0, 0.0, 1.0};
  double tc = 0.0;
  DormandPrince stepper(profile, tol);
  stepper.advance(tc, y, t);
  return {t, y[0], y[1], y[2], y[3]};
}

std::vector<FundamentalPair> integrate_fundamental_grid(
    const FrequencyProfile& profile, const std::vector<double>& ts, double tol) {
  profile.require_valid();
  std::vector<FundamentalPair> out;
  out.reserve(ts.size());
  State y = {1.0, 0.0, 0.0, 1.0};
  double tc = 0.0;
  DormandPrince stepper(profile, tol);
  for (double t : ts) {
    if (t < tc) throw DomainError("integrate_fundamental_grid: times must ascend from 0");
    stepper.advance(tc, y, t);
    tc = t;
    out.push_back({t, y[0], y[1], y[2], y[3]});
  }
  return out;
}

Su11 compose(const Su11& second, const Su11& first) {
  return {second.U * first.U + std::conj(second.V) * first.V,
          second.V * first.U + std::conj(second.U) * first.V};
}

Su11Decomposition decompose(const Su11& phi) {
  const double cosh_r = std::abs(phi.U);
  const double sinh_r = std::abs(phi.V);
  if (!(sinh_r < cosh_r))
    throw DomainError("decompose: invalid Bogoliubov matrix (|V| >= |U|)");
  const double beta = std::arg(phi.U);
  SqueezeParam tau;
  tau.r = std::asinh(sinh_r);
  tau.theta = sinh_r == 0.0 ? 0.0 : wrap_two_pi(beta - std::arg(phi.V));
  return {tau, wrap_two_pi(beta)};
}

ModeCoefficients mode_coefficients(const FundamentalPair& pair, double omega_ref) {
  if (!(omega_ref > 0.0)) throw DomainError("mode_coefficients: omega must be > 0");
  const double norm = 1.0 / std::sqrt(2.0 * omega_ref);
  return {Complex(omega_ref * pair.x_plus, pair.xdot_plus) * norm,
          Complex(omega_ref * pair.x_minus, pair.xdot_minus) * norm};
}

namespace {

FundamentalPair at_signed_time(const FundamentalPair& abs_pair, double t) {
  return t < 0.0 ? abs_pair.reflected() : abs_pair;
}

Su11 propagator_from_pairs(const FundamentalPair& pair1, const FundamentalPair& pair2,
                           double omega1, double omega2) {
  const auto [a1p, a1m] = mode_coefficients(pair1, omega1);
  const auto [a2p, a2m] = mode_coefficients(pair2, omega2);
  const Complex i(0.0, 1.0);
  const Complex u = i * a2p * std::conj(a1m) - i * a2m * std::conj(a1p);
  const Complex v_bar = -i * a2p * a1m + i * a2m * a1p;
  return {u, std::conj(v_bar)};
}

}  // namespace

Su11 propagator(const FrequencyProfile& profile, double t1, double t2, double omega1,
                double omega2, double tol) {
  if (t1 > t2) throw DomainError("propagator: requires t1 <= t2");
  if (!(omega1 > 0.0) || !(omega2 > 0.0))
    throw DomainError("propagator: reference frequencies must be > 0");
  const double lo = std::min(std::abs(t1), std::abs(t2));
  const double hi = std::max(std::abs(t1), std::abs(t2));
  auto pairs = integrate_fundamental_grid(profile, {lo, hi}, tol);
  const FundamentalPair& at1 = std::abs(t1) == lo ? pairs[0] : pairs[1];
  const FundamentalPair& at2 = std::abs(t2) == lo ? pairs[0] : pairs[1];
  return propagator_from_pairs(at_signed_time(at1, t1), at_signed_time(at2, t2),
                               omega1, omega2);
}

Su11 propagator(const FrequencyProfile& profile, double t1, double t2, double tol) {
  return propagator(profile, t1, t2, profile.omega(t1), profile.omega(t2), tol);
}

SqueezeParam squeeze_of_vacuum(const Su11& phi) {
  if (!(std::abs(phi.V) < std::abs(phi.U)))
    throw DomainError("squeeze_of_vacuum: invalid Bogoliubov matrix (|V| >= |U|)");
  const Complex ratio = -std::conj(phi.V) / std::conj(phi.U);
  return {std::atanh(std::abs(ratio)), wrap_two_pi(std::arg(ratio))};
}

std::vector<TrajectoryPoint> instantaneous_trajectory(const FrequencyProfile& profile,
                                                      const std::vector<double>& t_grid,
                                                      double tol, double omega_floor) {
  if (t_grid.empty()) return {};
  if (!std::is_sorted(t_grid.begin(), t_grid.end()))
    throw DomainError("instantaneous_trajectory: grid must ascend");
  profile.require_valid();

  // One integration pass over the distinct |t| values.
  std::vector<double> abs_times;
  abs_times.reserve(t_grid.size() + 1);
  for (double t : t_grid) abs_times.push_back(std::abs(t));
  std::sort(abs_times.begin(), abs_times.end());
  abs_times.erase(std::unique(abs_times.begin(), abs_times.end()), abs_times.end());
  const auto pairs = integrate_fundamental_grid(profile, abs_times, tol);
  auto pair_at = [&](double t) {
    auto it = std::lower_bound(abs_times.begin(), abs_times.end(), std::abs(t));
    return at_signed_time(pairs[static_cast<size_t>(it - abs_times.begin())], t);
  };

  const double t_start = t_grid.front();
  const double omega_start = std::max(profile.omega(t_start), omega_floor);
  const FundamentalPair start_pair = pair_at(t_start);

  std::vector<TrajectoryPoint> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    const double omega_t = std::max(profile.omega(t), omega_floor);
    const Su11 phi = propagator_from_pairs(start_pair, pair_at(t), omega_start, omega_t);
    Complex z = -std::conj(phi.V) / std::conj(phi.U);
    const double mag = std::abs(z);
    if (mag >= 1.0 - 1e-12) z *= (1.0 - 1e-12) / mag;
    const Complex w = std::polar(1.0, profile.alpha * t * t) * z;
    out.push_back({t, z, w});
  }
  return out;
}

}  // namespace sqz::flow
