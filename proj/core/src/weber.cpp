#include "sqz/weber.hpp"

#include <cmath>
#include <numbers>

#include "double_double.hpp"

namespace sqz::weber {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kSeriesTermCap = 10000;

// Lanczos coefficients for g = 7, n = 9 (Godfrey's set). Regenerate with the
// usual Godfrey least-squares construction at >= 1000-bit precision if g or n
// ever changes.
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
    771.32342877765313,       -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};

bool is_nonpositive_integer(Complex z) {
  if (z.imag() != 0.0) return false;
  double re = z.real();
  return re <= 0.0 && re == std::floor(re);
}

Complex gamma_right_half(Complex z) {
  // Assumes Re z >= 0.5.
  z -= 1.0;
  Complex acc = kLanczos[0];
  for (int i = 1; i < 9; ++i) acc += kLanczos[i] / (z + static_cast<double>(i));
  Complex t = z + (kLanczosG + 0.5);
  return std::sqrt(2.0 * kPi) * std::exp((z + 0.5) * std::log(t) - t) * acc;
}

// 1/Gamma, entire: 0 at the poles.
Complex inv_gamma(Complex z) {
  if (is_nonpositive_integer(z)) return {0.0, 0.0};
  if (z.real() < 0.5) return std::sin(kPi * z) * gamma_right_half(1.0 - z) / kPi;
  return 1.0 / gamma_right_half(z);
}

}  // namespace

Complex gamma_complex(Complex z) {
  if (is_nonpositive_integer(z))
    throw DomainError("gamma_complex: pole at non-positive integer");
  if (z.real() < 0.5) {
    // Reflection: Gamma(z) = pi / (sin(pi z) Gamma(1 - z)).
    return kPi / (std::sin(kPi * z) * gamma_right_half(1.0 - z));
  }
  return gamma_right_half(z);
}

Complex hyp_m_series(Complex a, Complex b, Complex z) {
  if (is_nonpositive_integer(b))
    throw DomainError("hyp_m: b must not be a non-positive integer");
  using namespace sqz::detail;
  const CDD zc = cdd_from(z.real(), z.imag());
  CDD term = cdd_from(1.0, 0.0);
  CDD sum = term;
  int small_streak = 0;
  for (int n = 0; n < kSeriesTermCap; ++n) {
    CDD num = cdd_mul(cdd_from(a.real() + n, a.imag()), zc);
    CDD den = cdd_mul(cdd_from(b.real() + n, b.imag()), static_cast<double>(n + 1));
    term = cdd_div(cdd_mul(term, num), den);
    sum = cdd_add(sum, term);
    if (cdd_abs(term) <= 1e-34 * (cdd_abs(sum) + 1.0)) {
      if (++small_streak == 3) return {sum.re.hi, sum.im.hi};
    } else {
      small_streak = 0;
    }
  }
  throw EvaluationError("hyp_m: Taylor series did not converge within term cap");
}

Complex hyp_m_asymptotic(Complex a, Complex b, Complex z) {
  if (is_nonpositive_integer(b))
    throw DomainError("hyp_m: b must not be a non-positive integer");
  const Complex i(0.0, 1.0);
  const int max_terms = static_cast<int>(2.0 * std::abs(z)) + 8;

  // Sum_n (p)_n (q)_n / n! * w^n, truncated at the smallest term.
  auto poch_series = [&](Complex p, Complex q, Complex w) {
    Complex term(1.0, 0.0);
    Complex sum = term;
    double prev = 1.0;
    for (int n = 0; n < max_terms; ++n) {
      term *= (p + static_cast<double>(n)) * (q + static_cast<double>(n)) * w /
              static_cast<double>(n + 1);
      double mag = std::abs(term);
      if (mag > prev) break;  // divergent tail reached
      sum += term;
      prev = mag;
      if (mag <= 1e-18 * (std::abs(sum) + 1.0)) break;
    }
    return sum;
  };

  // 13.5.1-type expansion; the e^{+-i pi a} branch follows the sign of Im z.
  // The 1/Gamma fronts vanish (rather than blow up) at the poles.
  const double branch = z.imag() >= 0.0 ? 1.0 : -1.0;
  const Complex log_z = std::log(z);
  const Complex front1 = std::exp(branch * i * kPi * a - a * log_z) * inv_gamma(b - a);
  const Complex front2 = std::exp(z + (a - b) * log_z) * inv_gamma(a);
  const Complex s1 = poch_series(a, a - b + 1.0, -1.0 / z);
  const Complex s2 = poch_series(b - a, 1.0 - a, 1.0 / z);
  return gamma_complex(b) * (front1 * s1 + front2 * s2);
}

Complex hyp_m(Complex a, Complex b, Complex z) {
  if (std::abs(z) <= kZSwitch) return hyp_m_series(a, b, z);
  return hyp_m_asymptotic(a, b, z);
}

namespace {

// x_even(t) = Re[ e^{-i t^2/2} M(a, 1/2, i t^2) ],  a = (1 + i delta_sq)/4.
// Derivatives use M'(a,b,z) = (a/b) M(a+1, b+1, z).
SolutionValue eval_even(double t, double delta_sq) {
  const Complex i(0.0, 1.0);
  const Complex a = (1.0 + i * delta_sq) / 4.0;
  const Complex b(0.5, 0.0);
  const Complex z = i * (t * t);
  const Complex m = hyp_m(a, b, z);
  const Complex mp = (a / b) * hyp_m(a + 1.0, b + 1.0, z);
  const Complex phase = std::exp(-i * (t * t) / 2.0);
  const Complex x = phase * m;
  const Complex xdot = phase * i * t * (2.0 * mp - m);
  return {x.real(), xdot.real()};
}

SolutionValue eval_odd(double t, double delta_sq) {
  const Complex i(0.0, 1.0);
  const Complex a = (3.0 + i * delta_sq) / 4.0;
  const Complex b(1.5, 0.0);
  const Complex z = i * (t * t);
  const Complex m = hyp_m(a, b, z);
  const Complex mp = (a / b) * hyp_m(a + 1.0, b + 1.0, z);
  const Complex phase = std::exp(-i * (t * t) / 2.0);
  const Complex x = t * phase * m;
  const Complex xdot = phase * (m + i * (t * t) * (2.0 * mp - m));
  return {x.real(), xdot.real()};
}

}  // namespace

SolutionValue even_solution(double t, double delta_sq) {
  if (t < 0.0) throw DomainError("even_solution: t must be >= 0");
  if (t == 0.0) return {1.0, 0.0};
  return eval_even(t, delta_sq);
}

SolutionValue odd_solution(double t, double delta_sq) {
  if (t < 0.0) throw DomainError("odd_solution: t must be >= 0");
  if (t == 0.0) return {0.0, 1.0};
  return eval_odd(t, delta_sq);
}

double AsymptoticData::theta_plus(double t) const {
  return 0.5 * t * t + 0.5 * delta_sq * std::log(t) + c_plus;
}

double AsymptoticData::theta_minus(double t) const {
  return 0.5 * t * t + 0.5 * delta_sq * std::log(t) + c_minus;
}

double AsymptoticData::theta_prime(double t) const { return t + 0.5 * delta_sq / t; }

AsymptoticData asymptotic_data(double delta_sq) {
  if (delta_sq < 0.0) throw DomainError("asymptotic_data: delta_sq must be >= 0");
  const Complex i(0.0, 1.0);
  AsymptoticData data;
  data.delta_sq = delta_sq;
  data.gamma_plus = 1.0 / gamma_complex((1.0 + i * delta_sq) / 4.0);
  data.gamma_minus = 1.0 / gamma_complex((3.0 + i * delta_sq) / 4.0);
  data.c_plus = -kPi / 8.0;
  data.c_minus = -3.0 * kPi / 8.0;
  return data;
}

AsymptoticSqueeze asymptotic_squeeze(double delta_sq) {
  if (delta_sq < 0.0) throw DomainError("asymptotic_squeeze: delta_sq must be >= 0");
  const AsymptoticData data = asymptotic_data(delta_sq);
  // (1 + e^{pi d})^{-1/2} written to stay finite for large d.
  const double e = std::exp(-kPi * delta_sq);
  const double tanh_r = std::exp(-0.5 * kPi * delta_sq) / std::sqrt(1.0 + e);
  const double offset = -kPi / 2.0 - std::arg(data.gamma_plus * data.gamma_minus);
  return {tanh_r, offset};
}

}  // namespace sqz::weber
