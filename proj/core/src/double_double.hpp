#pragma once

#include <cmath>

// Minimal double-double (~31 significant digits) arithmetic for summing the
// oscillatory Kummer series, where terms reach ~e^{|z|} while the sum stays
// O(1). Error-free transforms follow Dekker/Knuth; products use FMA.

namespace sqz::detail {

struct DD {
  double hi = 0.0;
  double lo = 0.0;
};

inline DD two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

inline DD quick_two_sum(double a, double b) {
  double s = a + b;
  return {s, b - (s - a)};
}

inline DD two_prod(double a, double b) {
  double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline DD dd_from(double a) { return {a, 0.0}; }

inline DD dd_neg(DD a) { return {-a.hi, -a.lo}; }

inline DD dd_add(DD a, DD b) {
  DD s = two_sum(a.hi, b.hi);
  return quick_two_sum(s.hi, s.lo + a.lo + b.lo);
}

inline DD dd_add(DD a, double b) {
  DD s = two_sum(a.hi, b);
  return quick_two_sum(s.hi, s.lo + a.lo);
}

inline DD dd_sub(DD a, DD b) { return dd_add(a, dd_neg(b)); }

inline DD dd_mul(DD a, DD b) {
  DD p = two_prod(a.hi, b.hi);
  return quick_two_sum(p.hi, p.lo + a.hi * b.lo + a.lo * b.hi);
}

inline DD dd_mul(DD a, double b) {
  DD p = two_prod(a.hi, b);
  return quick_two_sum(p.hi, p.lo + a.lo * b);
}

inline DD dd_div(DD a, DD b) {
  double q1 = a.hi / b.hi;
  DD r = dd_sub(a, dd_mul(b, q1));
  double q2 = r.hi / b.hi;
  r = dd_sub(r, dd_mul(b, q2));
  double q3 = r.hi / b.hi;
  return dd_add(quick_two_sum(q1, q2), q3);
}

struct CDD {
  DD re;
  DD im;
};

inline CDD cdd_from(double re, double im) { return {dd_from(re), dd_from(im)}; }

inline CDD cdd_add(CDD a, CDD b) { return {dd_add(a.re, b.re), dd_add(a.im, b.im)}; }

inline CDD cdd_mul(CDD a, CDD b) {
  DD re = dd_sub(dd_mul(a.re, b.re), dd_mul(a.im, b.im));
  DD im = dd_add(dd_mul(a.re, b.im), dd_mul(a.im, b.re));
  return {re, im};
}

inline CDD cdd_mul(CDD a, double b) { return {dd_mul(a.re, b), dd_mul(a.im, b)}; }

inline CDD cdd_div(CDD a, CDD b) {
  DD norm = dd_add(dd_mul(b.re, b.re), dd_mul(b.im, b.im));
  CDD num = cdd_mul(a, CDD{b.re, dd_neg(b.im)});
  return {dd_div(num.re, norm), dd_div(num.im, norm)};
}

/// Cheap magnitude estimate, accurate enough for convergence tests.
inline double cdd_abs(CDD a) { return std::hypot(a.re.hi, a.im.hi); }

}  // namespace sqz::detail
