#pragma once

#include <cmath>
#include <iomanip>
#include <sstream>
#include <string>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace fusion {

/// Working-precision real. Expression templates are off so `auto` and ADL
/// calls behave like plain arithmetic.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

inline constexpr unsigned default_digits = 99;

/// Sets the decimal precision of newly created Reals for the lifetime of the
/// guard. The setting is process-wide, so spectral computations are run from
/// one thread at a time.
class PrecisionGuard {
 public:
  explicit PrecisionGuard(unsigned digits) : saved_(Real::default_precision()) {
    Real::default_precision(digits);
  }
  ~PrecisionGuard() { Real::default_precision(saved_); }
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  unsigned saved_;
};

/// 10^-k at the current precision.
inline Real power_of_ten(int k) { return boost::multiprecision::pow(Real(10), Real(k)); }

template <class R>
struct Complex {
  R re{0}, im{0};

  Complex() = default;
  Complex(const R& x) : re(x), im(0) {}  // NOLINT: implicit real embedding
  Complex(const R& x, const R& y) : re(x), im(y) {}
  template <class I>
    requires std::is_integral_v<I>
  Complex(I x) : re(x), im(0) {}  // NOLINT

  Complex& operator+=(const Complex& o) {
    re += o.re, im += o.im;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re -= o.re, im -= o.im;
    return *this;
  }
  Complex& operator*=(const Complex& o) { return *this = *this * o; }
  Complex& operator/=(const Complex& o) { return *this = *this / o; }

  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Complex operator/(const Complex& a, const Complex& b) {
    const R n = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
  }
  friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
};

template <class R>
Complex<R> conj(const Complex<R>& z) {
  return {z.re, -z.im};
}
template <class R>
R norm(const Complex<R>& z) {
  return z.re * z.re + z.im * z.im;
}
template <class R>
R abs(const Complex<R>& z) {
  using std::sqrt;
  return sqrt(norm(z));
}
/// Magnitude for pivot selection in dense elimination.
template <class R>
R pivot_size(const Complex<R>& z) {
  return abs(z);
}

/// exp(2 pi i t).
template <class R>
Complex<R> unit_phase(const R& t) {
  using std::cos;
  using std::sin;
  const R x = 2 * boost::math::constants::pi<R>() * t;
  return {cos(x), sin(x)};
}

inline std::string decimal(const Real& x, int digits) {
  std::ostringstream o;
  o << std::setprecision(digits) << x;
  return o.str();
}

inline std::string decimal(double x, int digits) {
  std::ostringstream o;
  o << std::setprecision(digits) << x;
  return o.str();
}

}  // namespace fusion
