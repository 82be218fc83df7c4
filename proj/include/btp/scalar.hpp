#pragma once
// Exact scalars: GMP rationals and Gaussian rationals a+bi over them.

#include <gmpxx.h>

#include <complex>
#include <stdexcept>
#include <string>

namespace btp {

using Q = mpq_class;

/// Raised when a textual scalar cannot be parsed (malformed text, zero denominator).
class ScalarParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Gaussian rational re + i*im with exact rational parts.
class GQ {
 public:
  Q re;
  Q im;

  GQ() = default;
  GQ(long v) : re(v), im(0) {}  // NOLINT(google-explicit-constructor)
  GQ(int v) : re(v), im(0) {}   // NOLINT(google-explicit-constructor)
  GQ(const Q& r) : re(r), im(0) {}  // NOLINT(google-explicit-constructor)
  GQ(Q r, Q i) : re(std::move(r)), im(std::move(i)) {}

  static GQ I() { return GQ(Q(0), Q(1)); }

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }

  GQ conj() const { return GQ(re, -im); }
  /// |z|^2, always a nonnegative rational.
  Q norm2() const { return Q(re * re + im * im); }

  GQ& operator+=(const GQ& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GQ& operator-=(const GQ& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GQ& operator*=(const GQ& o) {
    if (o.is_real()) {
      re *= o.re;
      im *= o.re;
      return *this;
    }
    Q r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  GQ& operator/=(const GQ& o) {
    if (o.is_zero()) throw std::domain_error("division by zero in GQ");
    if (o.is_real()) {
      re /= o.re;
      im /= o.re;
      return *this;
    }
    Q d = o.norm2();
    Q r = (re * o.re + im * o.im) / d;
    im = (im * o.re - re * o.im) / d;
    re = std::move(r);
    return *this;
  }
  /// this += a*b without building an intermediate GQ when b is real.
  void add_product(const GQ& a, const GQ& b) {
    if (a.is_real() && b.is_real()) {
      re += a.re * b.re;
      return;
    }
    re += a.re * b.re - a.im * b.im;
    im += a.re * b.im + a.im * b.re;
  }

  friend GQ operator+(GQ a, const GQ& b) { return a += b; }
  friend GQ operator-(GQ a, const GQ& b) { return a -= b; }
  friend GQ operator*(GQ a, const GQ& b) { return a *= b; }
  friend GQ operator/(GQ a, const GQ& b) { return a /= b; }
  friend GQ operator-(const GQ& a) { return GQ(Q(-a.re), Q(-a.im)); }
  friend bool operator==(const GQ& a, const GQ& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const GQ& a, const GQ& b) { return !(a == b); }

  std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }
};

/// Canonical text of a rational: "p" for integers, otherwise "p/q".
std::string to_string(const Q& q);
/// Canonical text of a Gaussian rational: "a", "bi", "a+bi" or "a-bi".
std::string to_string(const GQ& z);

/// Parses "p", "p/q", "-p/q". Rejects zero denominators and junk.
Q parse_rational(const std::string& text);
/// Parses rational or Gaussian rational text such as "3/2", "1/2-3i", "i", "-2/3i".
GQ parse_gaussian(const std::string& text);

/// Random rational with numerator in [lo*den, hi*den] and denominator in [1, max_den].
template <class Rng>
Q random_rational(Rng& rng, long lo, long hi, long max_den) {
  long den = 1 + static_cast<long>(rng() % static_cast<unsigned long>(max_den));
  long span = (hi - lo) * den + 1;
  long num = lo * den + static_cast<long>(rng() % static_cast<unsigned long>(span));
  Q q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace btp
