#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace qcurve {

using Integer = mpz_class;

/// Reduced fraction with positive denominator; zero is 0/1.
class Rational {
 public:
  Rational() = default;
  template <std::integral I>
  Rational(I value) : v_(mpz_class(static_cast<long>(value))) {}
  Rational(const Integer& value) : v_(value) {}
  /// Throws DivisionByZero when `den` is zero.
  Rational(const Integer& num, const Integer& den);

  /// Accepts "p" or "p/q" (optional leading '-'); throws UsageError otherwise.
  static Rational parse(std::string_view text);

  Integer num() const { return v_.get_num(); }
  Integer den() const { return v_.get_den(); }
  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  Rational inverse() const;
  Rational abs() const;
  std::string str() const;

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

  const mpq_class& raw() const { return v_; }

 private:
  mpq_class v_;
};

Rational rat_normalize(const Integer& num, const Integer& den);
Rational pow(const Rational& base, int exponent);
inline Rational conj(const Rational& r) { return r; }

/// re + i*im over the rationals.
class GaussRational {
 public:
  GaussRational() = default;
  template <std::integral I>
  GaussRational(I value) : re_(value) {}
  GaussRational(Rational re) : re_(std::move(re)) {}
  GaussRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static GaussRational i() { return {Rational(0), Rational(1)}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_one() const { return re_.is_one() && im_.is_zero(); }
  Rational norm() const { return re_ * re_ + im_ * im_; }
  GaussRational conj() const { return {re_, -im_}; }
  GaussRational inverse() const;
  std::string str() const;

  GaussRational& operator+=(const GaussRational& o);
  GaussRational& operator-=(const GaussRational& o);
  GaussRational& operator*=(const GaussRational& o);
  GaussRational& operator/=(const GaussRational& o) { return *this *= o.inverse(); }
  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
  GaussRational operator-() const { return {-re_, -im_}; }
  friend bool operator==(const GaussRational&, const GaussRational&) = default;
  friend std::ostream& operator<<(std::ostream& os, const GaussRational& g) { return os << g.str(); }

 private:
  Rational re_;
  Rational im_;
};

inline GaussRational conj(const GaussRational& g) { return g.conj(); }

}  // namespace qcurve
