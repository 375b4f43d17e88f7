#include "qcurve/rational.hpp"

#include <cctype>

#include "qcurve/errors.hpp"

namespace qcurve {

Rational::Rational(const Integer& num, const Integer& den) {
  if (den == 0) throw DivisionByZero("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  auto slash = text.find('/');
  auto num_text = text.substr(0, slash);
  if (!is_integer_literal(num_text)) throw UsageError("malformed rational: " + std::string(text));
  Integer num(std::string(num_text), 10);
  if (slash == std::string_view::npos) return Rational(num);
  auto den_text = text.substr(slash + 1);
  if (!is_integer_literal(den_text) || den_text[0] == '-')
    throw UsageError("malformed rational: " + std::string(text));
  Integer den(std::string(den_text), 10);
  return Rational(num, den);
}

Rational Rational::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero");
  Rational r;
  r.v_ = 1 / v_;
  return r;
}

Rational Rational::abs() const {
  Rational r;
  r.v_ = ::abs(v_);
  return r;
}

std::string Rational::str() const {
  if (is_integer()) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DivisionByZero("division by zero");
  v_ /= o.v_;
  return *this;
}

Rational Rational::operator-() const {
  Rational r;
  r.v_ = -v_;
  return r;
}

Rational rat_normalize(const Integer& num, const Integer& den) { return Rational(num, den); }

Rational pow(const Rational& base, int exponent) {
  if (exponent < 0) return pow(base.inverse(), -exponent);
  Rational result(1);
  Rational b = base;
  for (unsigned e = static_cast<unsigned>(exponent); e != 0; e >>= 1) {
    if (e & 1u) result *= b;
    if (e > 1) b *= b;
  }
  return result;
}

GaussRational GaussRational::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero");
  Rational n = norm();
  return {re_ / n, -im_ / n};
}

std::string GaussRational::str() const {
  if (im_.is_zero()) return re_.str();
  std::string imag = im_.is_one() ? "i" : (im_ == Rational(-1) ? "-i" : im_.str() + "*i");
  if (re_.is_zero()) return imag;
  if (imag[0] == '-') return re_.str() + imag;
  return re_.str() + "+" + imag;
}

GaussRational& GaussRational::operator+=(const GaussRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussRational& GaussRational::operator-=(const GaussRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussRational& GaussRational::operator*=(const GaussRational& o) {
  Rational r = re_ * o.re_ - im_ * o.im_;
  Rational i = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

}  // namespace qcurve
