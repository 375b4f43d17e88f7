#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qcurve/poly.hpp"

namespace qcurve {

/// Quotient of polynomials kept in canonical form: numerator and denominator
/// coprime, denominator with lexicographically-leading coefficient 1. Two
/// canonical forms are equal exactly when the functions are equal.
template <class K>
class RatFunc {
 public:
  RatFunc() = default;
  explicit RatFunc(std::vector<std::string> vars)
      : num_(vars), den_(Poly<K>::constant(vars, K(1))) {}
  RatFunc(Poly<K> num)  // NOLINT: polynomials are rational functions
      : num_(std::move(num)), den_(Poly<K>::constant(num_.vars(), K(1))) {}
  RatFunc(Poly<K> num, Poly<K> den) : num_(std::move(num)), den_(std::move(den)) {
    num_.check_compatible(den_);
    if (den_.is_zero()) throw DivisionByZero("rational function with zero denominator");
    canonicalize();
  }

  static RatFunc constant(std::vector<std::string> vars, const K& c) {
    return RatFunc(Poly<K>::constant(std::move(vars), c));
  }
  static RatFunc variable(std::vector<std::string> vars, const std::string& name) {
    return RatFunc(Poly<K>::variable(std::move(vars), name));
  }

  const Poly<K>& num() const { return num_; }
  const Poly<K>& den() const { return den_; }
  const std::vector<std::string>& vars() const { return num_.vars(); }
  std::size_t index_of(const std::string& name) const { return num_.index_of(name); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  K constant_value() const { return num_.constant_term() / den_.constant_term(); }
  bool depends_on(std::size_t var) const { return num_.depends_on(var) || den_.depends_on(var); }
  bool depends_on(const std::string& name) const { return depends_on(index_of(name)); }

  RatFunc& operator+=(const RatFunc& o) { return *this = combine(*this, o, false); }
  RatFunc& operator-=(const RatFunc& o) { return *this = combine(*this, o, true); }
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) { return combine(a, b, false); }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return combine(a, b, true); }
  RatFunc operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
  }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return RatFunc(a.vars());
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
  }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  friend RatFunc operator*(const RatFunc& a, const K& s) { return RatFunc(a.num_ * s, a.den_); }
  friend RatFunc operator*(const K& s, const RatFunc& a) { return a * s; }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

  RatFunc inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of the zero rational function");
    return RatFunc(den_, num_);
  }

  RatFunc pow(int k) const {
    if (k < 0) return inverse().pow(-k);
    RatFunc r(num_.pow(static_cast<unsigned>(k)), den_.pow(static_cast<unsigned>(k)));
    return r;
  }

  RatFunc derivative(std::size_t var) const {
    Poly<K> n = num_.derivative(var) * den_ - num_ * den_.derivative(var);
    return RatFunc(std::move(n), den_ * den_);
  }
  RatFunc derivative(const std::string& name) const { return derivative(index_of(name)); }

  /// Replace `name` by the rational function `value` (same variable set).
  RatFunc substitute(const std::string& name, const RatFunc& value) const {
    std::size_t var = index_of(name);
    int dn = num_.degree(var), dd = den_.degree(var);
    int top = std::max(std::max(dn, dd), 0);
    Poly<K> n = homogenize(num_, var, value, top);
    Poly<K> d = homogenize(den_, var, value, top);
    return RatFunc(std::move(n), std::move(d));
  }
  RatFunc substitute(const std::string& name, const K& value) const {
    std::size_t var = index_of(name);
    return RatFunc(num_.substitute(var, value), den_.substitute(var, value));
  }

  std::string str() const {
    if (den_.is_constant()) return num_.str();
    return "(" + num_.str() + ") / (" + den_.str() + ")";
  }

  template <class F>
  auto map_coefficients(F&& f) const {
    using L = decltype(f(std::declval<const K&>()));
    return RatFunc<L>(num_.map_coefficients(f), den_.map_coefficients(f));
  }

  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  static RatFunc combine(const RatFunc& a, const RatFunc& b, bool subtract) {
    a.num_.check_compatible(b.num_);
    if (b.is_zero()) return a;
    if (a.is_zero()) return subtract ? -b : b;
    if (a.den_ == b.den_) {
      return RatFunc(subtract ? a.num_ - b.num_ : a.num_ + b.num_, a.den_);
    }
    Poly<K> g = gcd(a.den_, b.den_);
    Poly<K> bd = *b.den_.divide_exact(g);
    Poly<K> ad = *a.den_.divide_exact(g);
    Poly<K> n = subtract ? a.num_ * bd - b.num_ * ad : a.num_ * bd + b.num_ * ad;
    return RatFunc(std::move(n), a.den_ * bd);
  }

  // p(n/d) * d^top for p of degree <= top in var.
  static Poly<K> homogenize(const Poly<K>& p, std::size_t var, const RatFunc& value, int top) {
    Poly<K> out(p.vars());
    auto coeffs = p.coefficients_in(var);
    std::vector<Poly<K>> npow{Poly<K>::constant(p.vars(), K(1))};
    std::vector<Poly<K>> dpow{Poly<K>::constant(p.vars(), K(1))};
    for (int k = 1; k <= top; ++k) {
      npow.push_back(npow.back() * value.num_);
      dpow.push_back(dpow.back() * value.den_);
    }
    for (const auto& [k, c] : coeffs) out += c * npow[k] * dpow[top - k];
    return out;
  }

  void canonicalize() {
    if (num_.is_zero()) {
      den_ = Poly<K>::constant(num_.vars(), K(1));
      return;
    }
    if (!den_.is_constant()) {
      Poly<K> g = gcd(num_, den_);
      if (!g.is_constant()) {
        num_ = *num_.divide_exact(g);
        den_ = *den_.divide_exact(g);
      }
    }
    K lc = den_.leading_coefficient();
    if (!lc.is_one()) {
      K inv = K(1) / lc;
      num_ = num_ * inv;
      den_ = den_ * inv;
    }
  }

  Poly<K> num_;
  Poly<K> den_;
};

/// Cross-multiplied identity test. Throws UsageError on mismatched variables.
template <class K>
bool ratfunc_equal(const RatFunc<K>& a, const RatFunc<K>& b) {
  if (a.vars() != b.vars()) throw UsageError("ratfunc_equal: mismatched variable sets");
  return a.num() * b.den() == b.num() * a.den();
}

using RatFuncQ = RatFunc<Rational>;
using RatFuncG = RatFunc<GaussRational>;
using PolyQ = Poly<Rational>;
using PolyG = Poly<GaussRational>;

}  // namespace qcurve
