#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "qcurve/errors.hpp"
#include "qcurve/rational.hpp"

namespace qcurve {

/// Where a series is expanded. Expansions at infinity are stored in the
/// variable w = 1/x, so stored exponents are always non-negative.
enum class Expansion { AtZero, AtInfinity };

/// Dense truncated power series sum_{k=0}^{order} c_k s^k.
template <class K>
class TruncSeries {
 public:
  TruncSeries(std::string var, int order, Expansion where = Expansion::AtZero)
      : var_(std::move(var)), where_(where), coeffs_(static_cast<std::size_t>(order + 1), K(0)) {
    if (order < 0) throw UsageError("negative truncation order");
  }

  static TruncSeries variable(std::string var, int order, Expansion where = Expansion::AtZero) {
    TruncSeries s(std::move(var), order, where);
    s.set(1, K(1));
    return s;
  }
  static TruncSeries constant(std::string var, int order, const K& c,
                              Expansion where = Expansion::AtZero) {
    TruncSeries s(std::move(var), order, where);
    s.set(0, c);
    return s;
  }

  const std::string& var() const { return var_; }
  Expansion expansion() const { return where_; }
  int order() const { return static_cast<int>(coeffs_.size()) - 1; }

  K operator[](int k) const {
    return (k < 0 || k > order()) ? K(0) : coeffs_[static_cast<std::size_t>(k)];
  }
  void set(int k, K value) {
    if (k < 0) throw UsageError("negative series exponent");
    if (k <= order()) coeffs_[static_cast<std::size_t>(k)] = std::move(value);
  }

  /// Smallest exponent with a nonzero coefficient; order()+1 for the zero series.
  int valuation() const {
    for (int k = 0; k <= order(); ++k)
      if (!coeffs_[static_cast<std::size_t>(k)].is_zero()) return k;
    return order() + 1;
  }
  bool is_zero() const { return valuation() > order(); }

  TruncSeries truncated(int order) const {
    TruncSeries r(var_, std::min(order, this->order()), where_);
    for (int k = 0; k <= r.order(); ++k) r.coeffs_[k] = coeffs_[k];
    return r;
  }

  friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
    a.check_compatible(b);
    TruncSeries r(a.var_, std::min(a.order(), b.order()), a.where_);
    for (int k = 0; k <= r.order(); ++k) r.coeffs_[k] = a[k] + b[k];
    return r;
  }
  friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) {
    a.check_compatible(b);
    TruncSeries r(a.var_, std::min(a.order(), b.order()), a.where_);
    for (int k = 0; k <= r.order(); ++k) r.coeffs_[k] = a[k] - b[k];
    return r;
  }
  TruncSeries operator-() const {
    TruncSeries r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }
  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    a.check_compatible(b);
    TruncSeries r(a.var_, std::min(a.order(), b.order()), a.where_);
    for (int i = 0; i <= r.order(); ++i) {
      if (a.coeffs_[i].is_zero()) continue;
      for (int j = 0; i + j <= r.order(); ++j) r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return r;
  }
  friend TruncSeries operator*(TruncSeries a, const K& s) {
    for (auto& c : a.coeffs_) c *= s;
    return a;
  }
  friend TruncSeries operator*(const K& s, TruncSeries a) { return std::move(a) * s; }

  /// Multiplicative inverse; the constant term must be nonzero.
  TruncSeries inverse() const {
    if (coeffs_[0].is_zero()) throw DivisionByZero("series inverse needs a unit constant term");
    TruncSeries r(var_, order(), where_);
    const K inv0 = K(1) / coeffs_[0];
    r.coeffs_[0] = inv0;
    for (int k = 1; k <= order(); ++k) {
      K acc(0);
      for (int j = 1; j <= k; ++j) acc += coeffs_[j] * r.coeffs_[k - j];
      r.coeffs_[k] = -acc * inv0;
    }
    return r;
  }

  TruncSeries pow(int k) const {
    if (k < 0) return inverse().pow(-k);
    TruncSeries r = constant(var_, order(), K(1), where_);
    TruncSeries b = *this;
    for (unsigned e = static_cast<unsigned>(k); e != 0; e >>= 1) {
      if (e & 1u) r = r * b;
      if (e > 1) b = b * b;
    }
    return r;
  }

  /// d/ds; the result is known one order less.
  TruncSeries derivative() const {
    TruncSeries r(var_, std::max(order() - 1, 0), where_);
    for (int k = 1; k <= order(); ++k) r.coeffs_[k - 1] = coeffs_[k] * K(k);
    return r;
  }

  /// Division by s^k; requires valuation >= k.
  TruncSeries divide_by_variable(int k) const {
    if (valuation() < k) throw CompositionDomainError("series not divisible by the variable power");
    TruncSeries r(var_, std::max(order() - k, 0), where_);
    for (int j = k; j <= order(); ++j) r.coeffs_[j - k] = coeffs_[j];
    return r;
  }

  /// exp of a series with zero constant term.
  TruncSeries exp() const {
    if (!coeffs_[0].is_zero()) throw CompositionDomainError("exp needs zero constant term");
    // E' = f' E, solved coefficient by coefficient.
    TruncSeries r(var_, order(), where_);
    r.coeffs_[0] = K(1);
    for (int k = 1; k <= order(); ++k) {
      K acc(0);
      for (int j = 1; j <= k; ++j) acc += K(j) * coeffs_[j] * r.coeffs_[k - j];
      r.coeffs_[k] = acc / K(k);
    }
    return r;
  }

  friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
    return a.var_ == b.var_ && a.where_ == b.where_ && a.coeffs_ == b.coeffs_;
  }

  void check_compatible(const TruncSeries& o) const {
    if (var_ != o.var_ || where_ != o.where_)
      throw UsageError("series in different variables or expansion points");
  }

 private:
  std::string var_;
  Expansion where_;
  std::vector<K> coeffs_;
};

/// outer(inner). The outer series must be expanded at zero and the inner one
/// must vanish there (positive valuation in its stored variable).
template <class K>
TruncSeries<K> series_compose(const TruncSeries<K>& outer, const TruncSeries<K>& inner) {
  if (outer.expansion() != Expansion::AtZero)
    throw CompositionDomainError("outer series is expanded at infinity");
  if (inner.valuation() < 1)
    throw CompositionDomainError("inner series must have positive valuation");
  const int order = std::min(outer.order(), inner.order());
  TruncSeries<K> in = inner.truncated(order);
  TruncSeries<K> result(inner.var(), order, inner.expansion());
  for (int k = outer.order(); k >= 0; --k) {
    result = result * in;
    result.set(0, result[0] + outer[k]);
  }
  return result;
}

}  // namespace qcurve
