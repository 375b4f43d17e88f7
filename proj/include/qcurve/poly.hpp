#pragma once

// Sparse multivariate polynomials over a field K (Rational or GaussRational)
// with exact division and a recursive primitive-PRS gcd.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qcurve/errors.hpp"
#include "qcurve/rational.hpp"

namespace qcurve {

using Exponents = std::vector<int>;

template <class K>
class Poly {
 public:
  using Terms = std::map<Exponents, K>;

  Poly() = default;
  explicit Poly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

  static Poly constant(std::vector<std::string> vars, const K& c) {
    Poly p(std::move(vars));
    p.add_term(Exponents(p.vars_.size(), 0), c);
    return p;
  }
  static Poly variable(std::vector<std::string> vars, const std::string& name) {
    Poly p(std::move(vars));
    Exponents e(p.vars_.size(), 0);
    e[p.index_of(name)] = 1;
    p.add_term(e, K(1));
    return p;
  }
  static Poly monomial(std::vector<std::string> vars, Exponents e, const K& c) {
    Poly p(std::move(vars));
    if (e.size() != p.vars_.size()) throw UsageError("monomial arity mismatch");
    p.add_term(e, c);
    return p;
  }

  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  std::size_t index_of(const std::string& name) const {
    auto it = std::find(vars_.begin(), vars_.end(), name);
    if (it == vars_.end()) throw UsageError("unknown variable '" + name + "'");
    return static_cast<std::size_t>(it - vars_.begin());
  }

  bool is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && std::all_of(terms_.begin()->first.begin(),
                                              terms_.begin()->first.end(),
                                              [](int x) { return x == 0; }));
  }
  K constant_term() const {
    auto it = terms_.find(Exponents(vars_.size(), 0));
    return it == terms_.end() ? K(0) : it->second;
  }

  int degree(std::size_t var) const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
    return d;
  }
  int total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) {
      int s = 0;
      for (int x : e) s += x;
      d = std::max(d, s);
    }
    return d;
  }
  bool depends_on(std::size_t var) const { return degree(var) > 0; }

  // Lexicographically largest monomial.
  const Exponents& leading_exponents() const { return terms_.rbegin()->first; }
  const K& leading_coefficient() const { return terms_.rbegin()->second; }

  void add_term(const Exponents& e, const K& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  Poly& operator+=(const Poly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  Poly operator-() const {
    Poly r(vars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    a.check_compatible(b);
    Poly r(a.vars_);
    Exponents e(a.vars_.size());
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    return r;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  friend Poly operator*(Poly a, const K& s) {
    if (s.is_zero()) return Poly(a.vars_);
    for (auto& [e, c] : a.terms_) c *= s;
    return a;
  }
  friend Poly operator*(const K& s, Poly a) { return std::move(a) * s; }
  friend Poly operator/(Poly a, const K& s) { return std::move(a) * (K(1) / s); }

  Poly pow(unsigned k) const {
    Poly r = constant(vars_, K(1));
    Poly b = *this;
    for (; k != 0; k >>= 1) {
      if (k & 1u) r = r * b;
      if (k > 1) b = b * b;
    }
    return r;
  }

  Poly derivative(std::size_t var) const {
    Poly r(vars_);
    for (const auto& [e, c] : terms_) {
      if (e[var] == 0) continue;
      Exponents f = e;
      --f[var];
      r.add_term(f, c * K(e[var]));
    }
    return r;
  }

  // Coefficients with respect to `var`; each coefficient is free of `var`.
  std::map<int, Poly> coefficients_in(std::size_t var) const {
    std::map<int, Poly> out;
    for (const auto& [e, c] : terms_) {
      Exponents f = e;
      f[var] = 0;
      auto it = out.try_emplace(e[var], Poly(vars_)).first;
      it->second.add_term(f, c);
    }
    return out;
  }

  Poly substitute(std::size_t var, const K& value) const {
    Poly r(vars_);
    for (const auto& [e, c] : terms_) {
      Exponents f = e;
      f[var] = 0;
      K v(1);
      for (int k = 0; k < e[var]; ++k) v *= value;
      r.add_term(f, c * v);
    }
    return r;
  }

  Poly substitute(std::size_t var, const Poly& value) const {
    check_compatible(value);
    Poly r(vars_);
    auto coeffs = coefficients_in(var);
    // Horner in `var`.
    int top = coeffs.empty() ? 0 : coeffs.rbegin()->first;
    for (int k = top; k >= 0; --k) {
      r = r * value;
      auto it = coeffs.find(k);
      if (it != coeffs.end()) r += it->second;
    }
    return r;
  }

  K evaluate(std::span<const K> point) const {
    if (point.size() != vars_.size()) throw UsageError("evaluation arity mismatch");
    K sum(0);
    for (const auto& [e, c] : terms_) {
      K v = c;
      for (std::size_t i = 0; i < e.size(); ++i)
        for (int k = 0; k < e[i]; ++k) v *= point[i];
      sum += v;
    }
    return sum;
  }

  Poly monic() const {
    if (is_zero()) return *this;
    return *this / leading_coefficient();
  }

  template <class F>
  auto map_coefficients(F&& f) const {
    using L = decltype(f(std::declval<const K&>()));
    Poly<L> r(vars_);
    for (const auto& [e, c] : terms_) r.add_term(e, f(c));
    return r;
  }

  /// Quotient when `divisor` divides this polynomial exactly, nullopt otherwise.
  std::optional<Poly> divide_exact(const Poly& divisor) const {
    check_compatible(divisor);
    if (divisor.is_zero()) throw DivisionByZero("polynomial division by zero");
    Poly q(vars_);
    Poly r = *this;
    const Exponents& ld = divisor.leading_exponents();
    const K inv = K(1) / divisor.leading_coefficient();
    Exponents t(vars_.size());
    while (!r.is_zero()) {
      const Exponents& lr = r.leading_exponents();
      for (std::size_t i = 0; i < t.size(); ++i) {
        t[i] = lr[i] - ld[i];
        if (t[i] < 0) return std::nullopt;
      }
      Poly term = monomial(vars_, t, r.leading_coefficient() * inv);
      q += term;
      r -= term * divisor;
    }
    return q;
  }

  std::string str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (!first) os << " + ";
      first = false;
      os << "(" << it->second << ")";
      for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (it->first[i] == 0) continue;
        os << "*" << vars_[i];
        if (it->first[i] != 1) os << "^" << it->first[i];
      }
    }
    return os.str();
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }

  void check_compatible(const Poly& o) const {
    if (vars_ != o.vars_) throw UsageError("polynomials over different variable sets");
  }

 private:
  std::vector<std::string> vars_;
  Terms terms_;
};

namespace detail {

template <class K>
Poly<K> pseudo_remainder(Poly<K> a, const Poly<K>& b, std::size_t var) {
  const int db = b.degree(var);
  const Poly<K> lb = b.coefficients_in(var).rbegin()->second;
  while (!a.is_zero() && a.degree(var) >= db) {
    const int da = a.degree(var);
    Poly<K> la = a.coefficients_in(var).rbegin()->second;
    Exponents shift(a.nvars(), 0);
    shift[var] = da - db;
    a = lb * a - la * Poly<K>::monomial(a.vars(), shift, K(1)) * b;
  }
  return a;
}

}  // namespace detail

template <class K>
Poly<K> gcd(const Poly<K>& a, const Poly<K>& b);

/// gcd of the coefficients of `p` viewed as a polynomial in `var`.
template <class K>
Poly<K> content_in(const Poly<K>& p, std::size_t var) {
  Poly<K> c(p.vars());
  for (auto& [k, coeff] : p.coefficients_in(var)) {
    c = gcd(c, coeff);
    if (c.is_constant() && !c.is_zero()) break;
  }
  return c;
}

/// Monic gcd; gcd(0, 0) = 0.
template <class K>
Poly<K> gcd(const Poly<K>& a, const Poly<K>& b) {
  a.check_compatible(b);
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Poly<K>::constant(a.vars(), K(1));

  std::size_t var = 0;
  for (std::size_t i = 0; i < a.nvars(); ++i)
    if (a.depends_on(i) || b.depends_on(i)) {
      var = i;
      break;
    }
  if (!a.depends_on(var)) return gcd(a, content_in(b, var));
  if (!b.depends_on(var)) return gcd(content_in(a, var), b);

  const Poly<K> ca = content_in(a, var);
  const Poly<K> cb = content_in(b, var);
  const Poly<K> c = gcd(ca, cb);
  Poly<K> p = *a.divide_exact(ca);
  Poly<K> q = *b.divide_exact(cb);
  if (p.degree(var) < q.degree(var)) std::swap(p, q);
  while (!q.is_zero()) {
    Poly<K> r = detail::pseudo_remainder(p, q, var);
    p = std::move(q);
    if (r.is_zero()) {
      q = Poly<K>(p.vars());
    } else {
      q = r.depends_on(var) ? r.divide_exact(content_in(r, var))->monic()
                            : Poly<K>(p.vars());
      if (!r.depends_on(var)) {
        // Nonzero remainder free of var: the primitive parts are coprime in var.
        p = Poly<K>::constant(p.vars(), K(1));
      }
    }
  }
  if (!p.depends_on(var)) p = Poly<K>::constant(p.vars(), K(1));
  return (c * p).monic();
}

}  // namespace qcurve
