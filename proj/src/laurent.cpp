#include "qcurve/laurent.hpp"

#include <algorithm>
#include <climits>
#include <cstdlib>
#include <sstream>

#include "qcurve/errors.hpp"

namespace qcurve {

void LaurentPoly::check_compatible(const LaurentPoly& o) const {
  if (vars_ != o.vars_) throw UsageError("Laurent polynomials over different variables");
}

Rational LaurentPoly::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void LaurentPoly::add_term(const Exponents& e, const Rational& c) {
  if (e.size() != vars_.size()) throw UsageError("Laurent monomial arity mismatch");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  check_compatible(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  check_compatible(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  a.check_compatible(b);
  LaurentPoly r(a.vars_);
  Exponents e(a.vars_.size());
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

LaurentPoly operator*(LaurentPoly a, const Rational& s) {
  if (s.is_zero()) return LaurentPoly(a.vars_);
  for (auto& [e, c] : a.terms_) c *= s;
  return a;
}

Rational LaurentPoly::evaluate(std::span<const Rational> point) const {
  if (point.size() != vars_.size()) throw UsageError("evaluation arity mismatch");
  Rational sum;
  for (const auto& [e, c] : terms_) {
    Rational v = c;
    for (std::size_t i = 0; i < e.size(); ++i) v *= pow(point[i], e[i]);
    sum += v;
  }
  return sum;
}

Rational LaurentPoly::sum_of_coefficients() const {
  Rational sum;
  for (const auto& [e, c] : terms_) sum += c;
  return sum;
}

LaurentPoly LaurentPoly::inverted() const {
  LaurentPoly r(vars_);
  for (const auto& [e, c] : terms_) {
    Exponents f = e;
    for (int& x : f) x = -x;
    r.add_term(f, c);
  }
  return r;
}

LaurentPoly LaurentPoly::permuted(std::span<const std::size_t> perm) const {
  if (perm.size() != vars_.size()) throw UsageError("permutation arity mismatch");
  LaurentPoly r(vars_);
  for (const auto& [e, c] : terms_) {
    Exponents f(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) f[i] = e[perm[i]];
    r.add_term(f, c);
  }
  return r;
}

LaurentPoly LaurentPoly::diagonal(const std::string& name) const {
  LaurentPoly r(std::vector<std::string>{name});
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int x : e) s += x;
    r.add_term({s}, c);
  }
  return r;
}

LaurentPoly LaurentPoly::derivative(std::size_t var) const {
  LaurentPoly r(vars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents f = e;
    --f[var];
    r.add_term(f, c * Rational(e[var]));
  }
  return r;
}

LaurentPoly LaurentPoly::homogeneous_part(int degree) const {
  LaurentPoly r(vars_);
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int x : e) s += x;
    if (s == degree) r.add_term(e, c);
  }
  return r;
}

int LaurentPoly::max_total_degree() const {
  int d = INT_MIN;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int x : e) s += x;
    d = std::max(d, s);
  }
  return d;
}

int LaurentPoly::min_total_degree() const {
  int d = INT_MAX;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int x : e) s += x;
    d = std::min(d, s);
  }
  return d;
}

int LaurentPoly::max_abs_exponent() const {
  int d = 0;
  for (const auto& [e, c] : terms_)
    for (int x : e) d = std::max(d, std::abs(x));
  return d;
}

RatFuncQ LaurentPoly::to_ratfunc() const {
  if (vars_.size() != 1) throw UsageError("to_ratfunc needs a univariate Laurent polynomial");
  int shift = 0;
  for (const auto& [e, c] : terms_) shift = std::max(shift, -e[0]);
  PolyQ num(vars_);
  for (const auto& [e, c] : terms_) num.add_term({e[0] + shift}, c);
  PolyQ den = PolyQ::monomial(vars_, {shift}, Rational(1));
  return RatFuncQ(std::move(num), std::move(den));
}

std::string LaurentPoly::str() const {
  if (terms_.empty()) return "0";
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

}  // namespace qcurve
