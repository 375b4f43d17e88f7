#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "qcurve/poly.hpp"
#include "qcurve/ratfunc.hpp"
#include "qcurve/rational.hpp"

namespace qcurve {

/// Multivariate Laurent polynomial with rational coefficients. Exponents
/// may be negative; zero coefficients are never stored.
class LaurentPoly {
 public:
  using Terms = std::map<Exponents, Rational>;

  LaurentPoly() = default;
  explicit LaurentPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Rational coefficient(const Exponents& e) const;
  void add_term(const Exponents& e, const Rational& c);

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(LaurentPoly a, const Rational& s);

  Rational evaluate(std::span<const Rational> point) const;
  Rational sum_of_coefficients() const;

  /// Every variable replaced by its reciprocal.
  LaurentPoly inverted() const;
  /// Variables reordered: result variable i is input variable perm[i].
  LaurentPoly permuted(std::span<const std::size_t> perm) const;
  /// All variables set equal to a single variable `name`.
  LaurentPoly diagonal(const std::string& name) const;
  LaurentPoly derivative(std::size_t var) const;
  /// Terms of total degree exactly `degree`.
  LaurentPoly homogeneous_part(int degree) const;

  int max_total_degree() const;
  int min_total_degree() const;
  /// max over terms and variables of |exponent|.
  int max_abs_exponent() const;

  /// Univariate only: t^{-m} p(t) as a rational function in the same variable.
  RatFuncQ to_ratfunc() const;

  std::string str() const;

  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

 private:
  void check_compatible(const LaurentPoly& o) const;

  std::vector<std::string> vars_;
  Terms terms_;
};

}  // namespace qcurve
