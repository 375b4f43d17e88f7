#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qcurve/matrix.hpp"
#include "qcurve/ratfunc.hpp"
#include "qcurve/rational.hpp"

namespace qcurve {

struct CheckItem {
  std::string name;
  bool pass = false;
};

struct CheckReport {
  bool ok = true;
  std::vector<CheckItem> items;

  void add(std::string name, bool pass);
};

/// z_alpha = (a z_beta + b)/(c z_beta + d) with ad - bc = 1 and spin sign eps.
struct MobiusChart {
  Rational a = 1, b = 0, c = 0, d = 1;
  int eps = 1;

  static MobiusChart identity() { return {}; }
  /// Throws PreconditionError unless ad - bc = 1 and eps = +-1.
  void validate() const;
};

/// Chart alpha-gamma from alpha-beta and beta-gamma: matrix product, sign product.
MobiusChart compose(const MobiusChart& ab, const MobiusChart& bg);

/// All functions below live in the single variable "z" (the inner coordinate).
RatFuncQ mobius_map(const MobiusChart& chart);
/// xi = eps (c z + d).
RatFuncQ spin_xi(const MobiusChart& chart);
/// sigma = d xi / dz = eps c.
Rational spin_sigma(const MobiusChart& chart);

/// g^hbar = [[xi, hbar dxi/dz], [0, 1/xi]].
Matrix<RatFuncQ> transition_hbar(const MobiusChart& chart, const Rational& hbar);

/// Cocycle identities on a triple overlap, in the coordinate z_gamma.
/// `eps_ag` overrides the sign of the composed chart (default eps_ab * eps_bg).
CheckReport cocycle_check(const MobiusChart& ab, const MobiusChart& bg, const Rational& hbar,
                          std::optional<int> eps_ag = std::nullopt);

struct GaugeOptions {
  /// Added as hbar * kappa to d(g^{-1})/dz in the upper-right entry, as if
  /// d^2 xi / dz^2 were -kappa.
  Rational second_derivative_fault = 0;
};

/// g A_beta g^{-1} + g d(g^{-1}) = A_alpha with A = (1/hbar)[[0, q dz], [dz, 0]].
/// Throws UsageError when hbar = 0.
CheckReport gauge_law_check(const MobiusChart& chart, const PolyQ& q_beta, const Rational& hbar,
                            const GaugeOptions& options = {});

/// diag(xi, 1/xi) phi_beta diag(1/xi, xi) = phi_alpha.
CheckReport hitchin_transition_check(const MobiusChart& chart, const PolyQ& q_beta);

/// Matrix-valued one-form A_z dz + A_zbar dzbar.
template <class T>
struct MatForm {
  Matrix<T> dz;
  Matrix<T> dzbar;
};

/// Variables of the scaling-limit checks, in this order.
const std::vector<std::string>& gaiotto_vars();

struct GaiottoOptions {
  /// Replace lambda_natural by its square (wrong metric).
  bool square_metric = false;
};

/// Constant-curvature metric identities and the gauge equivalence of the
/// scaling limit with d + (1/hbar)(X_- + q X_+) dz. `q` is a polynomial in "z".
CheckReport gaiotto_limit_check(const PolyQ& q, const GaiottoOptions& options = {});

struct FlatOptions {
  /// lambda = scale * lambda_natural / R.
  Rational scale = 1;
  /// Evaluate at zeta = R = 1 before testing.
  bool specialize = false;
};

/// Curvature of D(zeta, R) for the Hitchin section of q with lambda_0.
/// Always checks that the curvature equals the harmonicity expression
/// times H; "flat" holds only when q = 0.
CheckReport flat_family_check(const PolyQ& q, const FlatOptions& options = {});

/// Element of Q[s_1..s_{r-1}]/(s_i^2 - i(r-i)); monomials are square-free bitmasks.
class SqrtRingElem {
 public:
  SqrtRingElem() = default;
  SqrtRingElem(int r, Rational c);
  static SqrtRingElem generator(int r, int i);

  int rank() const { return r_; }
  const std::map<std::uint32_t, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::string str() const;

  friend SqrtRingElem operator+(const SqrtRingElem& a, const SqrtRingElem& b);
  friend SqrtRingElem operator-(const SqrtRingElem& a, const SqrtRingElem& b);
  friend SqrtRingElem operator*(const SqrtRingElem& a, const SqrtRingElem& b);
  friend SqrtRingElem operator*(const Rational& s, const SqrtRingElem& a);
  friend bool operator==(const SqrtRingElem& a, const SqrtRingElem& b) { return a.terms_ == b.terms_; }

 private:
  void add(std::uint32_t mask, const Rational& c);

  int r_ = 2;
  std::map<std::uint32_t, Rational> terms_;
};

struct TdsTriple {
  int r = 2;
  Matrix<SqrtRingElem> x_plus;
  Matrix<SqrtRingElem> x_minus;
  Matrix<SqrtRingElem> h;
};

struct TdsResult {
  TdsTriple triple;
  CheckReport report;
};

/// Principal sl2 triple in sl_r. Throws UsageError for r < 2 or r > 32.
TdsResult kostant_tds(int r);

/// Products of elementary unimodular generators with small parameters.
MobiusChart random_chart(std::uint64_t seed);
/// Polynomial in "z" of exact degree `degree` with small integer coefficients.
PolyQ random_poly(std::uint64_t seed, int degree);
/// Seed for trial `index` derived from a root seed.
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index);

struct OperSuiteOptions {
  int trials = 20;
  std::uint64_t seed = 42;
  int max_q_degree = 4;
  int max_rank = 8;
};

struct OperSuiteReport {
  bool ok = true;
  /// Named check -> passed count and total.
  std::map<std::string, std::pair<int, int>> tallies;
  std::vector<std::string> failures;
};

/// The full randomized oper suite: charts, sign covariance, gauge law with
/// fault injection, Hitchin transitions, scaling-limit checks for q in {0, z, z^2},
/// and Kostant triples for 2 <= r <= max_rank.
OperSuiteReport run_oper_suite(const OperSuiteOptions& options);

}  // namespace qcurve
