#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qcurve/catalan.hpp"
#include "qcurve/laurent.hpp"
#include "qcurve/memo.hpp"
#include "qcurve/rational.hpp"

namespace qcurve {

/// F_{g,n} as a Laurent polynomial in t1..tn.
struct FreeEnergy {
  int g = 0;
  int n = 0;
  LaurentPoly laurent;
};

struct FreeEnergyOptions {
  /// Largest fitting box (2D+5)^n accepted before giving up.
  long max_box_entries = 400000;
  /// Extra series orders re-expanded after the fit.
  int check_margin = 4;
};

/// 3(2g-2+n), the bound on total and per-variable degree.
int free_energy_degree(int g, int n);

/// x = 2(t^2+1)/(t^2-1) expanded at x = infinity: the series t(w), w = 1/x,
/// on the branch t -> -1.
TruncSeries<Rational> t_series(int order);

/// Column k of the fitting matrix: t(w)^k expanded to w^order.
TruncSeries<Rational> t_power_series(int k, int order);

/// Exact F_{g,n} by coefficient fitting against the Catalan series.
/// Throws UsageError in the unstable range, ResourceLimitError above the
/// size budget and IntegrityError when the over-determined check fails.
FreeEnergy free_energy(int g, int n, CatalanTable& table, FreeEnergyOptions options = {});
FreeEnergy free_energy(int g, int n);
/// Drops the results memoized by free_energy(g, n).
void clear_free_energy_cache();

/// F_{g,n}(t,...,t) fitted directly from the diagonal series, a Laurent
/// polynomial in the single variable "t". Much cheaper than free_energy for large n.
LaurentPoly free_energy_diagonal(int g, int n, CatalanTable& table, FreeEnergyOptions options = {});

/// Univariate Laurent polynomial in "t" with exponents in [-degree, degree]
/// whose w-expansion reproduces `series` (w^0 upward). All entries beyond
/// the first 2*degree+1 are used as an over-determination check.
LaurentPoly fit_laurent_in_t(const std::vector<Rational>& series, int degree);

/// Coefficients of sum_{mu} C_{g,n}(mu)/(mu_1...mu_n) w^{|mu|} for |mu| = 0..order,
/// summed over ordered mu with all parts >= 1.
std::vector<Rational> diagonal_series(int g, int n, int order, CatalanTable& table);

/// Orbifold Euler characteristic of M_{g,n} (Harer-Zagier).
Rational euler_characteristic(int g, int n);

/// Bernoulli number B_k, with B_1 = -1/2.
Rational bernoulli(int k);

/// Psi-class intersection numbers indexed by d-vectors of a fixed (g,n).
class IntersectionTable {
 public:
  IntersectionTable(int g, int n) : g_(g), n_(n) {}

  int g() const { return g_; }
  int n() const { return n_; }
  /// Value for a d-vector; throws UsageError unless sum d = 3g-3+n.
  Rational value(const std::vector<int>& d) const;
  void set(const std::vector<int>& d, const Rational& v);
  const std::map<std::vector<int>, Rational>& entries() const { return entries_; }

 private:
  void check_dimension(const std::vector<int>& d) const;

  int g_;
  int n_;
  std::map<std::vector<int>, Rational> entries_;
};

/// Reads <tau_d> off the top homogeneous part of F_{g,n}. Throws
/// IntegrityError when a top monomial is not of the form prod t_i^{2d_i+1}.
IntersectionTable intersection_from_top(const FreeEnergy& f);
IntersectionTable intersection_from_top(int g, int n);

/// <tau_{d_1}...tau_{d_n}> from the DVV recursion; genus is implied by the
/// dimension constraint and the value is 0 when it is not a non-negative integer.
Rational dvv_intersection(const std::vector<int>& d);

struct DvvEntry {
  int g = 0;
  std::vector<int> d;
  Rational extracted;
  Rational expected;
  bool ok() const { return extracted == expected; }
};

struct DvvReport {
  bool ok = true;
  std::vector<DvvEntry> entries;
};

/// Compares one table with the recursion.
DvvReport dvv_compare(const IntersectionTable& table);

/// Every stable (g,n) with g <= max_g, 1 <= n <= max_n, compared with the recursion.
DvvReport dvv_check(int max_g, int max_n);

}  // namespace qcurve
