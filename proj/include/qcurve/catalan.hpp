#pragma once

#include <compare>
#include <map>
#include <vector>

#include "qcurve/memo.hpp"
#include "qcurve/rational.hpp"
#include "qcurve/series.hpp"

namespace qcurve {

/// (g, n, mu): genus, number of labeled vertices, vertex degrees.
struct CatalanKey {
  int g = 0;
  std::vector<int> mu;

  int n() const { return static_cast<int>(mu.size()); }
  int degree_sum() const;
  /// Same key with mu sorted descending.
  CatalanKey canonical() const;

  friend auto operator<=>(const CatalanKey&, const CatalanKey&) = default;
};

using CatalanTable = MemoTable<CatalanKey, Integer>;

/// Process-wide table used when no table is passed explicitly.
CatalanTable& default_catalan_table();

struct CatalanOptions {
  /// Sort mu before recursing and memoizing. Disabled only to test symmetry.
  bool canonicalize = true;
};

/// Generalized Catalan number C_{g,n}(mu) by edge contraction at vertex 1.
/// Throws UsageError when n = 0.
Integer catalan_number(const CatalanKey& key, CatalanTable& table,
                       CatalanOptions options = {});
Integer catalan_number(const CatalanKey& key);

/// Classical Catalan numbers C_0..C_m by the quadratic convolution.
std::vector<Integer> classical_catalan(int m);

struct OracleLimits {
  int max_degree_sum = 12;
};

/// Number of arrowed cell graphs by exhaustive matching of half-edges.
/// Throws ResourceLimitError above the configured degree-sum bound.
Integer catalan_oracle(const CatalanKey& key, OracleLimits limits = {});

/// Counts of connected gluings of the given vertex degrees, indexed by genus.
std::map<int, Integer> catalan_oracle_by_genus(const std::vector<int>& mu,
                                               OracleLimits limits = {});

/// z(x) = sum_m C_m x^{-(2m+1)}, stored in w = 1/x, truncated at w^order.
TruncSeries<Rational> unstable_z_series(int order);

}  // namespace qcurve
