#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qcurve/memo.hpp"
#include "qcurve/rational.hpp"

namespace qcurve {

/// Orbifold Hurwitz key: profile (r,...,r) over 0, labeled profile mu over infinity.
struct HurwitzKey {
  int r = 1;
  int g = 0;
  std::vector<int> mu;

  int n() const { return static_cast<int>(mu.size()); }
  int d() const;
  /// Number of simple branch points 2g-2+n+d/r; nullopt when r does not divide d.
  std::optional<int> b() const;
  HurwitzKey canonical() const;

  friend auto operator<=>(const HurwitzKey&, const HurwitzKey&) = default;
};

using HurwitzTable = MemoTable<HurwitzKey, Rational>;
HurwitzTable& default_hurwitz_table();

struct HurwitzLimits {
  int max_degree = 7;
  int max_branch = 6;
};

/// H^r_{g,n}(mu) from the cut-and-join recursion on b. Keys with b = 0 are
/// taken from the monodromy oracle. Throws UsageError for r < 1 or n = 0.
Rational hurwitz_number(const HurwitzKey& key, HurwitzTable& table);
Rational hurwitz_number(const HurwitzKey& key);

/// The same number from monodromy: (tuple, part-to-cycle bijection) pairs
/// (sigma_0, tau_1..tau_b) with sigma_0 of type r^{d/r}, transitive, and
/// (sigma_0 tau_1 ... tau_b)^{-1} of type mu, divided by d! b!.
Rational hurwitz_oracle(const HurwitzKey& key, HurwitzLimits limits = {});

/// Raw pair counts for every b <= max_b and every cycle type mu (sorted
/// descending) in degree d. Entries with zero count are omitted.
std::map<std::pair<int, std::vector<int>>, Integer> hurwitz_oracle_counts(int r, int d, int max_b,
                                                                          HurwitzLimits limits = {});

struct LambertCandidate {
  std::string name;
  bool pass = false;
  /// Lowest order at which w - y e^{-ry} is nonzero, or -1.
  int first_failure = -1;
};

struct LambertReport {
  /// Result for the primary normalization y = sum_m calH^r_{0,1}(rm) w^m.
  bool ok = false;
  std::vector<LambertCandidate> candidates;
};

/// Tests series normalizations of the (0,1) numbers against w = y e^{-ry}.
LambertReport lambert_check(int r, int order);

}  // namespace qcurve
