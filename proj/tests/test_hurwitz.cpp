#include <doctest.h>

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>

#include "qcurve/errors.hpp"
#include "qcurve/hurwitz.hpp"

using namespace qcurve;

namespace {

using Perm = std::vector<int>;

Perm compose(const Perm& a, const Perm& b) {  // (a b)(x) = a(b(x))
  Perm r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[static_cast<std::size_t>(b[i])];
  return r;
}

std::vector<int> cycle_type(const Perm& p) {
  std::vector<int> t;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) seen[j] = true, ++len;
    t.push_back(len);
  }
  std::sort(t.rbegin(), t.rend());
  return t;
}

bool transitive(const std::vector<Perm>& gens, int d) {
  std::vector<int> parent(static_cast<std::size_t>(d));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (const auto& g : gens)
    for (int i = 0; i < d; ++i) parent[find(i)] = find(g[static_cast<std::size_t>(i)]);
  for (int i = 0; i < d; ++i)
    if (find(i) != find(0)) return false;
  return true;
}

Integer factorial(int k) {
  Integer f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// Direct enumeration over S_d: every sigma_0 of type (r^{d/r}) and every
// b-tuple of transpositions, tallied by the cycle type of the product inverse.
Rational brute_force(int r, int g, std::vector<int> mu) {
  const int d = std::accumulate(mu.begin(), mu.end(), 0);
  const int n = static_cast<int>(mu.size());
  if (d % r != 0) return 0;
  const int b = 2 * g - 2 + n + d / r;
  if (b < 0) return 0;
  std::sort(mu.rbegin(), mu.rend());
  std::vector<Perm> trans;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      Perm t(static_cast<std::size_t>(d));
      std::iota(t.begin(), t.end(), 0);
      std::swap(t[static_cast<std::size_t>(i)], t[static_cast<std::size_t>(j)]);
      trans.push_back(t);
    }
  if (trans.empty() && b > 0) return 0;
  Perm p(static_cast<std::size_t>(d));
  std::iota(p.begin(), p.end(), 0);
  Integer count = 0;
  do {
    if (cycle_type(p) != std::vector<int>(static_cast<std::size_t>(d / r), r)) continue;
    std::vector<std::size_t> idx(static_cast<std::size_t>(b), 0);
    while (true) {
      Perm prod = p;
      std::vector<Perm> gens{p};
      for (auto k : idx) prod = compose(prod, trans[k]), gens.push_back(trans[k]);
      if (cycle_type(prod) == mu && transitive(gens, d)) ++count;
      std::size_t pos = 0;
      while (pos < idx.size() && ++idx[pos] == trans.size()) idx[pos++] = 0;
      if (pos == idx.size()) break;
    }
  } while (std::next_permutation(p.begin(), p.end()));
  Integer weight = 1;
  std::map<int, int> mult;
  for (int m : mu) ++mult[m];
  for (auto [part, k] : mult) weight *= factorial(k);
  return Rational(count * weight, factorial(d) * factorial(b));
}

Rational H(int r, int g, std::vector<int> mu) { return hurwitz_number(HurwitzKey{r, g, std::move(mu)}); }

}  // namespace

TEST_CASE("small values") {
  CHECK(H(3, 0, {3}) == Rational(Integer(1), Integer(3)));
  CHECK(H(1, 0, {2}) == Rational(Integer(1), Integer(2)));
  CHECK(H(2, 0, {3}) == 0);
  CHECK(hurwitz_oracle({1, 0, {2}}) == Rational(Integer(1), Integer(2)));
  CHECK(hurwitz_oracle({3, 0, {3}}) == Rational(Integer(1), Integer(3)));
  CHECK(hurwitz_oracle({2, 0, {3}}) == 0);
  CHECK_THROWS_AS(H(0, 0, {2}), UsageError);
  CHECK_THROWS_AS(H(1, 0, {}), UsageError);
  CHECK_THROWS_AS(hurwitz_oracle({1, 3, {9}}), ResourceLimitError);
}

TEST_CASE("oracle agrees with direct enumeration") {
  for (int r = 1; r <= 2; ++r)
    for (auto mu : std::vector<std::vector<int>>{{1}, {2}, {1, 1}, {3}, {2, 1}, {1, 1, 1}, {4}, {2, 2}, {3, 1}})
      for (int g = 0; g <= 1; ++g) {
        const HurwitzKey key{r, g, mu};
        const auto b = key.b();
        if (b && *b > 3) continue;
        CAPTURE(r);
        CAPTURE(g);
        CHECK(hurwitz_oracle(key) == brute_force(r, g, mu));
      }
}

TEST_CASE("cut-and-join agrees with the monodromy oracle for d <= 6") {
  int checked = 0;
  for (int r = 1; r <= 3; ++r)
    for (int d = 1; d <= 6; ++d) {
      const auto counts = hurwitz_oracle_counts(r, d, 10, {6, 10});
      (void)counts;
      // enumerate partitions of d
      std::vector<std::vector<int>> parts;
      std::function<void(int, int, std::vector<int>&)> rec = [&](int left, int cap, std::vector<int>& cur) {
        if (left == 0) return parts.push_back(cur);
        for (int v = std::min(left, cap); v >= 1; --v) {
          cur.push_back(v);
          rec(left - v, v, cur);
          cur.pop_back();
        }
      };
      std::vector<int> cur;
      rec(d, d, cur);
      for (const auto& mu : parts)
        for (int g = 0; g <= 3; ++g) {
          const HurwitzKey key{r, g, mu};
          const auto b = key.b();
          if (!b || *b > 10) continue;
          CHECK(hurwitz_number(key) == hurwitz_oracle(key, {6, 10}));
          ++checked;
        }
    }
  CHECK(checked > 150);
}

TEST_CASE("integrality of the weighted count") {
  for (int r = 1; r <= 2; ++r)
    for (auto mu : std::vector<std::vector<int>>{{4}, {3, 1}, {2, 2}, {2, 1, 1}, {5, 1}, {3, 2, 1}})
      for (int g = 0; g <= 1; ++g) {
        const HurwitzKey key{r, g, mu};
        const auto b = key.b();
        if (!b) continue;
        const int d = key.d();
        std::map<int, int> mult;
        for (int m : mu) ++mult[m];
        Integer weight = 1;
        for (auto [part, k] : mult) weight *= factorial(k);
        const Rational scaled = H(r, g, mu) * Rational(factorial(d) * factorial(*b)) / Rational(weight);
        CHECK(scaled.is_integer());
        CHECK(scaled.sign() >= 0);
      }
}

TEST_CASE("symmetry and vanishing") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<int> mu{1, 2, 3};
    std::shuffle(mu.begin(), mu.end(), rng);
    CHECK(H(1, 0, mu) == H(1, 0, {3, 2, 1}));
    CHECK(H(2, 1, mu) == H(2, 1, {3, 2, 1}));
  }
  CHECK(H(2, 0, {2, 1}) == 0);
  CHECK(hurwitz_oracle({2, 0, {2, 1}}) == 0);
  CHECK(H(3, 0, {3, 3}) == hurwitz_oracle({3, 0, {3, 3}}));
  // b = 2g - 2 + n + d/r < 0 is impossible with n >= 1, d >= r; b = 0 is the base
  CHECK(*HurwitzKey{2, 0, {2}}.b() == 0);
  CHECK(H(2, 0, {2}) == hurwitz_oracle({2, 0, {2}}));
}

TEST_CASE("lambert inversion") {
  CHECK(lambert_check(1, 6).ok);
  CHECK(lambert_check(2, 1).ok);
  const LambertReport r2 = lambert_check(2, 4);
  CHECK_FALSE(r2.candidates.empty());
  CHECK(r2.ok);
  CHECK(lambert_check(3, 4).ok);
  CHECK_THROWS(lambert_check(4, 4));
}
