#include "qcurve/catalan.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "qcurve/errors.hpp"

namespace qcurve {

int CatalanKey::degree_sum() const { return std::accumulate(mu.begin(), mu.end(), 0); }

CatalanKey CatalanKey::canonical() const {
  CatalanKey k = *this;
  std::sort(k.mu.begin(), k.mu.end(), std::greater<>());
  return k;
}

CatalanTable& default_catalan_table() {
  static CatalanTable table;
  return table;
}

namespace {

class CatalanRecursion {
 public:
  CatalanRecursion(CatalanTable& table, CatalanOptions options)
      : table_(table), options_(options) {}

  Integer operator()(CatalanKey key) {
    const int n = key.n();
    if (n < 1 || key.g < 0) return 0;
    for (int m : key.mu)
      if (m < 0) return 0;
    const int sum = key.degree_sum();
    if (sum % 2 != 0) return 0;
    const int edges = sum / 2;
    if (edges == 0) return (key.g == 0 && n == 1) ? 1 : 0;
    if (n > 1 && std::find(key.mu.begin(), key.mu.end(), 0) != key.mu.end()) return 0;
    // Euler characteristic leaves at least one face.
    if (2 - 2 * key.g - n + edges < 1) return 0;

    if (options_.canonicalize) key = key.canonical();
    if (auto hit = table_.lookup(key)) return *hit;
    Integer value = expand(key);
    table_.insert(key, value);
    return value;
  }

 private:
  Integer expand(const CatalanKey& key) {
    const int n = key.n();
    const int g = key.g;
    const int mu1 = key.mu[0];
    const std::vector<int> rest(key.mu.begin() + 1, key.mu.end());
    Integer total = 0;

    // The arrowed edge joins vertex 1 to vertex j.
    for (int j = 1; j < n; ++j) {
      CatalanKey merged{g, {mu1 + key.mu[j] - 2}};
      for (int i = 1; i < n; ++i)
        if (i != j) merged.mu.push_back(key.mu[i]);
      total += key.mu[j] * (*this)(merged);
    }

    // The arrowed edge is a loop at vertex 1, splitting it into degrees alpha, beta.
    const int others = n - 1;
    for (int alpha = 0; alpha <= mu1 - 2; ++alpha) {
      const int beta = mu1 - 2 - alpha;
      if (g >= 1) {
        CatalanKey lower{g - 1, {alpha, beta}};
        lower.mu.insert(lower.mu.end(), rest.begin(), rest.end());
        total += (*this)(lower);
      }
      for (unsigned mask = 0; mask < (1u << others); ++mask) {
        CatalanKey left{0, {alpha}};
        CatalanKey right{0, {beta}};
        for (int i = 0; i < others; ++i)
          ((mask >> i) & 1u ? left : right).mu.push_back(rest[i]);
        if (left.degree_sum() % 2 != 0) continue;
        for (int g1 = 0; g1 <= g; ++g1) {
          left.g = g1;
          right.g = g - g1;
          Integer a = (*this)(left);
          if (a == 0) continue;
          total += a * (*this)(right);
        }
      }
    }
    return total;
  }

  CatalanTable& table_;
  CatalanOptions options_;
};

}  // namespace

Integer catalan_number(const CatalanKey& key, CatalanTable& table, CatalanOptions options) {
  if (key.mu.empty()) throw UsageError("catalan_number: n must be at least 1");
  return CatalanRecursion(table, options)(key);
}

Integer catalan_number(const CatalanKey& key) {
  return catalan_number(key, default_catalan_table());
}

std::vector<Integer> classical_catalan(int m) {
  std::vector<Integer> c(static_cast<std::size_t>(std::max(m, 0) + 1), 0);
  c[0] = 1;
  for (int k = 1; k <= m; ++k)
    for (int a = 0; a <= k - 1; ++a) c[k] += c[a] * c[k - 1 - a];
  return c;
}

std::map<int, Integer> catalan_oracle_by_genus(const std::vector<int>& mu, OracleLimits limits) {
  std::map<int, Integer> counts;
  const int n = static_cast<int>(mu.size());
  if (n == 0) throw UsageError("catalan_oracle: n must be at least 1");
  for (int m : mu)
    if (m < 0) return counts;
  const int total = std::accumulate(mu.begin(), mu.end(), 0);
  if (total % 2 != 0) return counts;
  if (total > limits.max_degree_sum)
    throw ResourceLimitError("catalan_oracle: degree sum " + std::to_string(total) +
                             " exceeds bound " + std::to_string(limits.max_degree_sum));
  if (total == 0) {
    if (n == 1) counts[0] = 1;
    return counts;
  }

  // Half-edge h belongs to vertex owner[h]; next[h] is the following
  // half-edge in the cyclic order at that vertex, starting from the arrow.
  std::vector<int> owner, next;
  for (int v = 0; v < n; ++v) {
    const int base = static_cast<int>(owner.size());
    for (int k = 0; k < mu[v]; ++k) {
      owner.push_back(v);
      next.push_back(base + (k + 1) % mu[v]);
    }
  }
  const int edges = total / 2;
  std::vector<int> partner(total, -1);

  auto tally = [&]() {
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    int components = n;
    for (int h = 0; h < total; ++h) {
      int a = find(owner[h]), b = find(owner[partner[h]]);
      if (a != b) {
        parent[a] = b;
        --components;
      }
    }
    if (components != 1) return;
    std::vector<char> seen(total, 0);
    int faces = 0;
    for (int h = 0; h < total; ++h) {
      if (seen[h]) continue;
      ++faces;
      for (int x = h; !seen[x]; x = next[partner[x]]) seen[x] = 1;
    }
    const int euler = n - edges + faces;
    counts[(2 - euler) / 2] += 1;
  };

  std::function<void()> match = [&]() {
    int h = 0;
    while (h < total && partner[h] >= 0) ++h;
    if (h == total) {
      tally();
      return;
    }
    for (int k = h + 1; k < total; ++k) {
      if (partner[k] >= 0) continue;
      partner[h] = k;
      partner[k] = h;
      match();
      partner[h] = partner[k] = -1;
    }
  };
  match();
  return counts;
}

Integer catalan_oracle(const CatalanKey& key, OracleLimits limits) {
  if (key.g < 0) return 0;
  auto counts = catalan_oracle_by_genus(key.mu, limits);
  auto it = counts.find(key.g);
  return it == counts.end() ? Integer(0) : it->second;
}

TruncSeries<Rational> unstable_z_series(int order) {
  if (order < 1) throw UsageError("unstable_z_series: order must be positive");
  TruncSeries<Rational> z("w", order, Expansion::AtInfinity);
  for (int m = 0; 2 * m + 1 <= order; ++m)
    z.set(2 * m + 1, Rational(catalan_number(CatalanKey{0, {2 * m}})));
  return z;
}

}  // namespace qcurve
