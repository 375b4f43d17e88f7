#include "qcurve/hurwitz.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <mutex>
#include <numeric>
#include <unordered_map>

#include "qcurve/errors.hpp"
#include "qcurve/series.hpp"

namespace qcurve {

int HurwitzKey::d() const { return std::accumulate(mu.begin(), mu.end(), 0); }

std::optional<int> HurwitzKey::b() const {
  if (r < 1 || d() % r != 0) return std::nullopt;
  return 2 * g - 2 + n() + d() / r;
}

HurwitzKey HurwitzKey::canonical() const {
  HurwitzKey k = *this;
  std::sort(k.mu.begin(), k.mu.end(), std::greater<>());
  return k;
}

HurwitzTable& default_hurwitz_table() {
  static HurwitzTable table;
  return table;
}

namespace {

Integer factorial(int k) {
  Integer r = 1;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

Integer multiplicity_factorials(const std::vector<int>& sorted_mu) {
  Integer r = 1;
  for (std::size_t i = 0; i < sorted_mu.size();) {
    std::size_t j = i;
    while (j < sorted_mu.size() && sorted_mu[j] == sorted_mu[i]) ++j;
    r *= factorial(static_cast<int>(j - i));
    i = j;
  }
  return r;
}

// A permutation of at most 8 letters and a set partition of the letters,
// packed four bits per letter each.
struct State {
  std::array<std::uint8_t, 8> perm{};
  std::array<std::uint8_t, 8> block{};
};

std::uint64_t pack(const State& s, int d) {
  std::uint64_t x = 0;
  for (int i = 0; i < d; ++i) x |= static_cast<std::uint64_t>(s.perm[i]) << (4 * i);
  for (int i = 0; i < d; ++i) x |= static_cast<std::uint64_t>(s.block[i]) << (32 + 4 * i);
  return x;
}

State unpack(std::uint64_t x, int d) {
  State s;
  for (int i = 0; i < d; ++i) s.perm[i] = static_cast<std::uint8_t>((x >> (4 * i)) & 0xF);
  for (int i = 0; i < d; ++i) s.block[i] = static_cast<std::uint8_t>((x >> (32 + 4 * i)) & 0xF);
  return s;
}

// Relabel blocks in order of first appearance.
void canonical_blocks(State& s, int d) {
  std::array<int, 16> map;
  map.fill(-1);
  int next = 0;
  for (int i = 0; i < d; ++i) {
    int& m = map[s.block[i]];
    if (m < 0) m = next++;
    s.block[i] = static_cast<std::uint8_t>(m);
  }
}

std::vector<int> cycle_type(const State& s, int d) {
  std::vector<int> type;
  std::array<bool, 8> seen{};
  for (int i = 0; i < d; ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (int x = i; !seen[x]; x = s.perm[x]) {
      seen[x] = true;
      ++len;
    }
    type.push_back(len);
  }
  std::sort(type.begin(), type.end(), std::greater<>());
  return type;
}

bool single_block(const State& s, int d) {
  for (int i = 0; i < d; ++i)
    if (s.block[i] != 0) return false;
  return true;
}

void add_checked(std::uint64_t& acc, std::uint64_t v) {
  if (__builtin_add_overflow(acc, v, &acc)) throw ResourceLimitError("hurwitz_oracle: count overflow");
}

using CountKey = std::tuple<int, int, int>;

}  // namespace

std::map<std::pair<int, std::vector<int>>, Integer> hurwitz_oracle_counts(int r, int d, int max_b,
                                                                          HurwitzLimits limits) {
  if (r < 1 || d < 1) throw UsageError("hurwitz_oracle: need r >= 1 and d >= 1");
  if (d > limits.max_degree || d > 8)
    throw ResourceLimitError("hurwitz_oracle: degree " + std::to_string(d) + " exceeds bound");
  if (max_b > limits.max_branch)
    throw ResourceLimitError("hurwitz_oracle: branch count " + std::to_string(max_b) + " exceeds bound");

  static std::mutex mutex;
  static std::map<CountKey, std::map<std::pair<int, std::vector<int>>, Integer>> cache;
  {
    std::lock_guard lock(mutex);
    auto it = cache.find({r, d, max_b});
    if (it != cache.end()) return it->second;
  }

  std::map<std::pair<int, std::vector<int>>, Integer> out;
  if (d % r != 0) return out;

  std::unordered_map<std::uint64_t, std::uint64_t> layer;
  std::array<std::uint8_t, 8> p{};
  std::iota(p.begin(), p.begin() + d, 0);
  do {
    State s;
    s.perm = p;
    std::array<bool, 8> seen{};
    bool ok = true;
    std::uint8_t label = 0;
    for (int i = 0; i < d && ok; ++i) {
      if (seen[i]) continue;
      int len = 0;
      for (int x = i; !seen[x]; x = p[x]) {
        seen[x] = true;
        s.block[x] = label;
        ++len;
      }
      ++label;
      ok = (len == r);
    }
    if (ok) layer[pack(s, d)] += 1;
  } while (std::next_permutation(p.begin(), p.begin() + d));

  for (int b = 0;; ++b) {
    for (const auto& [code, count] : layer) {
      State s = unpack(code, d);
      if (!single_block(s, d)) continue;
      Integer& slot = out[{b, cycle_type(s, d)}];
      slot += Integer(std::to_string(count));
    }
    if (b == max_b) break;
    std::unordered_map<std::uint64_t, std::uint64_t> next;
    next.reserve(layer.size() * 2);
    for (const auto& [code, count] : layer) {
      const State s = unpack(code, d);
      for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
          State t = s;
          std::swap(t.perm[i], t.perm[j]);
          const std::uint8_t from = std::max(t.block[i], t.block[j]);
          const std::uint8_t to = std::min(t.block[i], t.block[j]);
          if (from != to) {
            for (int k = 0; k < d; ++k)
              if (t.block[k] == from) t.block[k] = to;
            canonical_blocks(t, d);
          }
          add_checked(next[pack(t, d)], count);
        }
    }
    layer = std::move(next);
  }

  for (auto it = out.begin(); it != out.end();) it = (it->second == 0) ? out.erase(it) : std::next(it);
  std::lock_guard lock(mutex);
  cache.emplace(CountKey{r, d, max_b}, out);
  return out;
}

Rational hurwitz_oracle(const HurwitzKey& key, HurwitzLimits limits) {
  if (key.r < 1 || key.mu.empty()) throw UsageError("hurwitz_oracle: need r >= 1 and n >= 1");
  for (int m : key.mu)
    if (m < 1) return 0;
  auto b = key.b();
  if (!b || *b < 0) return 0;
  const HurwitzKey k = key.canonical();
  auto counts = hurwitz_oracle_counts(k.r, k.d(), *b, limits);
  auto it = counts.find({*b, k.mu});
  if (it == counts.end()) return 0;
  return Rational(it->second * multiplicity_factorials(k.mu), factorial(k.d()) * factorial(*b));
}

namespace {

class CutAndJoin {
 public:
  explicit CutAndJoin(HurwitzTable& table) : table_(table) {}

  // H^r_{g,n}(mu).
  Rational h(const HurwitzKey& key) {
    if (key.g < 0 || key.mu.empty()) return 0;
    for (int m : key.mu)
      if (m < 1) return 0;
    auto b = key.b();
    if (!b || *b < 0) return 0;
    const HurwitzKey k = key.canonical();
    if (auto hit = table_.lookup(k)) return *hit;
    Rational value;
    if (*b == 0) {
      value = hurwitz_oracle(k);
    } else {
      Integer prod = 1;
      for (int m : k.mu) prod *= m;
      value = rhs(k) / Rational(*b) / Rational(prod);
    }
    table_.insert(k, value);
    return value;
  }

 private:
  // calH = (prod mu) H.
  Rational calh(const HurwitzKey& key) {
    Rational v = h(key);
    if (v.is_zero()) return v;
    Integer prod = 1;
    for (int m : key.mu) prod *= m;
    return v * Rational(prod);
  }

  Rational rhs(const HurwitzKey& key) {
    const int n = key.n();
    const int r = key.r, g = key.g;
    Rational total = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        HurwitzKey merged{r, g, {}};
        for (int k = 0; k < n; ++k) {
          if (k == j) continue;
          merged.mu.push_back(k == i ? key.mu[i] + key.mu[j] : key.mu[k]);
        }
        total += Rational(key.mu[i] * key.mu[j]) * calh(merged);
      }

    Rational split = 0;
    for (int i = 0; i < n; ++i) {
      std::vector<int> rest;
      for (int k = 0; k < n; ++k)
        if (k != i) rest.push_back(key.mu[k]);
      const int m = static_cast<int>(rest.size());
      Rational inner = 0;
      for (int alpha = 1; alpha < key.mu[i]; ++alpha) {
        const int beta = key.mu[i] - alpha;
        if (g >= 1) {
          HurwitzKey lower{r, g - 1, {alpha, beta}};
          lower.mu.insert(lower.mu.end(), rest.begin(), rest.end());
          inner += calh(lower);
        }
        for (unsigned mask = 0; mask < (1u << m); ++mask) {
          HurwitzKey left{r, 0, {alpha}}, right{r, 0, {beta}};
          for (int k = 0; k < m; ++k) ((mask >> k) & 1u ? left : right).mu.push_back(rest[k]);
          if (left.d() % r != 0) continue;
          for (int g1 = 0; g1 <= g; ++g1) {
            left.g = g1;
            right.g = g - g1;
            Rational a = calh(left);
            if (a.is_zero()) continue;
            inner += a * calh(right);
          }
        }
      }
      split += Rational(key.mu[i]) * inner;
    }
    return total + split / Rational(2);
  }

  HurwitzTable& table_;
};

}  // namespace

Rational hurwitz_number(const HurwitzKey& key, HurwitzTable& table) {
  if (key.r < 1) throw UsageError("hurwitz_number: r must be positive");
  if (key.mu.empty()) throw UsageError("hurwitz_number: n must be at least 1");
  return CutAndJoin(table).h(key);
}

Rational hurwitz_number(const HurwitzKey& key) { return hurwitz_number(key, default_hurwitz_table()); }

LambertReport lambert_check(int r, int order) {
  if (r < 1 || r > 3 || order < 1 || order > 8)
    throw UsageError("lambert_check: need 1 <= r <= 3 and 1 <= order <= 8");
  struct Norm {
    std::string name;
    std::function<Rational(int)> scale;  // applied to calH^r_{0,1}(rm); b_m = m - 1
  };
  const std::vector<Norm> norms = {
      {"calH", [](int) { return Rational(1); }},
      {"calH/b!", [](int m) { return Rational(1) / Rational(factorial(m - 1)); }},
      {"calH*b!", [](int m) { return Rational(factorial(m - 1)); }},
  };
  LambertReport report;
  for (const auto& norm : norms) {
    TruncSeries<Rational> y("w", order);
    for (int m = 1; m <= order; ++m) {
      HurwitzKey key{r, 0, {r * m}};
      y.set(m, hurwitz_number(key) * Rational(r * m) * norm.scale(m));
    }
    auto e = (y * Rational(-r)).exp();
    auto residual = TruncSeries<Rational>::variable("w", order) - y * e;
    LambertCandidate c{norm.name, residual.is_zero(), -1};
    if (!c.pass) c.first_failure = residual.valuation();
    report.candidates.push_back(c);
  }
  report.ok = report.candidates.front().pass;
  return report;
}

}  // namespace qcurve
