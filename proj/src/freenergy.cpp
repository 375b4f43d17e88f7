#include "qcurve/freenergy.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <numeric>

#include "qcurve/errors.hpp"

namespace qcurve {

namespace {

using RMatrix = std::vector<std::vector<Rational>>;

void require_stable(int g, int n, const char* who) {
  if (n < 1 || g < 0) throw UsageError(std::string(who) + ": need g >= 0 and n >= 1");
  if (2 * g - 2 + n <= 0)
    throw UsageError(std::string(who) + ": (g,n) is unstable; use unstable_z_series for (0,1)");
}

RMatrix invert(RMatrix a) {
  const std::size_t n = a.size();
  RMatrix inv(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col].is_zero()) ++pivot;
    if (pivot == n) throw IntegrityError("fitting matrix is singular");
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    const Rational s = a[col][col].inverse();
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] *= s;
      inv[col][j] *= s;
    }
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || a[row][col].is_zero()) continue;
      const Rational f = a[row][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[row][j] -= f * a[col][j];
        inv[row][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

// rows x (2D+1): entry (j, k) = [w^j] t(w)^{k-D}.
RMatrix fitting_matrix(int degree, int rows) {
  RMatrix m(static_cast<std::size_t>(rows), std::vector<Rational>(2 * degree + 1, Rational(0)));
  for (int k = -degree; k <= degree; ++k) {
    auto s = t_power_series(k, rows - 1);
    for (int j = 0; j < rows; ++j) m[j][k + degree] = s[j];
  }
  return m;
}

const RMatrix& inverse_fitting_matrix(int degree) {
  static std::mutex mutex;
  static std::map<int, RMatrix> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(degree);
  if (it == cache.end()) it = cache.emplace(degree, invert(fitting_matrix(degree, 2 * degree + 1))).first;
  return it->second;
}

// Dense tensor with equal extent along every axis.
struct Tensor {
  int n = 0;
  std::vector<std::size_t> dims;
  std::vector<Rational> data;

  Tensor(int n_, std::size_t extent)
      : n(n_), dims(static_cast<std::size_t>(n_), extent) {
    std::size_t size = 1;
    for (auto d : dims) size *= d;
    data.assign(size, Rational(0));
  }
};

void for_each_index(const std::vector<std::size_t>& dims, const std::function<void(const std::vector<int>&, std::size_t)>& f) {
  std::vector<int> idx(dims.size(), 0);
  std::size_t flat = 0;
  std::size_t total = 1;
  for (auto d : dims) total *= d;
  for (flat = 0; flat < total; ++flat) {
    f(idx, flat);
    for (std::size_t a = dims.size(); a-- > 0;) {
      if (++idx[a] < static_cast<int>(dims[a])) break;
      idx[a] = 0;
    }
  }
}

// Contract axis `axis` of `t` with matrix `m` (out x in): out[..i..] = sum_j m[i][j] t[..j..].
Tensor mode_product(const Tensor& t, int axis, const RMatrix& m) {
  const std::size_t out = m.size();
  const std::size_t in = t.dims[axis];
  std::vector<std::size_t> dims = t.dims;
  dims[axis] = out;
  Tensor r(t.n, 1);
  r.dims = dims;
  std::size_t size = 1;
  for (auto d : dims) size *= d;
  r.data.assign(size, Rational(0));

  std::size_t inner = 1;
  for (std::size_t a = axis + 1; a < dims.size(); ++a) inner *= dims[a];
  std::size_t outer = 1;
  for (int a = 0; a < axis; ++a) outer *= dims[a];
  for (std::size_t o = 0; o < outer; ++o)
    for (std::size_t j = 0; j < in; ++j)
      for (std::size_t s = 0; s < inner; ++s) {
        const Rational& v = t.data[(o * in + j) * inner + s];
        if (v.is_zero()) continue;
        for (std::size_t i = 0; i < out; ++i)
          if (!m[i][j].is_zero()) r.data[(o * out + i) * inner + s] += m[i][j] * v;
      }
  return r;
}

Rational series_target(int g, const std::vector<int>& mu, CatalanTable& table) {
  Integer prod = 1;
  for (int m : mu) {
    if (m == 0) return 0;
    prod *= m;
  }
  Integer c = catalan_number(CatalanKey{g, mu}, table);
  if (c == 0) return 0;
  return Rational(c, prod);
}

Integer factorial(int k) {
  Integer r = 1;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

// (2m-1)!! for m >= 0, with (-1)!! = 1.
Integer odd_double_factorial(int top) {
  Integer r = 1;
  for (int i = top; i > 1; i -= 2) r *= i;
  return r;
}

}  // namespace

int free_energy_degree(int g, int n) { return 3 * (2 * g - 2 + n); }

TruncSeries<Rational> t_series(int order) { return t_power_series(1, order); }

TruncSeries<Rational> t_power_series(int k, int order) {
  auto z = unstable_z_series(std::max(order, 1)).truncated(order);
  auto one = TruncSeries<Rational>::constant("w", order, Rational(1), Expansion::AtInfinity);
  // t = (z+1)/(z-1); both factors are units since z(0) = 0.
  auto t = (z + one) * (z - one).inverse();
  return t.pow(k);
}

FreeEnergy free_energy(int g, int n, CatalanTable& table, FreeEnergyOptions options) {
  require_stable(g, n, "free_energy");
  const int degree = free_energy_degree(g, n);
  const int rows = 2 * degree + 1;
  const int check_rows = rows + options.check_margin;
  long box = 1;
  for (int i = 0; i < n; ++i) {
    box *= check_rows;
    if (box > options.max_box_entries)
      throw ResourceLimitError("free_energy: fitting box for (" + std::to_string(g) + "," +
                               std::to_string(n) + ") exceeds the size budget");
  }

  Tensor target(n, static_cast<std::size_t>(rows));
  for_each_index(target.dims, [&](const std::vector<int>& mu, std::size_t flat) {
    target.data[flat] = series_target(g, mu, table);
  });

  const RMatrix& minv = inverse_fitting_matrix(degree);
  Tensor coeffs = target;
  for (int a = 0; a < n; ++a) coeffs = mode_product(coeffs, a, minv);

  // Re-expand beyond the fitted orders and compare with the series.
  const RMatrix ext = fitting_matrix(degree, check_rows);
  Tensor expanded = coeffs;
  for (int a = 0; a < n; ++a) expanded = mode_product(expanded, a, ext);
  for_each_index(expanded.dims, [&](const std::vector<int>& mu, std::size_t flat) {
    if (expanded.data[flat] != series_target(g, mu, table))
      throw IntegrityError("free_energy: fitted Laurent polynomial for (" + std::to_string(g) +
                           "," + std::to_string(n) + ") fails the over-determination check");
  });

  std::vector<std::string> vars;
  for (int i = 1; i <= n; ++i) vars.push_back("t" + std::to_string(i));
  FreeEnergy f{g, n, LaurentPoly(vars)};
  for_each_index(coeffs.dims, [&](const std::vector<int>& k, std::size_t flat) {
    if (coeffs.data[flat].is_zero()) return;
    Exponents e(k.begin(), k.end());
    for (int& x : e) x -= degree;
    f.laurent.add_term(e, coeffs.data[flat]);
  });
  return f;
}

namespace {
MemoTable<std::pair<int, int>, FreeEnergy>& free_energy_cache() {
  static MemoTable<std::pair<int, int>, FreeEnergy> cache;
  return cache;
}
}  // namespace

void clear_free_energy_cache() { free_energy_cache().clear(); }

FreeEnergy free_energy(int g, int n) {
  auto& cache = free_energy_cache();
  if (auto hit = cache.lookup({g, n})) return *hit;
  FreeEnergy f = free_energy(g, n, default_catalan_table());
  cache.insert({g, n}, f);
  return f;
}

std::vector<Rational> diagonal_series(int g, int n, int order, CatalanTable& table) {
  std::vector<Rational> c(static_cast<std::size_t>(order + 1), Rational(0));
  const Integer nfact = factorial(n);
  std::vector<int> parts;
  // Partitions of k into exactly n parts, non-increasing.
  std::function<void(int, int, int)> rec = [&](int remaining, int slots, int cap) {
    if (slots == 0) {
      if (remaining != 0) return;
      Integer orderings = nfact;
      Integer prod = 1;
      for (std::size_t i = 0; i < parts.size();) {
        std::size_t j = i;
        while (j < parts.size() && parts[j] == parts[i]) ++j;
        orderings /= factorial(static_cast<int>(j - i));
        i = j;
      }
      for (int p : parts) prod *= p;
      Integer value = catalan_number(CatalanKey{g, parts}, table);
      int k = std::accumulate(parts.begin(), parts.end(), 0);
      if (value != 0) c[k] += Rational(value * orderings, prod);
      return;
    }
    for (int p = std::min(cap, remaining - (slots - 1)); p >= 1; --p) {
      parts.push_back(p);
      rec(remaining - p, slots - 1, p);
      parts.pop_back();
    }
  };
  for (int k = n; k <= order; ++k) rec(k, n, k);
  return c;
}

LaurentPoly fit_laurent_in_t(const std::vector<Rational>& series, int degree) {
  const int rows = 2 * degree + 1;
  const int check_rows = static_cast<int>(series.size());
  if (check_rows < rows) throw IntegrityError("fit_laurent_in_t: series too short to pin the fit");
  const RMatrix& minv = inverse_fitting_matrix(degree);
  std::vector<Rational> coeffs(static_cast<std::size_t>(rows), Rational(0));
  for (int k = 0; k < rows; ++k)
    for (int j = 0; j < rows; ++j) coeffs[k] += minv[k][j] * series[j];

  const RMatrix ext = fitting_matrix(degree, check_rows);
  for (int j = 0; j < check_rows; ++j) {
    Rational v = 0;
    for (int k = 0; k < rows; ++k) v += ext[j][k] * coeffs[k];
    if (v != series[j]) throw IntegrityError("fit_laurent_in_t: over-determination check failed");
  }
  LaurentPoly p({"t"});
  for (int k = 0; k < rows; ++k) p.add_term({k - degree}, coeffs[k]);
  return p;
}

LaurentPoly free_energy_diagonal(int g, int n, CatalanTable& table, FreeEnergyOptions options) {
  require_stable(g, n, "free_energy_diagonal");
  const int degree = free_energy_degree(g, n);
  auto series = diagonal_series(g, n, 2 * degree + options.check_margin, table);
  try {
    return fit_laurent_in_t(series, degree);
  } catch (const IntegrityError&) {
    throw IntegrityError("free_energy_diagonal: over-determination check failed for (" +
                         std::to_string(g) + "," + std::to_string(n) + ")");
  }
}

Rational bernoulli(int k) {
  if (k < 0) throw UsageError("bernoulli: negative index");
  std::vector<Rational> b(static_cast<std::size_t>(k + 1), Rational(0));
  b[0] = 1;
  for (int m = 1; m <= k; ++m) {
    Rational acc = 0;
    Integer binom = 1;  // C(m+1, j)
    for (int j = 0; j < m; ++j) {
      acc += Rational(binom) * b[j];
      binom = binom * (m + 1 - j) / (j + 1);
    }
    b[m] = -acc / Rational(m + 1);
  }
  return b[k];
}

Rational euler_characteristic(int g, int n) {
  require_stable(g, n, "euler_characteristic");
  Rational chi;
  int start;
  if (g == 0) {
    chi = 1;
    start = 3;
  } else {
    chi = -bernoulli(2 * g) / Rational(2 * g);
    start = 1;
  }
  for (int m = start; m < n; ++m) chi *= Rational(2 - 2 * g - m);
  return chi;
}

void IntersectionTable::check_dimension(const std::vector<int>& d) const {
  if (static_cast<int>(d.size()) != n_) throw UsageError("intersection query: wrong number of indices");
  int sum = 0;
  for (int x : d) {
    if (x < 0) throw UsageError("intersection query: negative index");
    sum += x;
  }
  if (sum != 3 * g_ - 3 + n_)
    throw UsageError("intersection query: indices must sum to 3g-3+n = " +
                     std::to_string(3 * g_ - 3 + n_));
}

Rational IntersectionTable::value(const std::vector<int>& d) const {
  check_dimension(d);
  auto it = entries_.find(d);
  return it == entries_.end() ? Rational(0) : it->second;
}

void IntersectionTable::set(const std::vector<int>& d, const Rational& v) {
  check_dimension(d);
  entries_[d] = v;
}

IntersectionTable intersection_from_top(const FreeEnergy& f) {
  const int g = f.g, n = f.n;
  const int degree = free_energy_degree(g, n);
  IntersectionTable table(g, n);
  LaurentPoly top = f.laurent.homogeneous_part(degree);
  const Rational sign = (n % 2 == 0) ? Rational(1) : Rational(-1);
  for (const auto& [e, c] : top.terms()) {
    std::vector<int> d;
    Rational factor = sign * pow(Rational(2), -(2 * g - 2 + n));
    for (int x : e) {
      if (x <= 0 || x % 2 == 0)
        throw IntegrityError("intersection_from_top: top monomial outside the t^(2d+1) support");
      const int di = (x - 1) / 2;
      d.push_back(di);
      factor *= Rational(odd_double_factorial(std::abs(2 * di - 1))) * pow(Rational(2), -(2 * di + 1));
    }
    table.set(d, c / factor);
  }
  return table;
}

IntersectionTable intersection_from_top(int g, int n) { return intersection_from_top(free_energy(g, n)); }

namespace {

Rational dvv_impl(std::vector<int> d, MemoTable<std::vector<int>, Rational>& memo) {
  const int n = static_cast<int>(d.size());
  int sum = 0;
  for (int x : d) {
    if (x < 0) return 0;
    sum += x;
  }
  if ((sum - n + 3) % 3 != 0) return 0;
  const int g = (sum - n + 3) / 3;
  if (g < 0 || n < 1 || 2 * g - 2 + n <= 0) return 0;
  std::sort(d.begin(), d.end(), std::greater<>());
  if (g == 0 && n == 3) return 1;               // <tau_0^3>
  if (g == 1 && n == 1) return Rational(1, 24);  // <tau_1>
  if (auto hit = memo.lookup(d)) return *hit;

  const int k = d[0] - 1;
  const std::vector<int> rest(d.begin() + 1, d.end());
  Rational total = 0;
  for (std::size_t j = 0; j < rest.size(); ++j) {
    std::vector<int> e = rest;
    e[j] = rest[j] + k;
    total += Rational(odd_double_factorial(2 * k + 2 * rest[j] + 1),
                      odd_double_factorial(2 * rest[j] - 1)) * dvv_impl(e, memo);
  }
  for (int r = 0; r <= k - 1; ++r) {
    const int s = k - 1 - r;
    const Rational w = Rational(odd_double_factorial(2 * r + 1) * odd_double_factorial(2 * s + 1), 2);
    std::vector<int> e = {r, s};
    e.insert(e.end(), rest.begin(), rest.end());
    total += w * dvv_impl(e, memo);
    const int m = static_cast<int>(rest.size());
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
      std::vector<int> left{r}, right{s};
      for (int i = 0; i < m; ++i) ((mask >> i) & 1u ? left : right).push_back(rest[i]);
      Rational a = dvv_impl(left, memo);
      if (a.is_zero()) continue;
      total += w * a * dvv_impl(right, memo);
    }
  }
  total = total / Rational(odd_double_factorial(2 * k + 3));
  memo.insert(d, total);
  return total;
}

void for_each_d_vector(int n, int sum, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> d(static_cast<std::size_t>(n), 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == n - 1) {
      d[i] = left;
      f(d);
      return;
    }
    for (int x = 0; x <= left; ++x) {
      d[i] = x;
      rec(i + 1, left - x);
    }
  };
  if (n >= 1 && sum >= 0) rec(0, sum);
}

}  // namespace

Rational dvv_intersection(const std::vector<int>& d) {
  static MemoTable<std::vector<int>, Rational> memo;
  return dvv_impl(d, memo);
}

DvvReport dvv_compare(const IntersectionTable& table) {
  DvvReport report;
  for_each_d_vector(table.n(), 3 * table.g() - 3 + table.n(), [&](const std::vector<int>& d) {
    DvvEntry e{table.g(), d, table.value(d), dvv_intersection(d)};
    if (!e.ok()) report.ok = false;
    report.entries.push_back(std::move(e));
  });
  // Entries stored outside the enumerated range cannot occur: set() enforces the dimension.
  return report;
}

DvvReport dvv_check(int max_g, int max_n) {
  DvvReport report;
  for (int g = 0; g <= max_g; ++g)
    for (int n = 1; n <= max_n; ++n) {
      if (2 * g - 2 + n <= 0) continue;
      DvvReport part = dvv_compare(intersection_from_top(g, n));
      report.ok = report.ok && part.ok;
      for (auto& e : part.entries) report.entries.push_back(std::move(e));
    }
  return report;
}

}  // namespace qcurve
