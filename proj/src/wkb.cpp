#include "qcurve/wkb.hpp"

#include "qcurve/errors.hpp"
#include "qcurve/freenergy.hpp"

namespace qcurve {

namespace {

const std::vector<std::string> kT{"t"};

RatFuncQ t_var() { return RatFuncQ::variable(kT, "t"); }
RatFuncQ constant(const Rational& c) { return RatFuncQ::constant(kT, c); }

// (0,2) diagonal: d/dx F_{0,2}(x,x), fitted as a Laurent polynomial in t.
RatFuncQ f02_diagonal_dx() {
  constexpr int kDegree = 4;
  constexpr int kOrder = 2 * kDegree + 4;
  auto c = diagonal_series(0, 2, kOrder, default_catalan_table());
  // d/dx w^k = -k w^{k+1} for w = 1/x.
  std::vector<Rational> series(kOrder + 1, Rational(0));
  for (int k = 1; k < kOrder; ++k) series[k + 1] = -Rational(k) * c[k];
  return fit_laurent_in_t(series, kDegree).to_ratfunc();
}

Rational factorial(int n) {
  Rational r = 1;
  for (int i = 2; i <= n; ++i) r *= Rational(i);
  return r;
}

}  // namespace

RatFuncQ x_of_t() {
  auto t = t_var();
  auto t2 = t * t;
  return constant(2) * (t2 + constant(1)) / (t2 - constant(1));
}

RatFuncQ z_of_t() {
  auto t = t_var();
  return (t + constant(1)) / (t - constant(1));
}

RatFuncQ dx_dt() { return x_of_t().derivative("t"); }

RatFuncQ u_of_t() {
  auto t = t_var();
  auto t2 = t * t;
  return (t2 - constant(1)) / (constant(2) * (t2 + constant(1)));
}

RatFuncQ w1_of_t() {
  auto t = t_var();
  return constant(Rational(1, 2)) - t / (t * t + constant(1));
}

RatFuncQ d_dx(const RatFuncQ& f) { return f.derivative("t") / dx_dt(); }

DiagonalLevel principal_specialization(int g, int n) {
  if (g < 0 || n < 1) throw DependencyError("principal_specialization: no free energy for this (g,n)");
  if (g == 0 && n == 1) return {std::nullopt, -z_of_t()};
  if (g == 0 && n == 2) return {std::nullopt, f02_diagonal_dx()};
  try {
    RatFuncQ value = free_energy_diagonal(g, n, default_catalan_table()).to_ratfunc();
    return {value, d_dx(value)};
  } catch (const ResourceLimitError& e) {
    throw DependencyError(std::string("principal_specialization: ") + e.what());
  }
}

std::vector<RatFuncQ> wkb_derivatives(int max_m, const WkbOptions& options) {
  if (max_m < 0) throw UsageError("wkb_derivatives: negative level");
  std::vector<RatFuncQ> s;
  for (int m = 0; m <= max_m; ++m) {
    // Levels with 2g-2+n = m-1.
    RatFuncQ acc = constant(0);
    if (m == 0) {
      acc = principal_specialization(0, 1).dx;
    } else if (m == 1) {
      acc = principal_specialization(0, 2).dx * Rational(1, 2);
    } else {
      RatFuncQ total = constant(0);
      for (int g = 0; 2 * g - 1 <= m; ++g) {
        const int n = m + 1 - 2 * g;
        if (n < 1) continue;
        DiagonalLevel level = principal_specialization(g, n);
        RatFuncQ v = *level.value * (Rational(1) / factorial(n));
        if (g == 1 && n == 1) v = v * options.f11_scale;
        total += v;
      }
      total += constant(options.constant_shift);
      acc = d_dx(total);
    }
    s.push_back(acc);
  }
  return s;
}

std::vector<RatFuncQ> wkb_residual(int max_order, const WkbOptions& options) {
  if (max_order < 0) throw UsageError("wkb_residual: negative order");
  const auto s = wkb_derivatives(max_order, options);
  const RatFuncQ x = x_of_t();
  std::vector<RatFuncQ> residual;
  for (int k = 0; k <= max_order; ++k) {
    RatFuncQ r = x * s[k];
    for (int a = 0; a <= k; ++a) r += s[a] * s[k - a];
    if (k == 0) r += constant(1);
    else r += d_dx(s[k - 1]);
    residual.push_back(r);
  }
  return residual;
}

WkbReport wkb_verify(int max_order, const WkbOptions& options) {
  WkbReport report;
  const auto residual = wkb_residual(max_order, options);
  for (int k = 0; k <= max_order; ++k) {
    WkbOrderStatus st{k, residual[k].is_zero(), residual[k].num().total_degree(),
                      residual[k].den().total_degree()};
    report.ok = report.ok && st.zero;
    report.orders.push_back(st);
  }
  return report;
}

SpectralReport spectral_param_check() {
  SpectralReport report;
  const RatFuncQ x = x_of_t(), z = z_of_t();
  const RatFuncQ lhs1 = z * z - x * z + constant(1);
  report.identities.push_back({"z^2 - x z + 1 = 0", lhs1.is_zero()});
  const RatFuncQ shifted = w1_of_t() - constant(Rational(1, 2));
  const RatFuncQ lhs2 = u_of_t() * u_of_t() + shifted * shifted;
  report.identities.push_back({"u^2 + (w1 - 1/2)^2 = 1/4", ratfunc_equal(lhs2, constant(Rational(1, 4)))});
  for (const auto& id : report.identities) report.ok = report.ok && id.pass;
  return report;
}

}  // namespace qcurve
