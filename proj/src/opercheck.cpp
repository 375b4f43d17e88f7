#include "qcurve/opercheck.hpp"

#include <future>
#include <random>
#include <sstream>

#include "qcurve/errors.hpp"

namespace qcurve {

void CheckReport::add(std::string name, bool pass) {
  ok = ok && pass;
  items.push_back({std::move(name), pass});
}

void MobiusChart::validate() const {
  if (a * d - b * c != Rational(1))
    throw PreconditionError("Mobius chart must be unimodular (ad - bc = 1)");
  if (eps != 1 && eps != -1) throw PreconditionError("spin sign must be +1 or -1");
}

MobiusChart compose(const MobiusChart& m1, const MobiusChart& m2) {
  return {m1.a * m2.a + m1.b * m2.c, m1.a * m2.b + m1.b * m2.d,
          m1.c * m2.a + m1.d * m2.c, m1.c * m2.b + m1.d * m2.d, m1.eps * m2.eps};
}

namespace {

const std::vector<std::string> kZ{"z"};

RatFuncQ zq() { return RatFuncQ::variable(kZ, "z"); }
RatFuncQ cq(const Rational& c) { return RatFuncQ::constant(kZ, c); }

bool same(const RatFuncQ& a, const RatFuncQ& b) { return ratfunc_equal(a, b); }

template <class T>
bool same_matrix(const Matrix<T>& a, const Matrix<T>& b) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!ratfunc_equal(a(i, j), b(i, j))) return false;
  return true;
}

template <class T>
Matrix<T> entrywise_substitute(const Matrix<T>& m, const std::string& var, const T& value) {
  return m.map([&](const T& x) { return x.substitute(var, value); });
}

template <class T>
Matrix<T> entrywise_derivative(const Matrix<T>& m, const std::string& var) {
  return m.map([&](const T& x) { return x.derivative(var); });
}

RatFuncQ poly_as_ratfunc(const PolyQ& q) {
  if (q.vars() != kZ) throw UsageError("quadratic differential must be a polynomial in z");
  return RatFuncQ(q);
}

}  // namespace

RatFuncQ mobius_map(const MobiusChart& m) {
  return (cq(m.a) * zq() + cq(m.b)) / (cq(m.c) * zq() + cq(m.d));
}

RatFuncQ spin_xi(const MobiusChart& m) { return cq(Rational(m.eps)) * (cq(m.c) * zq() + cq(m.d)); }

Rational spin_sigma(const MobiusChart& m) { return Rational(m.eps) * m.c; }

Matrix<RatFuncQ> transition_hbar(const MobiusChart& chart, const Rational& hbar) {
  chart.validate();
  const RatFuncQ xi = spin_xi(chart);
  return Matrix<RatFuncQ>(2, 2, {xi, xi.derivative("z") * hbar, cq(0), xi.inverse()});
}

CheckReport cocycle_check(const MobiusChart& ab, const MobiusChart& bg, const Rational& hbar,
                          std::optional<int> eps_ag) {
  ab.validate();
  bg.validate();
  MobiusChart ag = compose(ab, bg);
  if (eps_ag) ag.eps = *eps_ag;
  ag.validate();

  CheckReport report;
  const RatFuncQ z_beta = mobius_map(bg);
  const RatFuncQ xi_ab = spin_xi(ab).substitute("z", z_beta);
  const RatFuncQ xi_bg = spin_xi(bg);
  const RatFuncQ xi_ag = spin_xi(ag);

  bool squares = true;
  for (const MobiusChart* m : std::initializer_list<const MobiusChart*>{&ab, &bg, &ag}) {
    const RatFuncQ xi = spin_xi(*m);
    squares = squares && same(xi * xi * mobius_map(*m).derivative("z"), cq(1));
  }
  report.add("xi^2 = dz_beta/dz_alpha", squares);

  const RatFuncQ prod = xi_ab * xi_bg;
  report.add("xi_ab xi_bg = +-xi_ag", same(prod, xi_ag) || same(prod, -xi_ag));

  const RatFuncQ eu = xi_ab * spin_sigma(bg) + xi_bg.inverse() * spin_sigma(ab);
  report.add("sigma_ag = xi_ab sigma_bg + sigma_ab / xi_bg", same(cq(spin_sigma(ag)), eu));

  const auto g_ab = entrywise_substitute(transition_hbar(ab, hbar), "z", z_beta);
  const auto g_bg = transition_hbar(bg, hbar);
  const auto g_ag = transition_hbar(ag, hbar);
  report.add("g_ab g_bg = g_ag", same_matrix(g_ab * g_bg, g_ag));

  bool unimodular = true;
  for (const auto* g : {&g_ab, &g_bg, &g_ag}) {
    const auto& m = *g;
    unimodular = unimodular && same(m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0), cq(1));
  }
  report.add("det g = 1", unimodular);

  const auto g0 = transition_hbar(ab, Rational(0));
  report.add("g diagonal at hbar = 0", g0(0, 1).is_zero() && g0(1, 0).is_zero());
  return report;
}

CheckReport gauge_law_check(const MobiusChart& chart, const PolyQ& q_beta, const Rational& hbar,
                            const GaugeOptions& options) {
  if (hbar.is_zero()) throw UsageError("gauge_law_check: the connection is undefined at hbar = 0");
  chart.validate();
  const RatFuncQ q = poly_as_ratfunc(q_beta);
  const RatFuncQ xi = spin_xi(chart);
  const RatFuncQ dxi = xi.derivative("z");
  const Rational inv_h = hbar.inverse();

  const Matrix<RatFuncQ> g(2, 2, {xi, dxi * hbar, cq(0), xi.inverse()});
  const Matrix<RatFuncQ> g_inv(2, 2, {xi.inverse(), -(dxi * hbar), cq(0), xi});
  Matrix<RatFuncQ> d_g_inv = entrywise_derivative(g_inv, "z");
  d_g_inv(0, 1) = d_g_inv(0, 1) + cq(hbar * options.second_derivative_fault);

  const Matrix<RatFuncQ> a_beta(2, 2, {cq(0), q * inv_h, cq(inv_h), cq(0)});
  const Matrix<RatFuncQ> lhs = g * a_beta * g_inv + g * d_g_inv;
  // A_alpha written against dz_beta: dz_alpha = xi^-2 dz_beta, q_alpha = q_beta xi^4.
  const RatFuncQ xi2 = xi * xi;
  const Matrix<RatFuncQ> rhs(2, 2, {cq(0), q * xi2 * inv_h, xi2.inverse() * inv_h, cq(0)});

  CheckReport report;
  report.add("d^2 xi / dz^2 = 0", dxi.derivative("z").is_zero());
  report.add("g A_beta g^-1 + g d(g^-1) = A_alpha", same_matrix(lhs, rhs));
  return report;
}

CheckReport hitchin_transition_check(const MobiusChart& chart, const PolyQ& q_beta) {
  chart.validate();
  const RatFuncQ q = poly_as_ratfunc(q_beta);
  const RatFuncQ xi = spin_xi(chart);
  const Matrix<RatFuncQ> f(2, 2, {xi, cq(0), cq(0), xi.inverse()});
  const Matrix<RatFuncQ> f_inv(2, 2, {xi.inverse(), cq(0), cq(0), xi});
  const Matrix<RatFuncQ> phi_beta(2, 2, {cq(0), q, cq(1), cq(0)});
  const RatFuncQ xi2 = xi * xi;
  const Matrix<RatFuncQ> phi_alpha(2, 2, {cq(0), q * xi2, xi2.inverse(), cq(0)});

  // q_alpha dz_alpha^2 = q_beta dz_beta^2 with dz_beta/dz_alpha = xi^2.
  const RatFuncQ q_alpha = q * xi2 * xi2;
  const RatFuncQ dzb_dza = mobius_map(chart).derivative("z").inverse();
  CheckReport report;
  report.add("q_alpha = q_beta (dz_beta/dz_alpha)^2", same(q_alpha, q * dzb_dza * dzb_dza));
  report.add("f phi_beta f^-1 = phi_alpha", same_matrix(f * phi_beta * f_inv, phi_alpha));
  return report;
}

const std::vector<std::string>& gaiotto_vars() {
  static const std::vector<std::string> vars{"z", "zb", "hbar", "zeta", "R"};
  return vars;
}

namespace {

RatFuncG gv(const std::string& name) { return RatFuncG::variable(gaiotto_vars(), name); }
RatFuncG gc(const GaussRational& c) { return RatFuncG::constant(gaiotto_vars(), c); }

// q(z) or its formal conjugate q(zb) with conjugated coefficients.
RatFuncG lift(const PolyQ& q, bool conjugate) {
  if (q.vars() != kZ) throw UsageError("quadratic differential must be a polynomial in z");
  PolyG p(gaiotto_vars());
  const std::size_t slot = conjugate ? 1 : 0;
  for (const auto& [e, c] : q.terms()) {
    Exponents f(gaiotto_vars().size(), 0);
    f[slot] = e[0];
    p.add_term(f, conj(GaussRational(c)));
  }
  return RatFuncG(p);
}

using MG = Matrix<RatFuncG>;

MG x_plus() { return MG(2, 2, {gc(0), gc(1), gc(0), gc(0)}); }
MG x_minus() { return MG(2, 2, {gc(0), gc(0), gc(1), gc(0)}); }
MG h_diag() { return MG(2, 2, {gc(1), gc(0), gc(0), gc(-1)}); }

MG times(const RatFuncG& s, const MG& m) {
  return m.map([&](const RatFuncG& x) { return s * x; });
}

bool matrix_zero(const MG& m) {
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      if (!m(i, j).is_zero()) return false;
  return true;
}

bool matrix_free_of(const MG& m, const std::string& var) {
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      if (m(i, j).depends_on(var)) return false;
  return true;
}

RatFuncG lambda_natural() { return gc(GaussRational::i()) / (gv("z") - gv("zb")); }

RatFuncG dlog(const RatFuncG& f, const std::string& var) { return f.derivative(var) / f; }

// D(hbar) = d + (1/hbar)(X_- + q X_+) dz - a H dz + hbar b X_+ dzbar.
MatForm<RatFuncG> limit_connection(const RatFuncG& q, const RatFuncG& lambda) {
  const RatFuncG h = gv("hbar");
  const RatFuncG a = dlog(lambda, "z");
  const RatFuncG b = lambda * lambda;
  MG dz = times(h.inverse(), x_minus() + times(q, x_plus())) - times(a, h_diag());
  MG dzbar = times(h * b, x_plus());
  return {dz, dzbar};
}

// D(zeta, R) in the Hitchin section with metric lambda.
MatForm<RatFuncG> flat_connection(const RatFuncG& q, const RatFuncG& qbar, const RatFuncG& lambda) {
  const RatFuncG zeta = gv("zeta"), r = gv("R");
  MG dz = times(r / zeta, x_minus() + times(q, x_plus())) -
          times(dlog(lambda, "z"), h_diag());
  const RatFuncG l2 = lambda * lambda;
  MG dzbar = times(r * zeta, times(qbar / l2, x_minus()) + times(l2, x_plus()));
  return {dz, dzbar};
}

bool same_form(const MatForm<RatFuncG>& a, const MatForm<RatFuncG>& b) {
  return same_matrix(a.dz, b.dz) && same_matrix(a.dzbar, b.dzbar);
}

}  // namespace

CheckReport gaiotto_limit_check(const PolyQ& q_poly, const GaiottoOptions& options) {
  CheckReport report;
  const RatFuncG z = gv("z"), zb = gv("zb"), h = gv("hbar"), r = gv("R");
  const RatFuncG lam_nat = lambda_natural();
  const RatFuncG lam = options.square_metric ? lam_nat * lam_nat : lam_nat;
  const RatFuncG dlam = lam.derivative("z");

  report.add("2 (d lambda)^2 - lambda d^2 lambda = 0",
             (gc(2) * dlam * dlam - lam * dlam.derivative("z")).is_zero());
  const RatFuncG ddbar = dlog(lam, "z").derivative("zb");
  report.add("curvature -4 / lambda^2 d dbar log lambda = -4",
             ratfunc_equal(gc(-4) / (lam * lam) * ddbar, gc(-4)));
  const RatFuncG lam0 = lam / r;
  report.add("lambda_0 solves dbar d log lambda - R^2 lambda^2 = 0",
             (dlog(lam0, "z").derivative("zb") - r * r * lam0 * lam0).is_zero());
  report.add("d log lambda_natural = -1/(z - zb)",
             ratfunc_equal(dlog(lam, "z"), gc(-1) / (z - zb)));

  const RatFuncG q = lift(q_poly, false);
  const MatForm<RatFuncG> d_h = limit_connection(q, lam);
  const RatFuncG a = dlog(lam, "z");
  const MG g(2, 2, {gc(1), h * a, gc(0), gc(1)});
  const MG g_inv(2, 2, {gc(1), -(h * a), gc(0), gc(1)});

  report.add("g X_- g^-1 = X_- + hbar a H - (hbar a)^2 X_+",
             same_matrix(g * x_minus() * g_inv,
                         x_minus() + times(h * a, h_diag()) - times(h * h * a * a, x_plus())));

  MatForm<RatFuncG> gauged{g * d_h.dz * g_inv + g * entrywise_derivative(g_inv, "z"),
                           g * d_h.dzbar * g_inv + g * entrywise_derivative(g_inv, "zb")};
  const MG target = times(h.inverse(), x_minus() + times(q, x_plus()));
  report.add("gauged dz part = (1/hbar)(X_- + q X_+)", same_matrix(gauged.dz, target));
  report.add("gauged dzbar part = 0", matrix_zero(gauged.dzbar));
  report.add("gauged connection free of zbar", matrix_free_of(gauged.dz, "zb") && matrix_free_of(gauged.dzbar, "zb"));
  report.add("gauged dz part has only hbar^-1 terms",
             matrix_free_of(gauged.dz.map([&](const RatFuncG& x) { return x * h; }), "hbar"));

  if (q_poly.is_zero()) {
    // zeta = hbar R in D(zeta, R) with lambda_0 reproduces D(hbar) for q = 0.
    MatForm<RatFuncG> fam = flat_connection(gc(0), gc(0), lam / r);
    fam.dz = entrywise_substitute(fam.dz, "zeta", h * r);
    fam.dzbar = entrywise_substitute(fam.dzbar, "zeta", h * r);
    report.add("q = 0 family at zeta = hbar R equals the limit connection", same_form(fam, d_h));
    report.add("q = 0 family independent of R", matrix_free_of(fam.dz, "R") && matrix_free_of(fam.dzbar, "R"));
  }
  return report;
}

CheckReport flat_family_check(const PolyQ& q_poly, const FlatOptions& options) {
  const RatFuncG r = gv("R");
  const RatFuncG lam = gc(GaussRational(options.scale)) * lambda_natural() / r;
  const RatFuncG q = lift(q_poly, false), qbar = lift(q_poly, true);
  const MatForm<RatFuncG> d = flat_connection(q, qbar, lam);

  MG curvature = entrywise_derivative(d.dzbar, "z") - entrywise_derivative(d.dz, "zb") +
                 commutator(d.dz, d.dzbar);
  const RatFuncG harmonic =
      dlog(lam, "z").derivative("zb") + r * r * (q * qbar / (lam * lam) - lam * lam);
  MG expected = times(harmonic, h_diag());
  if (options.specialize) {
    for (const char* v : {"zeta", "R"}) {
      curvature = entrywise_substitute(curvature, v, gc(1));
      expected = entrywise_substitute(expected, v, gc(1));
    }
  }
  CheckReport report;
  report.add("curvature = (dbar d log lambda + R^2 (q qbar / lambda^2 - lambda^2)) H",
             same_matrix(curvature, expected));
  if (q_poly.is_zero())
    report.add("flat", matrix_zero(curvature));
  else
    report.add("not flat with lambda_0 when q != 0", !matrix_zero(curvature));
  return report;
}

SqrtRingElem::SqrtRingElem(int r, Rational c) : r_(r) { add(0, c); }

SqrtRingElem SqrtRingElem::generator(int r, int i) {
  if (i < 1 || i >= r) throw UsageError("sqrt generator index out of range");
  const Integer p = Integer(i) * (r - i);
  if (mpz_perfect_square_p(p.get_mpz_t())) {
    Integer root;
    mpz_sqrt(root.get_mpz_t(), p.get_mpz_t());
    return SqrtRingElem(r, Rational(root));
  }
  SqrtRingElem e(r, Rational(0));
  e.add(1u << (i - 1), Rational(1));
  return e;
}

void SqrtRingElem::add(std::uint32_t mask, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(mask, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

SqrtRingElem operator+(const SqrtRingElem& a, const SqrtRingElem& b) {
  SqrtRingElem r = a;
  for (const auto& [m, c] : b.terms_) r.add(m, c);
  return r;
}

SqrtRingElem operator-(const SqrtRingElem& a, const SqrtRingElem& b) {
  SqrtRingElem r = a;
  for (const auto& [m, c] : b.terms_) r.add(m, -c);
  return r;
}

SqrtRingElem operator*(const SqrtRingElem& a, const SqrtRingElem& b) {
  SqrtRingElem r(a.r_, Rational(0));
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      Rational c = ca * cb;
      const std::uint32_t common = ma & mb;
      for (int i = 1; i < a.r_; ++i)
        if (common & (1u << (i - 1))) c *= Rational(i * (a.r_ - i));
      r.add(ma ^ mb, c);
    }
  return r;
}

SqrtRingElem operator*(const Rational& s, const SqrtRingElem& a) { return SqrtRingElem(a.r_, s) * a; }

std::string SqrtRingElem::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c;
    for (int i = 1; i < r_; ++i)
      if (m & (1u << (i - 1))) os << "*s" << i;
  }
  return os.str();
}

TdsResult kostant_tds(int r) {
  if (r < 2 || r > 32) throw UsageError("kostant_tds: rank must be between 2 and 32");
  const SqrtRingElem zero(r, Rational(0));
  Matrix<SqrtRingElem> xp(r, r, zero);
  for (int i = 1; i < r; ++i) xp(i - 1, i) = SqrtRingElem::generator(r, i);
  Matrix<SqrtRingElem> xm = xp.transpose();
  Matrix<SqrtRingElem> h = commutator(xp, xm);

  CheckReport report;
  Matrix<SqrtRingElem> expected_h(r, r, zero);
  for (int i = 0; i < r; ++i) expected_h(i, i) = SqrtRingElem(r, Rational(r - 1 - 2 * i));
  report.add("H = diag(r-1, r-3, ..., -(r-1))", h == expected_h);
  report.add("[H, X_+] = 2 X_+", commutator(h, xp) == scale(Rational(2), xp));
  report.add("[H, X_-] = -2 X_-", commutator(h, xm) == scale(Rational(-2), xm));
  return {TdsTriple{r, xp, xm, h}, report};
}

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) {
  // splitmix64 finalizer
  std::uint64_t x = root + (index + 1) * 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

MobiusChart random_chart(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto small = [&](int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); };
  MobiusChart m = MobiusChart::identity();
  const int factors = small(2, 5);
  for (int f = 0; f < factors; ++f) {
    MobiusChart e = MobiusChart::identity();
    switch (small(0, 2)) {
      case 0:
        e.b = small(-3, 3);
        break;
      case 1:
        e.c = small(-3, 3);
        break;
      default: {
        const Rational s = small(1, 3);
        e.a = small(0, 1) ? s : s.inverse();
        e.d = e.a.inverse();
      }
    }
    m = compose(m, e);
  }
  if (m.c.is_zero()) m = compose(m, MobiusChart{1, 0, 1, 1, 1});
  m.eps = small(0, 1) ? 1 : -1;
  return m;
}

PolyQ random_poly(std::uint64_t seed, int degree) {
  std::mt19937_64 rng(seed);
  PolyQ p(kZ);
  for (int k = 0; k <= degree; ++k) {
    int c = static_cast<int>(rng() % 7) - 3;
    if (k == degree && c == 0) c = 1;
    p.add_term({k}, Rational(c));
  }
  return p;
}

namespace {

struct TrialOutcome {
  std::vector<std::pair<std::string, bool>> checks;
};

TrialOutcome run_trial(std::uint64_t seed, int q_degree) {
  TrialOutcome out;
  auto note = [&](const std::string& name, bool pass) { out.checks.emplace_back(name, pass); };
  MobiusChart ab = random_chart(derive_seed(seed, 0));
  MobiusChart bg = random_chart(derive_seed(seed, 1));
  const PolyQ q = random_poly(derive_seed(seed, 2), q_degree);
  std::mt19937_64 rng(derive_seed(seed, 3));
  Rational hbar(Integer(static_cast<long>(rng() % 5) + 1), Integer(static_cast<long>(rng() % 4) + 1));
  if (rng() % 2) hbar = -hbar;

  for (int s1 : {1, -1})
    for (int s2 : {1, -1}) {
      ab.eps = s1;
      bg.eps = s2;
      note("cocycle (consistent signs)", cocycle_check(ab, bg, hbar).ok);
    }
  note("cocycle rejects inconsistent sign", !cocycle_check(ab, bg, hbar, -(ab.eps * bg.eps)).ok);
  note("gauge law", gauge_law_check(ab, q, hbar).ok);
  note("gauge law rejects d^2 xi != 0", !gauge_law_check(ab, q, hbar, {Rational(1)}).ok);
  note("hitchin transition", hitchin_transition_check(bg, q).ok);
  note("hitchin transition (q = 0)", hitchin_transition_check(bg, PolyQ(kZ)).ok);
  return out;
}

}  // namespace

OperSuiteReport run_oper_suite(const OperSuiteOptions& options) {
  if (options.trials < 0 || options.max_q_degree < 0 || options.max_rank < 2)
    throw UsageError("verify-oper: trials >= 0, q-degree >= 0 and rank >= 2 required");
  OperSuiteReport report;
  auto tally = [&](const std::string& name, bool pass, const std::string& detail) {
    auto& t = report.tallies[name];
    t.second += 1;
    if (pass) {
      t.first += 1;
    } else {
      report.ok = false;
      report.failures.push_back(name + " " + detail);
    }
  };

  std::vector<std::future<TrialOutcome>> jobs;
  for (int i = 0; i < options.trials; ++i)
    jobs.push_back(std::async(std::launch::async, run_trial, derive_seed(options.seed, static_cast<std::uint64_t>(i)),
                              i % (options.max_q_degree + 1)));
  for (int i = 0; i < options.trials; ++i)
    for (const auto& [name, pass] : jobs[i].get().checks) tally(name, pass, "(trial " + std::to_string(i) + ")");

  for (int deg = 0; deg <= 2; ++deg) {
    PolyQ q(kZ);
    if (deg > 0) q.add_term({deg}, Rational(1));
    const std::string tag = deg == 0 ? "q = 0" : (deg == 1 ? "q = z" : "q = z^2");
    tally("gaiotto limit", gaiotto_limit_check(q).ok, "(" + tag + ")");
    tally("flat family", flat_family_check(q).ok, "(" + tag + ")");
  }
  tally("gaiotto rejects squared metric", !gaiotto_limit_check(PolyQ(kZ), {true}).ok, "");
  tally("flat family rejects 2 lambda_0", !flat_family_check(PolyQ(kZ), {Rational(2), false}).ok, "");
  tally("flat family at zeta = R = 1", flat_family_check(PolyQ(kZ), {Rational(1), true}).ok, "");
  for (int r = 2; r <= options.max_rank; ++r) tally("kostant tds", kostant_tds(r).report.ok, "(r = " + std::to_string(r) + ")");
  return report;
}

}  // namespace qcurve
