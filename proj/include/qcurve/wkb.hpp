#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qcurve/ratfunc.hpp"
#include "qcurve/rational.hpp"

namespace qcurve {

/// x(t), z(t), dx/dt and the blow-up coordinates u(t), w1(t), all in the variable "t".
RatFuncQ x_of_t();
RatFuncQ z_of_t();
RatFuncQ dx_dt();
RatFuncQ u_of_t();
RatFuncQ w1_of_t();

/// d/dx of a function of t, through the chain rule.
RatFuncQ d_dx(const RatFuncQ& f);

/// F_{g,n}(t,...,t). The unstable levels (0,1) and (0,2) contain logarithms,
/// so only their x-derivative is rational; `value` is empty for them.
struct DiagonalLevel {
  std::optional<RatFuncQ> value;
  RatFuncQ dx;
};

/// Throws DependencyError when F_{g,n} is undefined or beyond the size budget.
DiagonalLevel principal_specialization(int g, int n);

struct WkbOptions {
  /// Multiplies F_{1,1} (fault injection when != 1).
  Rational f11_scale = 1;
  /// Added to every stable S_m before differentiating.
  Rational constant_shift = 0;
};

/// S_m' = d/dx sum_{2g-2+n=m-1} F_{g,n}(t,...,t)/n! for m = 0..max_m.
std::vector<RatFuncQ> wkb_derivatives(int max_m, const WkbOptions& options = {});

/// Coefficients of hbar^0..hbar^N in hbar^2 (S'' + S'^2) + hbar x S' + 1,
/// S = sum_m hbar^{m-1} S_m. Each is expected to vanish identically.
std::vector<RatFuncQ> wkb_residual(int max_order, const WkbOptions& options = {});

struct WkbOrderStatus {
  int order = 0;
  bool zero = false;
  int num_degree = -1;
  int den_degree = -1;
};

struct WkbReport {
  bool ok = true;
  std::vector<WkbOrderStatus> orders;
};

WkbReport wkb_verify(int max_order, const WkbOptions& options = {});

struct IdentityResult {
  std::string name;
  bool pass = false;
};

struct SpectralReport {
  bool ok = true;
  std::vector<IdentityResult> identities;
};

/// z^2 - x z + 1 = 0 and u^2 + (w1 - 1/2)^2 = 1/4 as identities in t.
SpectralReport spectral_param_check();

}  // namespace qcurve
