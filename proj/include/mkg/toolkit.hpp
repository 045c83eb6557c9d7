#pragma once
#include <array>
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "mkg/errors.hpp"
#include "mkg/linalg.hpp"

namespace mkg {

// --- explicit-constant analytic bounds ------------------------------------

// For f(t) <= C1 + C2 \int_t^T s^{-1} f(s) ds, returns the resulting bounds
// on f(t) and on the integral term.
struct GronwallBound {
  double bound_f;
  double bound_integral;
};
inline GronwallBound gronwall_bound(double C1, double C2, double T, double t) {
  if (!(C1 > 0.0) || !(C2 > 0.0)) throw DomainError("gronwall: C1, C2 must be positive");
  if (!(t > 0.0) || !(t <= T)) throw DomainError("gronwall: need 0 < t <= T");
  double g = (C1 / C2) * (std::pow(T / t, C2) - 1.0);
  return {C1 + g, g};
}

// For positive f with \int_{r1}^\infty f <= C r1^{-p} for all r1 >= 1 and
// q < p, returns the bound (C p / (p-q)) r1^{q-p} on \int_{r1}^\infty s^q f.
inline double decay_transfer(double C, double p, double q, double r1) {
  if (!(q < p)) throw DomainError("decay_transfer: need q < p");
  if (!(r1 >= 1.0)) throw DomainError("decay_transfer: need r1 >= 1");
  return C * p / (p - q) * std::pow(r1, q - p);
}

// --- independent differentiation oracle ------------------------------------

namespace fd_detail {
// Fornberg weights for the m-th derivative on the given offsets (times h),
// evaluated at 0.  offsets must be distinct.
inline std::vector<double> weights(int m, const std::vector<double>& offs) {
  int n = (int)offs.size() - 1;
  std::vector<std::vector<double>> c(n + 1, std::vector<double>(m + 1, 0.0));
  double c1 = 1.0;
  double c4 = offs[0];
  c[0][0] = 1.0;
  for (int i = 1; i <= n; ++i) {
    int mn = std::min(i, m);
    double c2 = 1.0;
    double c5 = c4;
    c4 = offs[i];
    for (int j = 0; j <= i - 1; ++j) {
      double c3 = offs[i] - offs[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k)
        c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n + 1);
  for (int i = 0; i <= n; ++i) w[i] = c[i][m];
  return w;
}

// symmetric offsets giving 6th-order accuracy for the m-th derivative
inline std::vector<double> offsets6(int m) {
  // m=1 -> +-3 (7pt), m=2 -> +-3 (7pt), m=3 -> +-4 (9pt), m=4 -> +-4 (9pt)
  int half = (m <= 2) ? 3 : 4;
  std::vector<double> o;
  for (int i = -half; i <= half; ++i) o.push_back((double)i);
  return o;
}
}  // namespace fd_detail

// 6th-order central differences for the mixed partial
// dted^{a0}_t d^{a1}_{x1} d^{a2}_{x2} d^{a3}_{x3} f, Richardson-extrapolated
// once (h and h/2), so the leading error is O(h^8).  F is any callable
// (t, x: Vec3) -> double or complex.
template <class F>
auto oracle_derivative(F&& f, double t, const Vec3& x, const std::array<int, 4>& ord,
                       double h = 0.08) {
  using R = decltype(f(t, x));
  if (h < 1e-10) throw StepUnderflow("oracle step too small");
  int total = ord[0] + ord[1] + ord[2] + ord[3];
  if (total > 4) throw DomainError("oracle supports derivative order <= 4");
  auto eval = [&](double hh) -> R {
    std::array<std::vector<double>, 4> offs, wts;
    for (int v = 0; v < 4; ++v) {
      if (ord[v] == 0) {
        offs[v] = {0.0};
        wts[v] = {1.0};
      } else {
        offs[v] = fd_detail::offsets6(ord[v]);
        wts[v] = fd_detail::weights(ord[v], offs[v]);
        for (auto& w : wts[v]) w /= std::pow(hh, ord[v]);
      }
    }
    R acc{};
    for (size_t i0 = 0; i0 < offs[0].size(); ++i0)
      for (size_t i1 = 0; i1 < offs[1].size(); ++i1)
        for (size_t i2 = 0; i2 < offs[2].size(); ++i2)
          for (size_t i3 = 0; i3 < offs[3].size(); ++i3) {
            double w = wts[0][i0] * wts[1][i1] * wts[2][i2] * wts[3][i3];
            if (w == 0.0) continue;
            acc += w * f(t + offs[0][i0] * hh,
                         Vec3{x[0] + offs[1][i1] * hh, x[1] + offs[2][i2] * hh,
                              x[2] + offs[3][i3] * hh});
          }
    return acc;
  };
  R d1 = eval(h), d2 = eval(h * 0.5);
  return (64.0 * d2 - d1) / 63.0;
}

// deterministic pairwise-tree reduction, used everywhere sums must not depend
// on scheduling
inline double pairwise_sum(std::vector<double> v) {
  if (v.empty()) return 0.0;
  size_t n = v.size();
  while (n > 1) {
    size_t m = (n + 1) / 2;
    for (size_t i = 0; i < n / 2; ++i) v[i] = v[2 * i] + v[2 * i + 1];
    if (n % 2) v[n / 2] = v[n - 1];
    n = m;
  }
  return v[0];
}

}  // namespace mkg
