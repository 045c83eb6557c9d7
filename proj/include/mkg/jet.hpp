#pragma once
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <type_traits>
#include <vector>

namespace mkg {

// A "jet" is a truncated Taylor expansion, in the four coordinates
// (t, x1, x2, x3), of a smooth function around a base point, kept to total
// degree 4.  Jet arithmetic propagates exact partial derivatives through
// arbitrary compositions, which is the workhorse behind every pointwise
// identity check: four derivatives are exactly the depth required by the
// deepest formula (the double commutator needs D of box of D).
//
// Derivatives are extracted by coefficient shifts (see d()).  Each shift
// consumes one order: after k shifts only coefficients of total degree
// <= 4-k are meaningful.  Callers are responsible for staying within the
// depth budget; all operators in this codebase need at most 4.
inline constexpr int JET_ORDER = 4;
inline constexpr int JET_VARS = 4;
inline constexpr int JET_TERMS = 70;  // #{multi-indices |a|<=4 in 4 vars} = C(8,4)

namespace jet_detail {

struct Tables {
  std::array<std::array<std::uint8_t, JET_VARS>, JET_TERMS> exps{};
  std::array<std::int16_t, 5 * 5 * 5 * 5> lookup{};  // packed exps -> index or -1
  std::array<std::uint8_t, JET_TERMS> deg{};
  std::vector<std::array<std::int16_t, 3>> mul;  // (i, j, k): term_i * term_j -> term_k
  std::array<double, JET_TERMS> factorial_prod{};

  static int pack(int a0, int a1, int a2, int a3) {
    return ((a0 * 5 + a1) * 5 + a2) * 5 + a3;
  }

  Tables() {
    for (auto& v : lookup) v = -1;
    int n = 0;
    // enumerate by total degree so low-order coefficients come first
    for (int d = 0; d <= JET_ORDER; ++d)
      for (int a0 = 0; a0 <= d; ++a0)
        for (int a1 = 0; a1 + a0 <= d; ++a1)
          for (int a2 = 0; a2 + a1 + a0 <= d; ++a2) {
            int a3 = d - a0 - a1 - a2;
            exps[n] = {(std::uint8_t)a0, (std::uint8_t)a1, (std::uint8_t)a2,
                       (std::uint8_t)a3};
            deg[n] = (std::uint8_t)d;
            lookup[pack(a0, a1, a2, a3)] = (std::int16_t)n;
            auto f = [](int k) { return k <= 1 ? 1.0 : k == 2 ? 2.0 : k == 3 ? 6.0 : 24.0; };
            factorial_prod[n] = f(a0) * f(a1) * f(a2) * f(a3);
            ++n;
          }
    for (int i = 0; i < JET_TERMS; ++i)
      for (int j = 0; j < JET_TERMS; ++j) {
        if (deg[i] + deg[j] > JET_ORDER) continue;
        int k = lookup[pack(exps[i][0] + exps[j][0], exps[i][1] + exps[j][1],
                            exps[i][2] + exps[j][2], exps[i][3] + exps[j][3])];
        mul.push_back({(std::int16_t)i, (std::int16_t)j, (std::int16_t)k});
      }
  }
};

inline const Tables& tables() {
  static const Tables t;
  return t;
}

inline int index_of(int a0, int a1, int a2, int a3) {
  return tables().lookup[Tables::pack(a0, a1, a2, a3)];
}

}  // namespace jet_detail

template <class T>
struct Jet {
  std::array<T, JET_TERMS> c{};

  static Jet constant(const T& v) {
    Jet j;
    j.c[0] = v;
    return j;
  }
  // the coordinate function (var) with value x0 at the base point
  static Jet variable(int var, double x0) {
    Jet j;
    j.c[0] = T(x0);
    j.c[jet_detail::index_of(var == 0, var == 1, var == 2, var == 3)] = T(1.0);
    return j;
  }

  T value() const { return c[0]; }

  // exact partial derivative value d^{a0+a1+a2+a3} f / dt^{a0} dx^{a1}...
  T partial(int a0, int a1, int a2, int a3) const {
    int k = jet_detail::index_of(a0, a1, a2, a3);
    return c[k] * T(jet_detail::tables().factorial_prod[k]);
  }

  Jet& operator+=(const Jet& o) {
    for (int i = 0; i < JET_TERMS; ++i) c[i] += o.c[i];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (int i = 0; i < JET_TERMS; ++i) c[i] -= o.c[i];
    return *this;
  }
  Jet operator-() const {
    Jet r;
    for (int i = 0; i < JET_TERMS; ++i) r.c[i] = -c[i];
    return r;
  }
};

using RJet = Jet<double>;
using CJet = Jet<std::complex<double>>;

template <class A, class B>
using jet_common_t = decltype(std::declval<A>() * std::declval<B>());

template <class A, class B>
inline Jet<jet_common_t<A, B>> operator+(const Jet<A>& a, const Jet<B>& b) {
  Jet<jet_common_t<A, B>> r;
  for (int i = 0; i < JET_TERMS; ++i) r.c[i] = a.c[i] + b.c[i];
  return r;
}
template <class A, class B>
inline Jet<jet_common_t<A, B>> operator-(const Jet<A>& a, const Jet<B>& b) {
  Jet<jet_common_t<A, B>> r;
  for (int i = 0; i < JET_TERMS; ++i) r.c[i] = a.c[i] - b.c[i];
  return r;
}
template <class A, class B>
inline Jet<jet_common_t<A, B>> operator*(const Jet<A>& a, const Jet<B>& b) {
  Jet<jet_common_t<A, B>> r;
  for (const auto& m : jet_detail::tables().mul) r.c[m[2]] += a.c[m[0]] * b.c[m[1]];
  return r;
}
template <class A, class S>
inline Jet<jet_common_t<A, S>> operator*(const Jet<A>& a, const S& s) {
  Jet<jet_common_t<A, S>> r;
  for (int i = 0; i < JET_TERMS; ++i) r.c[i] = a.c[i] * s;
  return r;
}
template <class A, class S>
inline Jet<jet_common_t<S, A>> operator*(const S& s, const Jet<A>& a) {
  return a * s;
}
template <class A, class S>
inline auto operator+(const Jet<A>& a, const S& s) {
  Jet<jet_common_t<A, S>> r;
  for (int i = 0; i < JET_TERMS; ++i) r.c[i] = jet_common_t<A, S>(a.c[i]);
  r.c[0] += s;
  return r;
}
template <class A, class S>
inline auto operator+(const S& s, const Jet<A>& a) {
  return a + s;
}
template <class A, class S>
inline auto operator-(const Jet<A>& a, const S& s) {
  return a + (-s);
}
template <class A, class S>
inline auto operator-(const S& s, const Jet<A>& a) {
  return (-a) + s;
}

// partial derivative as a jet: one order of validity is consumed
template <class T>
inline Jet<T> d(const Jet<T>& a, int var) {
  const auto& tb = jet_detail::tables();
  Jet<T> r;
  for (int i = 0; i < JET_TERMS; ++i) {
    if (tb.deg[i] >= JET_ORDER) continue;  // shifted-in top order unknown, left 0
    auto e = tb.exps[i];
    e[var]++;
    int src = jet_detail::index_of(e[0], e[1], e[2], e[3]);
    r.c[i] = a.c[src] * double(e[var]);
  }
  return r;
}

// compose a univariate analytic function with a jet: derivs[k] = g^{(k)}(a.value())
template <class T, class G>
inline Jet<jet_common_t<T, G>> analytic(const Jet<T>& a, const std::array<G, 5>& derivs) {
  using R = jet_common_t<T, G>;
  Jet<T> w = a;
  w.c[0] = T(0);
  Jet<R> r = Jet<R>::constant(R(derivs[0]));
  Jet<T> wk = w;
  double kfact = 1.0;
  for (int k = 1; k <= JET_ORDER; ++k) {
    kfact *= k;
    r += wk * (derivs[k] / kfact);
    if (k < JET_ORDER) wk = wk * w;
  }
  return r;
}

inline RJet sqrt(const RJet& a) {
  double x = a.value();
  double s = std::sqrt(x);
  return analytic(a, std::array<double, 5>{s, 0.5 / s, -0.25 / (s * x), 0.375 / (s * x * x),
                                           -0.9375 / (s * x * x * x)});
}
template <class T>
inline Jet<T> recip(const Jet<T>& a) {
  T x = a.value();
  T ix = T(1.0) / x;
  return analytic(a, std::array<T, 5>{ix, -ix * ix, 2.0 * ix * ix * ix,
                                      -6.0 * ix * ix * ix * ix,
                                      24.0 * ix * ix * ix * ix * ix});
}
template <class A, class B>
inline auto operator/(const Jet<A>& a, const Jet<B>& b) {
  return a * recip(b);
}
template <class A, class S>
inline auto operator/(const Jet<A>& a, const S& s) {
  return a * (1.0 / s);
}
template <class T>
inline Jet<T> exp(const Jet<T>& a) {
  T e = std::exp(a.value());
  return analytic(a, std::array<T, 5>{e, e, e, e, e});
}
inline RJet sin(const RJet& a) {
  double s = std::sin(a.value()), co = std::cos(a.value());
  return analytic(a, std::array<double, 5>{s, co, -s, -co, s});
}
inline RJet cos(const RJet& a) {
  double s = std::sin(a.value()), co = std::cos(a.value());
  return analytic(a, std::array<double, 5>{co, -s, -co, s, co});
}
// real exponent power of a positive-valued jet
inline RJet pow(const RJet& a, double p) {
  double x = a.value();
  std::array<double, 5> dv;
  double coef = 1.0;
  for (int k = 0; k <= 4; ++k) {
    dv[k] = coef * std::pow(x, p - k);
    coef *= (p - k);
  }
  return analytic(a, dv);
}
template <class T>
inline Jet<T> ipow(const Jet<T>& a, int n) {
  Jet<T> r = Jet<T>::constant(T(1.0));
  for (int k = 0; k < n; ++k) r = r * a;
  return r;
}

inline CJet to_complex(const RJet& a) {
  CJet r;
  for (int i = 0; i < JET_TERMS; ++i) r.c[i] = std::complex<double>(a.c[i], 0.0);
  return r;
}
inline CJet operator*(const RJet& a, std::complex<double> s) { return to_complex(a) * s; }
inline RJet real(const CJet& a) {
  RJet r;
  for (int i = 0; i < JET_TERMS; ++i) r.c[i] = a.c[i].real();
  return r;
}
inline RJet imag(const CJet& a) {
  RJet r;
  for (int i = 0; i < JET_TERMS; ++i) r.c[i] = a.c[i].imag();
  return r;
}
inline CJet conj(const CJet& a) {
  CJet r;
  for (int i = 0; i < JET_TERMS; ++i) r.c[i] = std::conj(a.c[i]);
  return r;
}

}  // namespace mkg
