#pragma once
#include <array>
#include <cmath>
#include <complex>

#include "mkg/jet.hpp"

namespace mkg {

// Minkowski signature (-,+,+,+); index 0 is time.
inline constexpr std::array<double, 4> METRIC_DIAG = {-1.0, 1.0, 1.0, 1.0};

using Vec3 = std::array<double, 3>;
using Vec4 = std::array<double, 4>;
using cplx = std::complex<double>;

inline double dot3(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline double norm3(const Vec3& a) { return std::sqrt(dot3(a, a)); }
inline Vec3 cross3(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline Vec3 scale3(const Vec3& a, double s) { return {a[0] * s, a[1] * s, a[2] * s}; }
inline Vec3 sub3(const Vec3& a, const Vec3& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

// m(X,Y) with signature (-,+,+,+)
inline double minkowski(const Vec4& a, const Vec4& b) {
  return -a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

// Jet-valued four-vectors and tensors: the building blocks for pointwise
// differential operators.
using RJet4 = std::array<RJet, 4>;
using CJet4 = std::array<CJet, 4>;
template <class T>
using JetMat4 = std::array<std::array<Jet<T>, 4>, 4>;
using RJetMat4 = JetMat4<double>;

template <class T>
inline Jet<T> minkowski(const std::array<Jet<T>, 4>& a, const std::array<Jet<T>, 4>& b) {
  Jet<T> r = a[1] * b[1];
  r += a[2] * b[2];
  r += a[3] * b[3];
  r -= a[0] * b[0];
  return r;
}
inline CJet minkowski(const RJet4& a, const CJet4& b) {
  CJet r = to_complex(a[1]) * b[1];
  r += to_complex(a[2]) * b[2];
  r += to_complex(a[3]) * b[3];
  r -= to_complex(a[0]) * b[0];
  return r;
}

// raise a covector index with the inverse Minkowski metric
template <class T>
inline std::array<Jet<T>, 4> raise(const std::array<Jet<T>, 4>& w) {
  return {-w[0], w[1], w[2], w[3]};
}
inline Vec4 raise(const Vec4& w) { return {-w[0], w[1], w[2], w[3]}; }

// totally antisymmetric symbol with epsilon_{0123} = +1 (orientation choice
// recorded in docs/conventions.md)
inline double levi_civita(int a, int b, int c, int d) {
  int p[4] = {a, b, c, d};
  double sign = 1.0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      if (p[i] == p[j]) return 0.0;
      if (p[i] > p[j]) {
        std::swap(p[i], p[j]);
        sign = -sign;
      }
    }
  return sign;
}

}  // namespace mkg
