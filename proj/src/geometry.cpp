#include "mkg/geometry.hpp"

#include <algorithm>

namespace mkg {

namespace {
// the two coordinate axes least aligned with xhat, in increasing index order,
// plus the sign making (e1, e2, xhat) right-handed
struct AxisChoice {
  int i1, i2;
  double flip;
};
AxisChoice choose_axes(const Vec3& xhat) {
  std::array<int, 3> idx = {0, 1, 2};
  std::sort(idx.begin(), idx.end(),
            [&](int a, int b) { return std::abs(xhat[a]) < std::abs(xhat[b]); });
  int i1 = std::min(idx[0], idx[1]);
  int i2 = std::max(idx[0], idx[1]);
  // provisional frame from the value-level Gram-Schmidt to decide orientation
  Vec3 a{}, b{};
  a[i1] = 1.0;
  b[i2] = 1.0;
  Vec3 e1 = sub3(a, scale3(xhat, dot3(a, xhat)));
  e1 = scale3(e1, 1.0 / norm3(e1));
  Vec3 e2 = sub3(sub3(b, scale3(xhat, dot3(b, xhat))), scale3(e1, dot3(b, e1)));
  e2 = scale3(e2, 1.0 / norm3(e2));
  double det = dot3(cross3(e1, e2), xhat);
  return {i1, i2, det >= 0.0 ? 1.0 : -1.0};
}
}  // namespace

NullFrame null_frame(const Vec3& x) {
  double r = norm3(x);
  if (r <= 0.0) throw AxisError("null_frame requires |x| > 0");
  Vec3 xhat = scale3(x, 1.0 / r);
  AxisChoice ax = choose_axes(xhat);
  Vec3 a{}, b{};
  a[ax.i1] = 1.0;
  b[ax.i2] = 1.0;
  Vec3 e1 = sub3(a, scale3(xhat, dot3(a, xhat)));
  e1 = scale3(e1, 1.0 / norm3(e1));
  Vec3 e2 = sub3(sub3(b, scale3(xhat, dot3(b, xhat))), scale3(e1, dot3(b, e1)));
  e2 = scale3(e2, ax.flip / norm3(e2));
  NullFrame f;
  f.L = {1.0, xhat[0], xhat[1], xhat[2]};
  f.Lbar = {1.0, -xhat[0], -xhat[1], -xhat[2]};
  f.e1 = {0.0, e1[0], e1[1], e1[2]};
  f.e2 = {0.0, e2[0], e2[1], e2[2]};
  return f;
}

Vec4 z_field(const VectorFieldZ& Z, const OpticalCoords& p) {
  const double t = p.t;
  const Vec3& x = p.x;
  switch (Z.tag) {
    case ZTag::T: return {1.0, 0.0, 0.0, 0.0};
    case ZTag::O12: return {0.0, -x[1], x[0], 0.0};   // x1 d2 - x2 d1
    case ZTag::O23: return {0.0, 0.0, -x[2], x[1]};   // x2 d3 - x3 d2
    case ZTag::O31: return {0.0, x[2], 0.0, -x[0]};   // x3 d1 - x1 d3
    case ZTag::S: return {t, x[0], x[1], x[2]};       // v L + u Lbar
    case ZTag::K:                                     // v^2 L + u^2 Lbar
      return {0.5 * (t * t + dot3(x, x)), t * x[0], t * x[1], t * x[2]};
  }
  return {};
}

ZLinComb z_commutator(const VectorFieldZ& Z1, const VectorFieldZ& Z2) {
  ZTag a = Z1.tag, b = Z2.tag;
  double s = 1.0;
  if (static_cast<int>(a) > static_cast<int>(b)) {
    std::swap(a, b);
    s = -1.0;
  }
  ZLinComb c;
  auto add = [&](ZTag z, double w) { c.terms.push_back({z, s * w}); };
  // [T,K] = T(v^2)L + T(u^2)Lbar = vL + uLbar = S, since T(v) = T(u) = 1/2
  if (a == ZTag::T && b == ZTag::S) add(ZTag::T, 1.0);
  else if (a == ZTag::T && b == ZTag::K) add(ZTag::S, 1.0);
  else if (a == ZTag::S && b == ZTag::K) add(ZTag::K, 1.0);
  // so(3) brackets: [O12,O23] = x1 d3 - x3 d1 = -O31, and cyclic
  else if (a == ZTag::O12 && b == ZTag::O23) add(ZTag::O31, -1.0);
  else if (a == ZTag::O23 && b == ZTag::O31) add(ZTag::O12, -1.0);
  else if (a == ZTag::O12 && b == ZTag::O31) add(ZTag::O23, 1.0);  // [O31,O12] = -O23
  return c;
}

DeformTensor deformation(const VectorFieldZ& Z, const OpticalCoords& p) {
  DeformTensor d;
  switch (Z.tag) {
    case ZTag::T:
    case ZTag::O12:
    case ZTag::O23:
    case ZTag::O31:
      return d;  // Killing: zero
    case ZTag::S:
    case ZTag::K: {
      // pi = c * m with c = 1 for S and c = t for K
      double c = (Z.tag == ZTag::S) ? 1.0 : p.t;
      d.LLbar = -2.0 * c;
      d.AB[0][0] = d.AB[1][1] = c;
      return d;
    }
  }
  return d;
}

DeformTensor deformation_rpL(double p, const OpticalCoords& pt) {
  if (!(p >= 0.0 && p <= 2.0)) throw UnsupportedMultiplier("r^p L needs p in [0,2]");
  if (pt.r <= 0.0) throw AxisError("deformation_rpL at the axis");
  double w = std::pow(pt.r, p - 1.0);
  DeformTensor d;
  d.LLbar = -p * w;
  d.LbarLbar = 2.0 * p * w;
  d.AB[0][0] = d.AB[1][1] = w;
  return d;
}

FrameJets::FrameJets(const OpticalCoords& p) : base(p) {
  t = RJet::variable(0, p.t);
  x1 = RJet::variable(1, p.x[0]);
  x2 = RJet::variable(2, p.x[1]);
  x3 = RJet::variable(3, p.x[2]);
  if (p.r <= 0.0) throw AxisError("FrameJets requires |x| > 0");
  r = sqrt(x1 * x1 + x2 * x2 + x3 * x3);
  u = (t - r) * 0.5;
  v = (t + r) * 0.5;
  RJet ir = recip(r);
  std::array<RJet, 3> xh = {x1 * ir, x2 * ir, x3 * ir};

  L = {RJet::constant(1.0), xh[0], xh[1], xh[2]};
  Lbar = {RJet::constant(1.0), -xh[0], -xh[1], -xh[2]};

  Vec3 xhat = scale3(p.x, 1.0 / p.r);
  AxisChoice ax = choose_axes(xhat);
  std::array<RJet, 3> a{}, b{};
  for (int i = 0; i < 3; ++i) {
    a[i] = RJet::constant(ax.i1 == i ? 1.0 : 0.0);
    b[i] = RJet::constant(ax.i2 == i ? 1.0 : 0.0);
  }
  auto dot = [](const std::array<RJet, 3>& u_, const std::array<RJet, 3>& v_) {
    return u_[0] * v_[0] + u_[1] * v_[1] + u_[2] * v_[2];
  };
  RJet axh = dot(a, xh);
  std::array<RJet, 3> w1 = {a[0] - axh * xh[0], a[1] - axh * xh[1], a[2] - axh * xh[2]};
  RJet n1 = recip(sqrt(dot(w1, w1)));
  std::array<RJet, 3> f1 = {w1[0] * n1, w1[1] * n1, w1[2] * n1};
  RJet bxh = dot(b, xh);
  RJet bf1 = dot(b, f1);
  std::array<RJet, 3> w2 = {b[0] - bxh * xh[0] - bf1 * f1[0], b[1] - bxh * xh[1] - bf1 * f1[1],
                            b[2] - bxh * xh[2] - bf1 * f1[2]};
  RJet n2 = recip(sqrt(dot(w2, w2))) * ax.flip;
  std::array<RJet, 3> f2 = {w2[0] * n2, w2[1] * n2, w2[2] * n2};

  e1 = {RJet{}, f1[0], f1[1], f1[2]};
  e2 = {RJet{}, f2[0], f2[1], f2[2]};
}

RJet4 FrameJets::z_jet(ZTag tag) const {
  switch (tag) {
    case ZTag::T:
      return {RJet::constant(1.0), RJet{}, RJet{}, RJet{}};
    case ZTag::O12: return {RJet{}, -x2, x1, RJet{}};
    case ZTag::O23: return {RJet{}, RJet{}, -x3, x2};
    case ZTag::O31: return {RJet{}, x3, RJet{}, -x1};
    case ZTag::S: return {t, x1, x2, x3};
    case ZTag::K: {
      RJet k0 = (t * t + x1 * x1 + x2 * x2 + x3 * x3) * 0.5;
      return {k0, t * x1, t * x2, t * x3};
    }
  }
  return {};
}

RJet4 FrameJets::z_jet(const ZLinComb& c) const {
  RJet4 out{};
  for (const auto& [tag, w] : c.terms) {
    RJet4 zj = z_jet(tag);
    for (int m = 0; m < 4; ++m) out[m] += zj[m] * w;
  }
  return out;
}

RJet4 FrameJets::rpL_jet(double p) const {
  RJet w = pow(r, p);
  return {w, w * L[1], w * L[2], w * L[3]};
}

}  // namespace mkg
