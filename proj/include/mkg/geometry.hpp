#pragma once
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "mkg/errors.hpp"
#include "mkg/jet.hpp"
#include "mkg/linalg.hpp"

namespace mkg {

// --- optical coordinates ----------------------------------------------------

struct OpticalCoords {
  double t{};
  Vec3 x{};
  double r{}, u{}, v{}, u_plus{}, v_plus{};
};

inline OpticalCoords optical_coords(double t, const Vec3& x) {
  OpticalCoords p;
  p.t = t;
  p.x = x;
  p.r = norm3(x);
  p.u = 0.5 * (t - p.r);
  p.v = 0.5 * (t + p.r);
  p.u_plus = 1.0 + std::abs(p.u);
  p.v_plus = 1.0 + std::abs(p.v);
  return p;
}

// --- null frame --------------------------------------------------------------

struct NullFrame {
  Vec4 L, Lbar, e1, e2;
};

// Deterministic tangent frame: Gram-Schmidt of the two coordinate directions
// least aligned with the radial direction, ordered so that (e1, e2, xhat) is
// right-handed.  See docs/conventions.md.
NullFrame null_frame(const Vec3& x);

// --- commutator vector fields -----------------------------------------------

enum class ZTag { T, O12, O23, O31, S, K };
inline const char* z_name(ZTag z) {
  switch (z) {
    case ZTag::T: return "T";
    case ZTag::O12: return "O12";
    case ZTag::O23: return "O23";
    case ZTag::O31: return "O31";
    case ZTag::S: return "S";
    case ZTag::K: return "K";
  }
  return "?";
}
inline constexpr std::array<ZTag, 6> Z_ALL = {ZTag::T,   ZTag::O12, ZTag::O23,
                                              ZTag::O31, ZTag::S,   ZTag::K};

struct VectorFieldZ {
  ZTag tag;
  int xi;  // discrepancy index: T -> -1, rotations and S -> 0, K -> +1
};
inline VectorFieldZ make_z(ZTag tag) {
  int xi = (tag == ZTag::T) ? -1 : (tag == ZTag::K) ? 1 : 0;
  return {tag, xi};
}

Vec4 z_field(const VectorFieldZ& Z, const OpticalCoords& p);

// formal linear combination of members of the commutator family
struct ZLinComb {
  std::vector<std::pair<ZTag, double>> terms;  // empty = zero
};
ZLinComb z_commutator(const VectorFieldZ& Z1, const VectorFieldZ& Z2);

// --- deformation tensors ------------------------------------------------------

// frame components pi(L,L), pi(L,Lbar), ..., pi(e_A, e_B)
struct DeformTensor {
  double LL{}, LLbar{}, LbarLbar{};
  std::array<double, 2> LA{}, LbarA{};
  std::array<std::array<double, 2>, 2> AB{};
};

DeformTensor deformation(const VectorFieldZ& Z, const OpticalCoords& p);
// multiplier X = r^p L, p in [0,2]
DeformTensor deformation_rpL(double p, const OpticalCoords& pt);

// --- jet-valued geometry at a point -------------------------------------------

// All coordinate scalars and frame vector fields as jets around a base point,
// ready for building differential operators.  The tangent frame uses the
// frozen-axis rule: axis selection and orientation are decided at the base
// point, so every component is analytic in a neighborhood.
struct FrameJets {
  OpticalCoords base;
  RJet t, x1, x2, x3;  // coordinate functions
  RJet r, u, v;
  RJet4 L, Lbar, e1, e2;  // frame vector fields

  explicit FrameJets(const OpticalCoords& p);

  // Z in the commutator family as a jet-valued vector field
  RJet4 z_jet(ZTag tag) const;
  RJet4 z_jet(const ZLinComb& c) const;
  // multiplier r^p L
  RJet4 rpL_jet(double p) const;
};

}  // namespace mkg
