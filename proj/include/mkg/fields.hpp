#pragma once
#include <complex>
#include <string>
#include <vector>

#include "mkg/geometry.hpp"
#include "mkg/jet.hpp"
#include "mkg/linalg.hpp"

namespace mkg {

// --- analytic field family ----------------------------------------------------
//
// Finite sums of packets  c * t^{p0} x1^{p1} x2^{p2} x3^{p3}
//                           * exp(-|x-center|^2 / width^2)      (if width > 0)
//                           * exp(i (k.x + omega t)).
// Closed under the differential operators we need; all derivatives to order 4
// are produced exactly through jet arithmetic.
struct WavePacket {
  cplx coef{0.0, 0.0};
  std::array<int, 4> pows{0, 0, 0, 0};
  Vec3 center{0.0, 0.0, 0.0};
  double width{0.0};  // <= 0 disables the Gaussian envelope
  Vec3 k{0.0, 0.0, 0.0};
  double omega{0.0};
};

struct ScalarField {
  std::vector<WavePacket> terms;

  cplx operator()(double t, const Vec3& x) const;  // plain evaluation (oracle food)
  CJet eval(const FrameJets& fj) const;            // jet around fj.base
};

// A real 1-form: four components, each the real part of a packet sum.
struct RealComponent {
  ScalarField f;
  double operator()(double t, const Vec3& x) const { return f(t, x).real(); }
  RJet eval(const FrameJets& fj) const { return real(f.eval(fj)); }
};

struct GaugePair {
  std::array<RealComponent, 4> A;
  ScalarField phi;
};

std::string to_kv(const GaugePair& gp);
GaugePair gauge_pair_from_kv(const std::string& text);

// --- jets of the derived objects ------------------------------------------------

using JetTwoForm = std::array<std::array<RJet, 4>, 4>;
using CJetTwoForm = std::array<std::array<CJet, 4>, 4>;

// Everything about (A, phi) at one base point, as jets.
struct GaugeJets {
  FrameJets fr;
  std::array<RJet, 4> A;
  CJet phi;

  GaugeJets(const GaugePair& gp, const OpticalCoords& p);

  JetTwoForm curvature() const;   // F = dA
  CJet4 Dphi() const;             // D_mu phi
  std::array<RJet, 4> current() const;  // J_mu = Im(phi conj(D_mu phi))
  // D_V f for a jet vector field (f a complex scalar jet)
  CJet covariant(const RJet4& V, const CJet& f) const;
};

// --- value-level 2-forms ---------------------------------------------------------

struct TwoForm {
  std::array<std::array<double, 4>, 4> c{};  // antisymmetric components G_{mu nu}
  double operator()(const Vec4& X, const Vec4& Y) const {
    double s = 0.0;
    for (int m = 0; m < 4; ++m)
      for (int n = 0; n < 4; ++n) s += c[m][n] * X[m] * Y[n];
    return s;
  }
};

TwoForm curvature(const GaugePair& gp, const OpticalCoords& p);
Vec4 current(const GaugePair& gp, const OpticalCoords& p);  // covector J_mu
TwoForm hodge_dual(const TwoForm& G);
TwoForm value_of(const JetTwoForm& G);

// --- null decomposition -----------------------------------------------------------

struct NullDecomp {
  std::array<double, 2> alpha{}, alphabar{};
  double rho{}, sigma{};
};

NullDecomp null_decompose(const TwoForm& G, const NullFrame& fr);
TwoForm reconstruct(const NullDecomp& d, const NullFrame& fr);

// --- charge moments and the charge 2-form ------------------------------------------

struct ChargeMoments {
  double q0{};
  Vec3 dipole{};  // (1/4pi) int y Im(phi0 conj phi1)
  // traceless kernel matrix: 3*(second moment) - trace * identity, over 4pi
  std::array<std::array<double, 3>, 3> quad{};
};

// build from raw moments (1/4pi) int (1, y, y x y) Im(phi0 conj phi1) dy
ChargeMoments charge_moments(double q0, const Vec3& dipole_raw,
                             const std::array<std::array<double, 3>, 3>& second_moment_raw);

double charge_potential(const ChargeMoments& m, const Vec3& x);
RJet charge_potential_jet(const ChargeMoments& m, const FrameJets& fj);
// F[q0]_{0i} = E_i = -dV/dx_i, F[q0]_{ij} = 0, as jets (order-3 valid derivatives)
JetTwoForm charge_two_form_jets(const ChargeMoments& m, const FrameJets& fj);
TwoForm charge_two_form(const ChargeMoments& m, const OpticalCoords& p);

// F ring: subtract F[q0] only in the exterior region 1 + t <= |x|
TwoForm chargeless(const TwoForm& F, const OpticalCoords& p, const ChargeMoments& m);

}  // namespace mkg
