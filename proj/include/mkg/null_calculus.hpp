#pragma once
#include <vector>

#include "mkg/fields.hpp"
#include "mkg/geometry.hpp"

namespace mkg {

// A stack of up to two commutator fields, with the bookkeeping triple
// (k0, k1, k2) counting how many have discrepancy index -1, 0, +1.
struct MultiIndexK {
  std::vector<ZTag> stack;  // outermost first; size <= 2
  int k0() const {
    int n = 0;
    for (ZTag z : stack) n += (make_z(z).xi == -1);
    return n;
  }
  int k1() const {
    int n = 0;
    for (ZTag z : stack) n += (make_z(z).xi == 0);
    return n;
  }
  int k2() const {
    int n = 0;
    for (ZTag z : stack) n += (make_z(z).xi == 1);
    return n;
  }
  int order() const { return (int)stack.size(); }
  int xi() const { return k2() - k0(); }
};

// --- jet-level tensor calculus -------------------------------------------------

// (div G)_nu = nabla^mu G_{mu nu}; consumes one jet order
RJet4 div_2form(const JetTwoForm& G);
// Lie derivative of a 2-form along a jet vector field; consumes one jet order
JetTwoForm lie_2form(const RJet4& Z, const JetTwoForm& G);
// Lie derivative of a 1-form
RJet4 lie_1form(const RJet4& Z, const RJet4& w);
// scalar derivative Z(g)
RJet z_scalar(const RJet4& Z, const RJet& g);
CJet z_scalar(const RJet4& Z, const CJet& f);

// tangential projection P(W) = sum_B m(W, e_B) e_B
RJet4 project_tangent(const FrameJets& fr, const RJet4& W);
// flat connection nabla_V W (componentwise directional derivative)
RJet4 flat_connection(const RJet4& V, const RJet4& W);

// covariant sphere Laplacian of a complex scalar:
// sum_A [ D_{e_A} D_{e_A} f  -  D_{P(nabla_{e_A} e_A)} f ]
CJet covariant_sphere_laplacian(const GaugeJets& gj, const CJet& f);

// --- operations ------------------------------------------------------------------

enum class BoxRoute { Direct, NullFrame };

// box_A f = m^{mu nu} D_mu D_nu f, either directly or through the null-frame
// identity  r box_A f = -D_{Lbar} D_L (rf) + Dslash^2 (rf) + i rho (rf)
cplx box_A(const GaugePair& gp, const OpticalCoords& p, BoxRoute route);
CJet box_A_jet(const GaugeJets& gj, const CJet& f);  // direct route, as a jet

Vec4 div_form(const GaugePair& gp, const OpticalCoords& p);             // div dA
Vec4 div_form_charge(const ChargeMoments& m, const OpticalCoords& p);   // div F[q0]

// value-level Lie derivative of F = dA along a stack of fields (outermost first)
TwoForm lie_derivative(const MultiIndexK& k, const GaugePair& gp, const OpticalCoords& p);

// modified derivative: D_Z f + (Z(r)/r) f, and its conjugation partner r^-1 D_Z(r f)
CJet modified_D(const GaugeJets& gj, ZTag z, const CJet& f);
CJet modified_D_conjugated(const GaugeJets& gj, ZTag z, const CJet& f);

struct QParts {
  cplx Q, I1, I2, I3;
};
// Q(f,G;Z) = 2i G_{mu nu} Z^nu D^mu f + i nabla^mu(Z^nu G_{mu nu}) f, plus the
// exact split Q/i = I1 - I2 - I3 with J := -div G (Maxwell-sign current)
QParts null_form_Q(const GaugeJets& gj, const JetTwoForm& G, ZTag z);
CJet null_form_Q_jet(const GaugeJets& gj, const JetTwoForm& G, const RJet4& Z,
                     const CJet& f);

// --- identity residuals (all on F = dA from the gauge pair) ---------------------

// [r^2 Div, Lie_Z] G, as a 4-covector; zero for closed G
Vec4 residual_commutator_div(ZTag z, const GaugePair& gp, const OpticalCoords& p);
// [Div, Lie_K] G - 2t Div G (the intermediate step for K)
Vec4 residual_commutator_div_K_unscaled(const GaugePair& gp, const OpticalCoords& p);

// [r^2 box_A, Dhat_Z] f - r^2 Q(f, F; Z) with f = phi
cplx residual_commutator_box(ZTag z, const GaugePair& gp, const OpticalCoords& p);
// [box_A, D_Z + Z(r)/r] f - (2 Z(r)/r) box_A f - Q(f, F; Z)
cplx residual_commutator_box_unscaled(ZTag z, const GaugePair& gp, const OpticalCoords& p);

// [Dhat_Y, [r^2 box_A, Dhat_X]] f - r^2 ( Q(f,F;[Y,X]) + Q(f, Lie_Y F; X)
//                                          - 2 F_{Y mu} F_X{}^mu f )
cplx residual_double_commutator(ZTag x, ZTag y, const GaugePair& gp,
                                const OpticalCoords& p);

// Lie derivative vs null decomposition (alpha, alphabar, rho, sigma rows)
struct LieNullResiduals {
  std::array<double, 2> alpha, alphabar;
  double rho, sigma;
};
LieNullResiduals residual_lie_null_decomp(ZTag z, const GaugePair& gp,
                                          const OpticalCoords& p);
// nablaslash_{Lbar} X_A - Lie_{Lbar} X_A - (1/r) X_A  (and the L version with -1/r)
std::array<double, 2> residual_frame_comparison(const GaugePair& gp,
                                                const OpticalCoords& p, bool along_L);

// the six null Maxwell equations for Lie_Z^k(dA), J^(k) = Lie_Z^k(r^2 J),
// J = -div dA
std::array<double, 6> residual_null_maxwell(const GaugePair& gp, const MultiIndexK& k,
                                            const OpticalCoords& p);

// second-order source assembled from the commuted wave equation, minus
// box_A Dhat_{Z1} Dhat_{Z2} phi when box_A phi = 0 is imposed by moving the force
cplx residual_commuted_source(ZTag z1, ZTag z2, const GaugePair& gp,
                              const OpticalCoords& p);

// --- residual report ---------------------------------------------------------------

struct ResidualRow {
  std::string identity;
  std::string fields;  // Z or (X,Y) label
  int point_id;
  double residual;
  double tolerance;
  bool pass;
};
// run the whole identity suite over a seeded corpus; returns all rows
std::vector<ResidualRow> residual_report(unsigned seed, int npoints, double tol);

}  // namespace mkg
