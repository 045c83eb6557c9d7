#include "mkg/null_calculus.hpp"

#include <cmath>

#include "mkg/corpus.hpp"

namespace mkg {

// --- jet-level tensor calculus ----------------------------------------------------

RJet4 div_2form(const JetTwoForm& G) {
  RJet4 out{};
  for (int n = 0; n < 4; ++n)
    for (int m = 0; m < 4; ++m) out[n] += METRIC_DIAG[m] * d(G[m][n], m);
  return out;
}

JetTwoForm lie_2form(const RJet4& Z, const JetTwoForm& G) {
  JetTwoForm out{};
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) {
      RJet acc{};
      for (int a = 0; a < 4; ++a)
        acc += Z[a] * d(G[m][n], a) + d(Z[a], m) * G[a][n] + d(Z[a], n) * G[m][a];
      out[m][n] = acc;
    }
  return out;
}

RJet4 lie_1form(const RJet4& Z, const RJet4& w) {
  RJet4 out{};
  for (int n = 0; n < 4; ++n) {
    RJet acc{};
    for (int a = 0; a < 4; ++a) acc += Z[a] * d(w[n], a) + d(Z[a], n) * w[a];
    out[n] = acc;
  }
  return out;
}

RJet z_scalar(const RJet4& Z, const RJet& g) {
  RJet acc{};
  for (int a = 0; a < 4; ++a) acc += Z[a] * d(g, a);
  return acc;
}
CJet z_scalar(const RJet4& Z, const CJet& f) {
  CJet acc{};
  for (int a = 0; a < 4; ++a) acc += to_complex(Z[a]) * d(f, a);
  return acc;
}

RJet4 project_tangent(const FrameJets& fr, const RJet4& W) {
  RJet c1 = minkowski(W, fr.e1), c2 = minkowski(W, fr.e2);
  RJet4 out{};
  for (int m = 0; m < 4; ++m) out[m] = c1 * fr.e1[m] + c2 * fr.e2[m];
  return out;
}

RJet4 flat_connection(const RJet4& V, const RJet4& W) {
  RJet4 out{};
  for (int m = 0; m < 4; ++m) {
    RJet acc{};
    for (int a = 0; a < 4; ++a) acc += V[a] * d(W[m], a);
    out[m] = acc;
  }
  return out;
}

CJet covariant_sphere_laplacian(const GaugeJets& gj, const CJet& f) {
  const FrameJets& fr = gj.fr;
  CJet acc{};
  const RJet4* eA[2] = {&fr.e1, &fr.e2};
  for (int A = 0; A < 2; ++A) {
    CJet first = gj.covariant(*eA[A], f);
    acc += gj.covariant(*eA[A], first);
    RJet4 conn = project_tangent(fr, flat_connection(*eA[A], *eA[A]));
    acc -= gj.covariant(conn, f);
  }
  return acc;
}

// --- box_A -----------------------------------------------------------------------

CJet box_A_jet(const GaugeJets& gj, const CJet& f) {
  CJet acc{};
  for (int m = 0; m < 4; ++m) {
    CJet Dm = d(f, m) + to_complex(gj.A[m]) * (cplx(0, 1) * f);
    CJet DmDm = d(Dm, m) + to_complex(gj.A[m]) * (cplx(0, 1) * Dm);
    acc += METRIC_DIAG[m] * DmDm;
  }
  return acc;
}

namespace {
RJet rho_jet(const GaugeJets& gj, const JetTwoForm& F) {
  RJet acc{};
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) acc += gj.fr.Lbar[m] * gj.fr.L[n] * F[m][n];
  return acc * 0.5;
}
}  // namespace

cplx box_A(const GaugePair& gp, const OpticalCoords& p, BoxRoute route) {
  if (p.r <= 0.0) throw AxisError("box_A at the axis");
  GaugeJets gj(gp, p);
  if (route == BoxRoute::Direct) return box_A_jet(gj, gj.phi).value();
  CJet rf = to_complex(gj.fr.r) * gj.phi;
  CJet DLrf = gj.covariant(gj.fr.L, rf);
  CJet DLbDLrf = gj.covariant(gj.fr.Lbar, DLrf);
  CJet lap = covariant_sphere_laplacian(gj, rf);
  RJet rho = rho_jet(gj, gj.curvature());
  CJet rbox = -DLbDLrf + lap + to_complex(rho) * (cplx(0, 1) * rf);
  return rbox.value() / p.r;
}

// --- div / lie, value level --------------------------------------------------------

Vec4 div_form(const GaugePair& gp, const OpticalCoords& p) {
  GaugeJets gj(gp, p);
  RJet4 dv = div_2form(gj.curvature());
  return {dv[0].value(), dv[1].value(), dv[2].value(), dv[3].value()};
}

Vec4 div_form_charge(const ChargeMoments& m, const OpticalCoords& p) {
  if (p.r <= 0.0) throw AxisError("div_form_charge at the axis");
  FrameJets fj(p);
  RJet4 dv = div_2form(charge_two_form_jets(m, fj));
  return {dv[0].value(), dv[1].value(), dv[2].value(), dv[3].value()};
}

TwoForm lie_derivative(const MultiIndexK& k, const GaugePair& gp, const OpticalCoords& p) {
  if (k.order() > 2) throw DomainError("lie_derivative supports at most two fields");
  GaugeJets gj(gp, p);
  JetTwoForm G = gj.curvature();
  for (auto it = k.stack.rbegin(); it != k.stack.rend(); ++it)
    G = lie_2form(gj.fr.z_jet(*it), G);
  return value_of(G);
}

// --- modified derivative -----------------------------------------------------------

namespace {
CJet modified_D_jet(const GaugeJets& gj, const RJet4& Z, const CJet& f) {
  RJet Zr = z_scalar(Z, gj.fr.r);
  return gj.covariant(Z, f) + to_complex(Zr * recip(gj.fr.r)) * f;
}
}  // namespace

CJet modified_D(const GaugeJets& gj, ZTag z, const CJet& f) {
  return modified_D_jet(gj, gj.fr.z_jet(z), f);
}

CJet modified_D_conjugated(const GaugeJets& gj, ZTag z, const CJet& f) {
  CJet rf = to_complex(gj.fr.r) * f;
  return to_complex(recip(gj.fr.r)) * gj.covariant(gj.fr.z_jet(z), rf);
}

// --- null form Q -------------------------------------------------------------------

CJet null_form_Q_jet(const GaugeJets& gj, const JetTwoForm& G, const RJet4& Z,
                     const CJet& f) {
  CJet acc{};
  // 2i G_{mu nu} Z^nu D^mu f
  for (int m = 0; m < 4; ++m) {
    RJet GZ{};
    for (int n = 0; n < 4; ++n) GZ += G[m][n] * Z[n];
    CJet Dm = d(f, m) + to_complex(gj.A[m]) * (cplx(0, 1) * f);
    acc += METRIC_DIAG[m] * (to_complex(GZ) * (cplx(0, 2) * Dm));
  }
  // i nabla^mu (Z^nu G_{mu nu}) f
  RJet divZG{};
  for (int m = 0; m < 4; ++m) {
    RJet w{};
    for (int n = 0; n < 4; ++n) w += Z[n] * G[m][n];
    divZG += METRIC_DIAG[m] * d(w, m);
  }
  acc += to_complex(divZG) * (cplx(0, 1) * f);
  return acc;
}

QParts null_form_Q(const GaugeJets& gj, const JetTwoForm& G, ZTag z) {
  const FrameJets& fr = gj.fr;
  RJet4 Z = fr.z_jet(z);
  const CJet& f = gj.phi;
  QParts out;
  out.Q = null_form_Q_jet(gj, G, Z, f).value();

  CJet rf = to_complex(fr.r) * f;
  RJet ir = recip(fr.r);
  CJet I1{};
  for (int m = 0; m < 4; ++m) {
    RJet GZ{};
    for (int n = 0; n < 4; ++n) GZ += G[m][n] * Z[n];
    CJet Dmrf = d(rf, m) + to_complex(gj.A[m]) * (cplx(0, 1) * rf);
    I1 += METRIC_DIAG[m] * (to_complex(GZ * ir) * (2.0 * Dmrf));
  }
  out.I1 = I1.value();

  RJet4 J = div_2form(G);  // Maxwell current is -div G
  RJet ZJ{};
  for (int n = 0; n < 4; ++n) ZJ += Z[n] * (-J[n]);
  out.I2 = (to_complex(ZJ) * f).value();

  // I3 = ( 2 r^-1 nabla^mu r G_{mu nu} Z^nu  -  nabla^mu Z^nu G_{mu nu} ) f
  RJet gradZG{};
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) gradZG += METRIC_DIAG[m] * d(Z[n], m) * G[m][n];
  RJet radial{};
  for (int m = 0; m < 4; ++m) {
    RJet GZ{};
    for (int n = 0; n < 4; ++n) GZ += G[m][n] * Z[n];
    radial += METRIC_DIAG[m] * d(fr.r, m) * GZ;
  }
  out.I3 = (to_complex(2.0 * ir * radial - gradZG) * f).value();
  return out;
}

// --- commutator residuals ------------------------------------------------------------

Vec4 residual_commutator_div(ZTag z, const GaugePair& gp, const OpticalCoords& p) {
  GaugeJets gj(gp, p);
  const FrameJets& fr = gj.fr;
  RJet4 Z = fr.z_jet(z);
  JetTwoForm G = gj.curvature();
  RJet r2 = fr.r * fr.r;
  // r^2 Div (Lie_Z G)
  RJet4 lhs = div_2form(lie_2form(Z, G));
  for (int n = 0; n < 4; ++n) lhs[n] = r2 * lhs[n];
  // Lie_Z (r^2 Div G)
  RJet4 dv = div_2form(G);
  for (int n = 0; n < 4; ++n) dv[n] = r2 * dv[n];
  RJet4 rhs = lie_1form(Z, dv);
  return {lhs[0].value() - rhs[0].value(), lhs[1].value() - rhs[1].value(),
          lhs[2].value() - rhs[2].value(), lhs[3].value() - rhs[3].value()};
}

Vec4 residual_commutator_div_K_unscaled(const GaugePair& gp, const OpticalCoords& p) {
  GaugeJets gj(gp, p);
  const FrameJets& fr = gj.fr;
  RJet4 K = fr.z_jet(ZTag::K);
  JetTwoForm G = gj.curvature();
  RJet4 lhs = div_2form(lie_2form(K, G));
  RJet4 rhs = lie_1form(K, div_2form(G));
  RJet4 extra = div_2form(G);
  Vec4 out{};
  for (int n = 0; n < 4; ++n)
    out[n] = lhs[n].value() - rhs[n].value() - 2.0 * p.t * extra[n].value();
  return out;
}

cplx residual_commutator_box(ZTag z, const GaugePair& gp, const OpticalCoords& p) {
  if (p.r <= 0.0) throw AxisError("residual_commutator_box at the axis");
  GaugeJets gj(gp, p);
  const FrameJets& fr = gj.fr;
  RJet4 Z = fr.z_jet(z);
  RJet r2 = fr.r * fr.r;
  const CJet& f = gj.phi;
  CJet lhs = box_A_jet(gj, modified_D_jet(gj, Z, f)) * r2 -
             modified_D_jet(gj, Z, box_A_jet(gj, f) * r2);
  JetTwoForm F = gj.curvature();
  CJet rhs = null_form_Q_jet(gj, F, Z, f) * r2;
  return lhs.value() - rhs.value();
}

cplx residual_commutator_box_unscaled(ZTag z, const GaugePair& gp,
                                      const OpticalCoords& p) {
  if (p.r <= 0.0) throw AxisError("residual_commutator_box at the axis");
  GaugeJets gj(gp, p);
  const FrameJets& fr = gj.fr;
  RJet4 Z = fr.z_jet(z);
  const CJet& f = gj.phi;
  RJet Zr_over_r = z_scalar(Z, fr.r) * recip(fr.r);
  CJet box_f = box_A_jet(gj, f);
  CJet lhs = box_A_jet(gj, modified_D_jet(gj, Z, f)) -
             modified_D_jet(gj, Z, box_f);
  JetTwoForm F = gj.curvature();
  CJet rhs = to_complex(2.0 * Zr_over_r) * box_f + null_form_Q_jet(gj, F, Z, f);
  return lhs.value() - rhs.value();
}

cplx residual_double_commutator(ZTag x, ZTag y, const GaugePair& gp,
                                const OpticalCoords& p) {
  if (p.r <= 0.0) throw AxisError("residual_double_commutator at the axis");
  GaugeJets gj(gp, p);
  const FrameJets& fr = gj.fr;
  RJet4 X = fr.z_jet(x), Y = fr.z_jet(y);
  RJet r2 = fr.r * fr.r;
  const CJet& f = gj.phi;

  auto inner = [&](const CJet& g) {
    // [r^2 box_A, Dhat_X] g
    return box_A_jet(gj, modified_D_jet(gj, X, g)) * r2 -
           modified_D_jet(gj, X, box_A_jet(gj, g) * r2);
  };
  CJet lhs = modified_D_jet(gj, Y, inner(f)) - inner(modified_D_jet(gj, Y, f));

  JetTwoForm F = gj.curvature();
  // [Y, X] within the family
  ZLinComb yx = z_commutator(make_z(y), make_z(x));
  CJet q_bracket{};
  if (!yx.terms.empty()) q_bracket = null_form_Q_jet(gj, F, fr.z_jet(yx), f);
  CJet q_lie = null_form_Q_jet(gj, lie_2form(Y, F), X, f);
  // F_{Y mu} F_X{}^mu
  RJet fyfx{};
  for (int m = 0; m < 4; ++m) {
    RJet FY{}, FX{};
    for (int a = 0; a < 4; ++a) {
      FY += Y[a] * F[a][m];
      FX += X[a] * F[a][m];
    }
    fyfx += METRIC_DIAG[m] * FY * FX;
  }
  // with F_{Z mu} := Z^a F_{a mu}, the quadratic term enters with +2
  CJet rhs = (q_bracket + q_lie + to_complex(fyfx) * (2.0 * f)) * r2;
  return lhs.value() - rhs.value();
}

cplx residual_commuted_source(ZTag z1, ZTag z2, const GaugePair& gp,
                              const OpticalCoords& p) {
  if (p.r <= 0.0) throw AxisError("residual_commuted_source at the axis");
  GaugeJets gj(gp, p);
  const FrameJets& fr = gj.fr;
  RJet4 Z1 = fr.z_jet(z1), Z2 = fr.z_jet(z2);
  RJet r2 = fr.r * fr.r;
  const CJet& phi = gj.phi;
  JetTwoForm F = gj.curvature();

  // N = Q(Dhat_{Z1} phi, F; Z2) + Q(Dhat_{Z2} phi, F; Z1) + Q(phi, F; [Z1,Z2])
  //     + Q(phi, Lie_{Z1} F; Z2) - 2 F_{Z1 mu} F_{Z2}{}^mu phi
  CJet N = null_form_Q_jet(gj, F, Z2, modified_D_jet(gj, Z1, phi)) +
           null_form_Q_jet(gj, F, Z1, modified_D_jet(gj, Z2, phi));
  ZLinComb br = z_commutator(make_z(z1), make_z(z2));
  if (!br.terms.empty()) N += null_form_Q_jet(gj, F, fr.z_jet(br), phi);
  N += null_form_Q_jet(gj, lie_2form(Z1, F), Z2, phi);
  RJet f12{};
  for (int m = 0; m < 4; ++m) {
    RJet F1{}, F2{};
    for (int a = 0; a < 4; ++a) {
      F1 += Z1[a] * F[a][m];
      F2 += Z2[a] * F[a][m];
    }
    f12 += METRIC_DIAG[m] * F1 * F2;
  }
  N += to_complex(f12) * (2.0 * phi);

  // impose box_A phi = 0 by moving the force: box_A phi^(2) for the forced field
  // equals N + r^-2 Dhat_{Z1} Dhat_{Z2} (r^2 box_A phi)
  CJet phi2 = modified_D_jet(gj, Z1, modified_D_jet(gj, Z2, phi));
  CJet force = modified_D_jet(
      gj, Z1, modified_D_jet(gj, Z2, box_A_jet(gj, phi) * r2));
  CJet lhs = box_A_jet(gj, phi2) * r2;
  CJet rhs = N * r2 + force;
  return lhs.value() - rhs.value();
}

// --- Lie derivative vs null decomposition -------------------------------------------

LieNullResiduals residual_lie_null_decomp(ZTag z, const GaugePair& gp,
                                          const OpticalCoords& p) {
  if (p.r <= 0.0) throw AxisError("residual_lie_null_decomp at the axis");
  GaugeJets gj(gp, p);
  const FrameJets& fr = gj.fr;
  RJet4 Z = fr.z_jet(z);
  JetTwoForm G = gj.curvature();
  JetTwoForm LG = lie_2form(Z, G);
  NullFrame f = null_frame(p.x);

  auto contract2 = [](const JetTwoForm& T, const RJet4& X, const RJet4& Y) {
    RJet acc{};
    for (int m = 0; m < 4; ++m)
      for (int n = 0; n < 4; ++n) acc += X[m] * Y[n] * T[m][n];
    return acc;
  };
  // corrections for the frozen-axis frame:
  //   S:  alpha -> -alpha,   alphabar -> -alphabar,   rho -> -2 rho,  sigma -> -2 sigma
  //   K:  alpha -> -2v alpha, alphabar -> -2u alphabar, rho -> -2t rho, sigma -> -2t sigma
  double ca = 0, cab = 0, cr = 0, cs = 0;
  if (z == ZTag::S) {
    ca = cab = -1.0;
    cr = cs = -2.0;
  } else if (z == ZTag::K) {
    ca = -2.0 * p.v;
    cab = -2.0 * p.u;
    cr = cs = -2.0 * p.t;
  }

  LieNullResiduals out{};
  // alpha rows: Lie_Z of the covector G(L, .) contracted with e_A
  RJet4 omega{}, omegab{};
  for (int n = 0; n < 4; ++n) {
    for (int m = 0; m < 4; ++m) {
      omega[n] += fr.L[m] * G[m][n];
      omegab[n] += fr.Lbar[m] * G[m][n];
    }
  }
  RJet4 Lo = lie_1form(Z, omega), Lob = lie_1form(Z, omegab);
  const RJet4* eA[2] = {&fr.e1, &fr.e2};
  for (int A = 0; A < 2; ++A) {
    double lhs = 0, lhsb = 0;
    for (int n = 0; n < 4; ++n) {
      lhs += Lo[n].value() * (*eA[A])[n].value();
      lhsb += Lob[n].value() * (*eA[A])[n].value();
    }
    double a_LG = contract2(LG, fr.L, *eA[A]).value();
    double ab_LG = contract2(LG, fr.Lbar, *eA[A]).value();
    double a_G = contract2(G, fr.L, *eA[A]).value();
    double ab_G = contract2(G, fr.Lbar, *eA[A]).value();
    out.alpha[A] = lhs - (a_LG + ca * a_G);
    out.alphabar[A] = lhsb - (ab_LG + cab * ab_G);
  }
  // rho, sigma rows: plain scalar derivatives along Z
  RJet rho = contract2(G, fr.Lbar, fr.L) * 0.5;
  RJet sig = contract2(G, fr.e1, fr.e2);
  double rho_LG = (contract2(LG, fr.Lbar, fr.L) * 0.5).value();
  double sig_LG = contract2(LG, fr.e1, fr.e2).value();
  out.rho = z_scalar(Z, rho).value() - (rho_LG + cr * rho.value());
  out.sigma = z_scalar(Z, sig).value() - (sig_LG + cs * sig.value());
  (void)f;
  return out;
}

std::array<double, 2> residual_frame_comparison(const GaugePair& gp,
                                                const OpticalCoords& p, bool along_L) {
  GaugeJets gj(gp, p);
  const FrameJets& fr = gj.fr;
  JetTwoForm G = gj.curvature();
  // X: the tangential covector alpha of G, extended by the frame fields
  RJet4 X{};
  const RJet4* eA[2] = {&fr.e1, &fr.e2};
  for (int A = 0; A < 2; ++A) {
    RJet comp{};
    for (int m = 0; m < 4; ++m)
      for (int n = 0; n < 4; ++n) comp += fr.L[m] * G[m][n] * (*eA[A])[n];
    for (int n = 0; n < 4; ++n) X[n] += comp * (*eA[A])[n];
  }
  const RJet4& V = along_L ? fr.L : fr.Lbar;
  double sign = along_L ? -1.0 : 1.0;
  RJet4 LX = lie_1form(V, X);
  std::array<double, 2> out{};
  for (int A = 0; A < 2; ++A) {
    // nablaslash_V X (e_A) = V(X(e_A)) - X(P nabla_V e_A)
    RJet XeA{};
    for (int n = 0; n < 4; ++n) XeA += X[n] * (*eA[A])[n];
    RJet nab = z_scalar(V, XeA);
    RJet4 PV = project_tangent(fr, flat_connection(V, *eA[A]));
    for (int n = 0; n < 4; ++n) nab -= X[n] * PV[n];
    double lie = 0;
    for (int n = 0; n < 4; ++n) lie += LX[n].value() * (*eA[A])[n].value();
    out[A] = nab.value() - lie - sign * XeA.value() / p.r;
  }
  return out;
}

// --- null Maxwell system -------------------------------------------------------------

namespace {
struct TangOps {
  const GaugeJets& gj;
  const FrameJets& fr;

  RJet eA_of(const RJet4& e, const RJet& g) const { return z_scalar(e, g); }
  // sphere divergence of a tangential covector field
  RJet sphere_div(const RJet4& w) const {
    RJet acc{};
    const RJet4* eA[2] = {&fr.e1, &fr.e2};
    for (int A = 0; A < 2; ++A) {
      RJet weA{};
      for (int n = 0; n < 4; ++n) weA += w[n] * (*eA[A])[n];
      acc += z_scalar(*eA[A], weA);
      RJet4 conn = project_tangent(fr, flat_connection(*eA[A], *eA[A]));
      for (int n = 0; n < 4; ++n) acc -= w[n] * conn[n];
    }
    return acc;
  }
  // projected covariant derivative of a tangential covector along V, component A
  RJet proj_deriv(const RJet4& V, const RJet4& w, const RJet4& e) const {
    RJet weA{};
    for (int n = 0; n < 4; ++n) weA += w[n] * e[n];
    RJet acc = z_scalar(V, weA);
    RJet4 PV = project_tangent(fr, flat_connection(V, e));
    for (int n = 0; n < 4; ++n) acc -= w[n] * PV[n];
    return acc;
  }
};
}  // namespace

std::array<double, 6> residual_null_maxwell(const GaugePair& gp, const MultiIndexK& k,
                                            const OpticalCoords& p) {
  if (p.r <= 0.0) throw AxisError("residual_null_maxwell at the axis");
  if (k.order() > 2) throw DomainError("at most two commutator fields");
  GaugeJets gj(gp, p);
  const FrameJets& fr = gj.fr;
  TangOps ops{gj, fr};

  JetTwoForm G = gj.curvature();
  RJet4 J = div_2form(G);
  for (int n = 0; n < 4; ++n) J[n] = -J[n];  // Maxwell sign: Div G = -J
  RJet r2 = fr.r * fr.r;
  RJet4 Jk{};
  for (int n = 0; n < 4; ++n) Jk[n] = r2 * J[n];
  JetTwoForm Gk = G;
  for (auto it = k.stack.rbegin(); it != k.stack.rend(); ++it) {
    RJet4 Z = fr.z_jet(*it);
    Gk = lie_2form(Z, Gk);
    Jk = lie_1form(Z, Jk);
  }

  auto contract2 = [](const JetTwoForm& T, const RJet4& X, const RJet4& Y) {
    RJet acc{};
    for (int m = 0; m < 4; ++m)
      for (int n = 0; n < 4; ++n) acc += X[m] * Y[n] * T[m][n];
    return acc;
  };
  // null components of Lie^k G, as scalar/covector jet fields
  RJet rho = contract2(Gk, fr.Lbar, fr.L) * 0.5;
  RJet sig = contract2(Gk, fr.e1, fr.e2);
  RJet a1 = contract2(Gk, fr.L, fr.e1), a2 = contract2(Gk, fr.L, fr.e2);
  RJet ab1 = contract2(Gk, fr.Lbar, fr.e1), ab2 = contract2(Gk, fr.Lbar, fr.e2);
  auto tang = [&](const RJet& c1, const RJet& c2) {
    RJet4 w{};
    for (int n = 0; n < 4; ++n) w[n] = c1 * fr.e1[n] + c2 * fr.e2[n];
    return w;
  };
  RJet4 alpha = tang(a1, a2), alphabar = tang(ab1, ab2);
  RJet4 star_alpha = tang(-a2, a1), star_alphabar = tang(-ab2, ab1);

  // current contractions of J^(k) = Lie^k(r^2 J)
  auto contract1 = [](const RJet4& w, const RJet4& V) {
    RJet acc{};
    for (int n = 0; n < 4; ++n) acc += w[n] * V[n];
    return acc;
  };
  RJet JL = contract1(Jk, fr.L);
  RJet JLb = contract1(Jk, fr.Lbar);
  RJet Js1 = contract1(Jk, fr.e1), Js2 = contract1(Jk, fr.e2);

  auto scale4 = [](const RJet& s, const RJet4& w) {
    RJet4 out{};
    for (int n = 0; n < 4; ++n) out[n] = s * w[n];
    return out;
  };
  RJet ir = recip(fr.r);

  std::array<double, 6> res{};
  res[0] = (z_scalar(fr.L, r2 * rho) + ops.sphere_div(scale4(r2, alpha)) - JL).value();
  res[1] =
      (z_scalar(fr.Lbar, r2 * rho) - ops.sphere_div(scale4(r2, alphabar)) + JLb).value();
  // null Maxwell transport and divergence rows, with the current contracted
  // directly against the frame vectors
  res[2] = (z_scalar(fr.L, r2 * sig) + ops.sphere_div(scale4(r2, star_alpha))).value();
  res[3] =
      (z_scalar(fr.Lbar, r2 * sig) + ops.sphere_div(scale4(r2, star_alphabar))).value();
  // transport rows, component A = 1, 2 combined into the last two residual slots
  RJet rrho = fr.r * rho, rsig = fr.r * sig;
  RJet4 ra = scale4(fr.r, alpha), rab = scale4(fr.r, alphabar);
  const RJet4* eA[2] = {&fr.e1, &fr.e2};
  double worst5 = 0, worst6 = 0;
  for (int A = 0; A < 2; ++A) {
    double star_sign = (A == 0) ? -1.0 : 1.0;  // *grad_A has components (-e2, e1)(g)
    const RJet4& eother = (A == 0) ? fr.e2 : fr.e1;
    double srho = ops.eA_of(*eA[A], rrho).value();
    double ssig = star_sign * ops.eA_of(eother, rsig).value();
    double js = (A == 0) ? (ir * Js1).value() : (ir * Js2).value();
    double lhs5 = ops.proj_deriv(fr.Lbar, ra, *eA[A]).value() + srho - ssig;
    double lhs6 = ops.proj_deriv(fr.L, rab, *eA[A]).value() - srho - ssig;
    worst5 = std::max(worst5, std::abs(lhs5 - js));
    worst6 = std::max(worst6, std::abs(lhs6 - js));
  }
  res[4] = worst5;
  res[5] = worst6;
  return res;
}

// --- report ----------------------------------------------------------------------------

std::vector<ResidualRow> residual_report(unsigned seed, int npoints, double tol) {
  std::mt19937 rng(seed);
  std::vector<ResidualRow> rows;
  auto push = [&](const std::string& id, const std::string& flds, int pid, double r) {
    rows.push_back({id, flds, pid, r, tol, std::abs(r) <= tol});
  };
  for (int pid = 0; pid < npoints; ++pid) {
    GaugePair gp = random_gauge_pair(rng);
    OpticalCoords p = random_point(rng);
    // box route agreement
    cplx b1 = box_A(gp, p, BoxRoute::Direct), b2 = box_A(gp, p, BoxRoute::NullFrame);
    push("box_route_agreement", "-", pid, std::abs(b1 - b2));
    GaugeJets gj(gp, p);
    JetTwoForm F = gj.curvature();
    for (ZTag z : Z_ALL) {
      Vec4 rd = residual_commutator_div(z, gp, p);
      double m = 0;
      for (double c : rd) m = std::max(m, std::abs(c));
      push("commutator_div", z_name(z), pid, m);
      push("commutator_box", z_name(z), pid, std::abs(residual_commutator_box(z, gp, p)));
      QParts q = null_form_Q(gj, F, z);
      push("null_form_split", z_name(z), pid,
           std::abs(q.Q / cplx(0, 1) - (q.I1 - q.I2 - q.I3)));
      LieNullResiduals ln = residual_lie_null_decomp(z, gp, p);
      double lm = std::max({std::abs(ln.alpha[0]), std::abs(ln.alpha[1]),
                            std::abs(ln.alphabar[0]), std::abs(ln.alphabar[1]),
                            std::abs(ln.rho), std::abs(ln.sigma)});
      push("lie_null_decomp", z_name(z), pid, lm);
    }
    for (ZTag x : {ZTag::K, ZTag::S, ZTag::T, ZTag::O12})
      for (ZTag y : {ZTag::S, ZTag::O23}) {
        std::string lbl = std::string("(") + z_name(x) + "," + z_name(y) + ")";
        push("double_commutator", lbl, pid,
             std::abs(residual_double_commutator(x, y, gp, p)));
      }
    auto nm0 = residual_null_maxwell(gp, MultiIndexK{}, p);
    double m0 = 0;
    for (double c : nm0) m0 = std::max(m0, std::abs(c));
    push("null_maxwell", "k=0", pid, m0);
    auto nm1 = residual_null_maxwell(gp, MultiIndexK{{ZTag::O12}}, p);
    double m1 = 0;
    for (double c : nm1) m1 = std::max(m1, std::abs(c));
    push("null_maxwell", "k=(0,1,0)", pid, m1);
  }
  return rows;
}

}  // namespace mkg
