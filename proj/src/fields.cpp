#include "mkg/fields.hpp"

#include <cstdio>
#include <sstream>

namespace mkg {

cplx ScalarField::operator()(double t, const Vec3& x) const {
  cplx acc{};
  for (const auto& p : terms) {
    double mono = 1.0;
    for (int j = 0; j < p.pows[0]; ++j) mono *= t;
    for (int v = 0; v < 3; ++v)
      for (int j = 0; j < p.pows[v + 1]; ++j) mono *= x[v];
    double env = 1.0;
    if (p.width > 0.0) {
      Vec3 dxv = sub3(x, p.center);
      env = std::exp(-dot3(dxv, dxv) / (p.width * p.width));
    }
    double phase = dot3(p.k, x) + p.omega * t;
    acc += p.coef * mono * env * cplx(std::cos(phase), std::sin(phase));
  }
  return acc;
}

CJet ScalarField::eval(const FrameJets& fj) const {
  CJet acc{};
  const std::array<RJet, 3> xs = {fj.x1, fj.x2, fj.x3};
  for (const auto& p : terms) {
    RJet mono = RJet::constant(1.0);
    for (int j = 0; j < p.pows[0]; ++j) mono = mono * fj.t;
    for (int v = 0; v < 3; ++v)
      for (int j = 0; j < p.pows[v + 1]; ++j) mono = mono * xs[v];
    RJet expo_re{};  // exponent, real part (envelope)
    if (p.width > 0.0) {
      RJet q{};
      for (int v = 0; v < 3; ++v) {
        RJet dv = xs[v] - p.center[v];
        q += dv * dv;
      }
      expo_re = q * (-1.0 / (p.width * p.width));
    }
    RJet phase = fj.t * p.omega;
    for (int v = 0; v < 3; ++v) phase += xs[v] * p.k[v];
    CJet expo = to_complex(expo_re) + to_complex(phase) * cplx(0.0, 1.0);
    acc += mkg::exp(expo) * (mono * p.coef);
  }
  return acc;
}

// --- serialization -----------------------------------------------------------

namespace {
void emit_terms(std::ostringstream& os, const char* name, const ScalarField& f) {
  os << "[" << name << "]\n";
  for (const auto& p : f.terms) {
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "term = %.17g %.17g %d %d %d %d %.17g %.17g %.17g %.17g %.17g %.17g %.17g "
                  "%.17g\n",
                  p.coef.real(), p.coef.imag(), p.pows[0], p.pows[1], p.pows[2], p.pows[3],
                  p.center[0], p.center[1], p.center[2], p.width, p.k[0], p.k[1], p.k[2],
                  p.omega);
    os << buf;
  }
}
}  // namespace

std::string to_kv(const GaugePair& gp) {
  std::ostringstream os;
  emit_terms(os, "phi", gp.phi);
  const char* names[4] = {"A0", "A1", "A2", "A3"};
  for (int m = 0; m < 4; ++m) emit_terms(os, names[m], gp.A[m].f);
  return os.str();
}

GaugePair gauge_pair_from_kv(const std::string& text) {
  GaugePair gp;
  ScalarField* cur = nullptr;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (line == "[phi]") cur = &gp.phi;
    else if (line == "[A0]") cur = &gp.A[0].f;
    else if (line == "[A1]") cur = &gp.A[1].f;
    else if (line == "[A2]") cur = &gp.A[2].f;
    else if (line == "[A3]") cur = &gp.A[3].f;
    else if (line.rfind("term =", 0) == 0) {
      if (!cur) throw ConfigError("field term outside a section");
      WavePacket p;
      double re, im;
      if (std::sscanf(line.c_str() + 6, "%lf %lf %d %d %d %d %lf %lf %lf %lf %lf %lf %lf %lf",
                      &re, &im, &p.pows[0], &p.pows[1], &p.pows[2], &p.pows[3], &p.center[0],
                      &p.center[1], &p.center[2], &p.width, &p.k[0], &p.k[1], &p.k[2],
                      &p.omega) != 14)
        throw ConfigError("malformed field term: " + line);
      p.coef = {re, im};
      cur->terms.push_back(p);
    } else {
      throw ConfigError("unrecognized field line: " + line);
    }
  }
  return gp;
}

// --- jets ----------------------------------------------------------------------

GaugeJets::GaugeJets(const GaugePair& gp, const OpticalCoords& p) : fr(p) {
  for (int m = 0; m < 4; ++m) A[m] = gp.A[m].eval(fr);
  phi = gp.phi.eval(fr);
}

JetTwoForm GaugeJets::curvature() const {
  JetTwoForm F{};
  for (int m = 0; m < 4; ++m)
    for (int n = m + 1; n < 4; ++n) {
      F[m][n] = d(A[n], m) - d(A[m], n);
      F[n][m] = -F[m][n];
    }
  return F;
}

CJet4 GaugeJets::Dphi() const {
  CJet4 D{};
  for (int m = 0; m < 4; ++m) D[m] = d(phi, m) + to_complex(A[m]) * (cplx(0, 1) * phi);
  return D;
}

std::array<RJet, 4> GaugeJets::current() const {
  CJet4 D = Dphi();
  std::array<RJet, 4> J{};
  for (int m = 0; m < 4; ++m) J[m] = imag(phi * conj(D[m]));
  return J;
}

CJet GaugeJets::covariant(const RJet4& V, const CJet& f) const {
  CJet acc{};
  // A carries a lower index, so A(V) = A_mu V^mu without a metric factor
  RJet AV = A[0] * V[0] + A[1] * V[1] + A[2] * V[2] + A[3] * V[3];
  for (int m = 0; m < 4; ++m) acc += to_complex(V[m]) * d(f, m);
  acc += to_complex(AV) * (cplx(0, 1) * f);
  return acc;
}

// --- value-level ops ---------------------------------------------------------------

TwoForm value_of(const JetTwoForm& G) {
  TwoForm out;
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) out.c[m][n] = G[m][n].value();
  return out;
}

TwoForm curvature(const GaugePair& gp, const OpticalCoords& p) {
  GaugeJets gj(gp, p);
  return value_of(gj.curvature());
}

Vec4 current(const GaugePair& gp, const OpticalCoords& p) {
  GaugeJets gj(gp, p);
  auto J = gj.current();
  return {J[0].value(), J[1].value(), J[2].value(), J[3].value()};
}

TwoForm hodge_dual(const TwoForm& G) {
  // (*G)_{ab} = 1/2 eps_{abcd} G^{cd}, indices raised with diag(-1,1,1,1)
  TwoForm out;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      double s = 0.0;
      for (int cc = 0; cc < 4; ++cc)
        for (int dd = 0; dd < 4; ++dd) {
          double eps = levi_civita(a, b, cc, dd);
          if (eps == 0.0) continue;
          s += 0.5 * eps * METRIC_DIAG[cc] * METRIC_DIAG[dd] * G.c[cc][dd];
        }
      out.c[a][b] = s;
    }
  return out;
}

NullDecomp null_decompose(const TwoForm& G, const NullFrame& fr) {
  NullDecomp d;
  d.alpha = {G(fr.L, fr.e1), G(fr.L, fr.e2)};
  d.alphabar = {G(fr.Lbar, fr.e1), G(fr.Lbar, fr.e2)};
  d.rho = 0.5 * G(fr.Lbar, fr.L);
  d.sigma = G(fr.e1, fr.e2);
  return d;
}

TwoForm reconstruct(const NullDecomp& d, const NullFrame& fr) {
  // coframe: th3 dual to Lbar is -m(L,.)/2, th4 dual to L is -m(Lbar,.)/2,
  // thA = m(e_A,.)
  auto covec = [](const Vec4& X, double s) {
    return Vec4{-s * X[0], s * X[1], s * X[2], s * X[3]};
  };
  Vec4 th3 = covec(fr.L, -0.5), th4 = covec(fr.Lbar, -0.5);
  Vec4 thA[2] = {covec(fr.e1, 1.0), covec(fr.e2, 1.0)};
  TwoForm G;
  auto add_wedge = [&](const Vec4& a, const Vec4& b, double w) {
    for (int m = 0; m < 4; ++m)
      for (int n = 0; n < 4; ++n) G.c[m][n] += w * (a[m] * b[n] - a[n] * b[m]);
  };
  for (int A = 0; A < 2; ++A) {
    add_wedge(th4, thA[A], d.alpha[A]);
    add_wedge(th3, thA[A], d.alphabar[A]);
  }
  add_wedge(th3, th4, 2.0 * d.rho);
  add_wedge(thA[0], thA[1], d.sigma);
  return G;
}

// --- charge moments -------------------------------------------------------------

ChargeMoments charge_moments(double q0, const Vec3& dipole_raw,
                             const std::array<std::array<double, 3>, 3>& second_raw) {
  ChargeMoments m;
  m.q0 = q0;
  m.dipole = dipole_raw;
  double tr = second_raw[0][0] + second_raw[1][1] + second_raw[2][2];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      m.quad[i][j] = 3.0 * second_raw[i][j] - (i == j ? tr : 0.0);
  return m;
}

double charge_potential(const ChargeMoments& m, const Vec3& x) {
  double r = norm3(x);
  if (r <= 0.0) throw AxisError("charge_potential at x = 0");
  double xq = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) xq += x[i] * m.quad[i][j] * x[j];
  return m.q0 / r + dot3(x, m.dipole) / (r * r * r) + 0.5 * xq / (r * r * r * r * r);
}

RJet charge_potential_jet(const ChargeMoments& m, const FrameJets& fj) {
  const std::array<RJet, 3> xs = {fj.x1, fj.x2, fj.x3};
  RJet ir = recip(fj.r);
  RJet ir3 = ir * ir * ir;
  RJet acc = ir * m.q0;
  RJet xd{};
  for (int i = 0; i < 3; ++i) xd += xs[i] * m.dipole[i];
  acc += xd * ir3;
  RJet xq{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (m.quad[i][j] != 0.0) xq += xs[i] * xs[j] * m.quad[i][j];
  acc += xq * (ir3 * ir * ir) * 0.5;
  return acc;
}

JetTwoForm charge_two_form_jets(const ChargeMoments& m, const FrameJets& fj) {
  RJet V = charge_potential_jet(m, fj);
  JetTwoForm F{};
  // electrostatic convention E = -grad V, so the monopole part is (q0/r^2) dt ^ dr
  for (int i = 1; i < 4; ++i) {
    F[0][i] = -d(V, i);
    F[i][0] = -F[0][i];
  }
  return F;
}

TwoForm charge_two_form(const ChargeMoments& m, const OpticalCoords& p) {
  if (p.r <= 0.0) throw AxisError("charge_two_form at the axis");
  FrameJets fj(p);
  return value_of(charge_two_form_jets(m, fj));
}

TwoForm chargeless(const TwoForm& F, const OpticalCoords& p, const ChargeMoments& m) {
  if (!(1.0 + p.t <= p.r)) return F;
  TwoForm Fq = charge_two_form(m, p);
  TwoForm out = F;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) out.c[a][b] -= Fq.c[a][b];
  return out;
}

}  // namespace mkg
