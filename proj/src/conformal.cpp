#include "mkg/conformal.hpp"

#include <cmath>
#include <vector>

#include "mkg/null_calculus.hpp"

namespace mkg {

namespace {

// deterministic pairwise reduction (same scheme as the energy audits)
double pairwise(const double* a, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i];
    return s;
  }
  std::size_t half = n / 2;
  return pairwise(a, half) + pairwise(a + half, n - half);
}
double pairwise(const std::vector<double>& a) { return pairwise(a.data(), a.size()); }

}  // namespace

// --- hyperboloidal coordinates ----------------------------------------------

double ConformalChart::U(double t, const Vec3& x) const {
  double ts = t_star(t);
  double rad = ts * ts - dot3(x, x);
  if (rad < 0.0) throw DomainError("ConformalChart::U: t_star^2 < r^2");
  return std::sqrt(rad);
}

double ConformalChart::V(double t, const Vec3& x) const {
  double ts = t_star(t);
  return std::sqrt(ts * ts + dot3(x, x));
}

// --- point maps ---------------------------------------------------------------

Event map_point(const ConformalChart& c, double t, const Vec3& x) {
  double lam = c.Lambda(t, x);
  if (lam <= 0.0) throw DomainError("map_point: Lambda <= 0");
  double w = t + c.shift();
  Event q;
  q.t = -w / lam + c.target_shift();
  for (int i = 0; i < 3; ++i) q.x[i] = x[i] / lam;
  return q;
}

Event inverse_point(const ConformalChart& c, double tt, const Vec3& tx) {
  double tlam = c.tilde_Lambda(tt, tx);
  if (tlam <= 0.0) throw DomainError("inverse_point: tilde Lambda <= 0");
  double tau = tt - c.target_shift();
  Event q;
  q.t = -tau / tlam - c.shift();
  for (int i = 0; i < 3; ++i) q.x[i] = tx[i] / tlam;
  return q;
}

// --- Jacobian and pushforward --------------------------------------------------

Mat4 map_jacobian(const ConformalChart& c, double t, const Vec3& x) {
  double lam = c.Lambda(t, x);
  if (lam <= 0.0) throw DomainError("map_jacobian: Lambda <= 0");
  double w = t + c.shift();
  double lam2 = lam * lam;
  Mat4 J{};
  J[0][0] = (w * w + dot3(x, x)) / lam2;
  for (int j = 0; j < 3; ++j) J[0][j + 1] = -2.0 * w * x[j] / lam2;
  for (int i = 0; i < 3; ++i) {
    J[i + 1][0] = -2.0 * w * x[i] / lam2;
    for (int j = 0; j < 3; ++j)
      J[i + 1][j + 1] = ((i == j ? lam : 0.0) + 2.0 * x[i] * x[j]) / lam2;
  }
  return J;
}

Vec4 pushforward_vector(const ConformalChart& c, const Vec4& W, double t, const Vec3& x) {
  Mat4 J = map_jacobian(c, t, x);
  Vec4 out{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out[i] += J[i][j] * W[j];
  return out;
}

// --- components of the corresponding fields -------------------------------------

TildeComponents conformal_components(const ConformalChart& c, const NullDecomp& d,
                                     const GaugePair& gp, const OpticalCoords& p) {
  double lam = c.Lambda(p.t, p.x);
  if (lam <= 0.0) throw DomainError("conformal_components: Lambda <= 0");
  double us = c.u_star(p.u);
  double vs = c.v_star(p.v);

  TildeComponents out;
  double w_a = 16.0 * us * vs * vs * vs;
  double w_m = 16.0 * us * us * vs * vs;
  double w_ab = 16.0 * us * us * us * vs;
  for (int A = 0; A < 2; ++A) {
    out.alpha[A] = w_a * d.alpha[A];
    out.alphabar[A] = w_ab * d.alphabar[A];
  }
  out.rho = w_m * d.rho;
  out.sigma = w_m * d.sigma;

  GaugeJets gj(gp, p);
  CJet4 Dphi = gj.Dphi();
  NullFrame nf = null_frame(p.x);
  cplx phi = gj.phi.value();
  auto contract = [&](const Vec4& Z) {
    cplx s = 0.0;
    for (int mu = 0; mu < 4; ++mu) s += Z[mu] * Dphi[mu].value();
    return s;
  };
  cplx DL = contract(nf.L), DLb = contract(nf.Lbar);
  cplx D1 = contract(nf.e1), D2 = contract(nf.e2);

  out.DL_phi = 4.0 * vs * vs * (4.0 * us * phi + lam * DL);
  out.DLbar_phi = 4.0 * us * us * (4.0 * vs * phi + lam * DLb);
  out.DA_phi[0] = 4.0 * us * vs * lam * D1;
  out.DA_phi[1] = 4.0 * us * vs * lam * D2;
  return out;
}

// --- derivative correspondence ---------------------------------------------------

double derivative_correspondence_residual(const ConformalChart& c, ZTag z,
                                          const GaugePair& gp, const OpticalCoords& p) {
  if (z == ZTag::S)
    throw DomainError("derivative_correspondence_residual: no correspondence for S");
  double lam = c.Lambda(p.t, p.x);
  if (lam <= 0.0) throw DomainError("derivative_correspondence_residual: Lambda <= 0");

  GaugeJets gj(gp, p);
  const CJet& f = gj.phi;
  const FrameJets& fr = gj.fr;

  RJet w = fr.t + c.shift();
  RJet lamJ = w * w - (fr.x1 * fr.x1 + fr.x2 * fr.x2 + fr.x3 * fr.x3);
  RJet4 Zj = fr.z_jet(z);

  double lhs_re, lhs_im;
  {
    cplx lhs = lam * modified_D(gj, z, f).value();
    lhs_re = lhs.real();
    lhs_im = lhs.imag();
  }

  double kappa = 0.0;
  Event q = map_point(c, p.t, p.x);
  if (z == ZTag::T) {
    kappa = 2.0 * (q.t - c.target_shift());
  } else if (z == ZTag::K) {
    double a = c.shift();
    double rs = c.R_star;
    kappa = a * a * (q.t - rs * rs / ((rs + 1.0) * (2.0 * rs + 1.0)));
  }

  cplx rhs = z_scalar(Zj, lamJ).value() * f.value() + lam * gj.covariant(Zj, f).value() +
             kappa * lam * f.value();
  return std::abs(cplx{lhs_re, lhs_im} - rhs);
}

// --- Sigma surface ----------------------------------------------------------------

double SigmaSurface::t_of_r(double r) const {
  // t = t_star - (R* + 1/(2R*+2)): the graph through (t=0, r=R*)
  double d0 = R_star + 1.0 / (2.0 * R_star + 2.0);
  return t_star_of_r(r) - d0;
}

double SigmaSurface::r_of_V(double V) const {
  double rad = V * V - U0 * U0;
  if (rad < 0.0) throw DomainError("SigmaSurface::r_of_V: V < U0");
  return std::sqrt(0.5 * rad);
}

double SigmaSurface::measure_density(double V) const {
  double r = r_of_V(V);
  return r * V * V / t_star_of_r(r);
}

double SigmaSurface::measure_density_graph(double V) const {
  double r = r_of_V(V);
  double ts = t_star_of_r(r);
  double gp = r / ts;                       // slope of the graph
  double dr_dV = V / (2.0 * r);             // from V^2 = U0^2 + 2 r^2
  return std::sqrt(1.0 + gp * gp) * r * r * dr_dV;
}

double SigmaSurface::contraction(double V, double J_L, double J_Lbar) const {
  double r = r_of_V(V);
  double ts = t_star_of_r(r);
  return -(r * V / (4.0 * ts)) * ((ts - r) * J_Lbar + (ts + r) * J_L);
}

SigmaSurface sigma_surface(const ConformalChart& c) {
  SigmaSurface s;
  s.R_star = c.R_star;
  s.U0 = c.sigma_U();
  return s;
}

// --- conformal energy of the charge field ------------------------------------------

namespace {

// 8-point Gauss-Legendre on [-1, 1]
constexpr double kGLx[8] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                            -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                            0.7966664774136267,  0.9602898564975363};
constexpr double kGLw[8] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                            0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                            0.2223810344533745, 0.1012285362903763};

}  // namespace

double conformal_charge_energy(const ConformalChart& c, const ChargeMoments& m,
                               double V_cutoff) {
  SigmaSurface s = sigma_surface(c);
  if (V_cutoff < s.V_min())
    throw DomainError("conformal_charge_energy: V_cutoff below the surface start");

  constexpr int kNPhi = 16;
  // sphere product grid (exact for the dipole/quadrupole anisotropy)
  struct Node {
    Vec3 n;
    double w;
  };
  std::vector<Node> sphere;
  sphere.reserve(8 * kNPhi);
  for (int i = 0; i < 8; ++i) {
    double mu = kGLx[i];
    double st = std::sqrt(std::max(0.0, 1.0 - mu * mu));
    for (int j = 0; j < kNPhi; ++j) {
      double ph = 2.0 * M_PI * (j + 0.5) / kNPhi;
      sphere.push_back({{st * std::cos(ph), st * std::sin(ph), mu},
                        kGLw[i] * (2.0 * M_PI / kNPhi)});
    }
  }

  // weighted null-component density integrated over the sphere at radius V
  auto shell = [&](double V) {
    double dens = s.measure_density(V);
    double r = s.r_of_V(V);
    double t = s.t_of_r(r);
    std::vector<double> parts(sphere.size());
    for (std::size_t k = 0; k < sphere.size(); ++k) {
      Vec3 x{r * sphere[k].n[0], r * sphere[k].n[1], r * sphere[k].n[2]};
      OpticalCoords p = optical_coords(t, x);
      NullDecomp d = null_decompose(charge_two_form(m, p), null_frame(x));
      double us = c.u_star(p.u), vs = c.v_star(p.v);
      double a2 = d.alpha[0] * d.alpha[0] + d.alpha[1] * d.alpha[1];
      double ab2 = d.alphabar[0] * d.alphabar[0] + d.alphabar[1] * d.alphabar[1];
      double us2 = us * us, vs2 = vs * vs;
      double val = us2 * vs2 * a2 + us2 * us2 * (d.rho * d.rho + d.sigma * d.sigma) +
                   us2 * us2 * us2 / vs2 * ab2;
      parts[k] = sphere[k].w * val;
    }
    return pairwise(parts) * dens;
  };

  // fixed logarithmic grid in V: positive trapezoid weights make the result
  // exactly monotone in the cutoff
  constexpr double kDy = 1.0 / 64.0;
  double y_max = std::log(V_cutoff / s.V_min());
  int n_full = (int)std::floor(y_max / kDy);
  std::vector<double> panels;
  panels.reserve((std::size_t)n_full + 1);
  // integrand in y: shell(V) * dV/dy = shell(V) * V
  auto g = [&](double y) {
    double V = s.V_min() * std::exp(y);
    return shell(V) * V;
  };
  double g_lo = g(0.0);
  for (int k = 0; k < n_full; ++k) {
    double g_hi = g((k + 1) * kDy);
    panels.push_back(0.5 * (g_lo + g_hi) * kDy);
    g_lo = g_hi;
  }
  double rest = y_max - n_full * kDy;
  if (rest > 0.0) panels.push_back(0.5 * (g_lo + g(y_max)) * rest);
  return pairwise(panels);
}

}  // namespace mkg
