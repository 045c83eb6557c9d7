#include "mkg/energy.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

namespace mkg {
namespace {

constexpr double kFourPi = 4.0 * 3.14159265358979323846;

int lat_idx(double x, double h, const char* what) {
  double t = x / h;
  long j = std::lround(t);
  if (std::abs(t - (double)j) > 1e-9 * std::max(1.0, std::abs(t)))
    throw OutOfDomain(std::string(what) + " is not on the lattice");
  return (int)j;
}

// Deterministic pairwise-tree reduction; independent of traversal chunking.
double pairwise(const double* a, size_t n) {
  if (n == 0) return 0.0;
  if (n <= 8) {
    double s = a[0];
    for (size_t k = 1; k < n; ++k) s += a[k];
    return s;
  }
  size_t m = n / 2;
  return pairwise(a, m) + pairwise(a + m, n - m);
}
double pairwise(const std::vector<double>& a) { return pairwise(a.data(), a.size()); }

// Trapezoid rule over uniformly spaced samples.
double trapz(const std::vector<double>& f, double spacing) {
  if (f.size() < 2) return 0.0;
  return spacing * (pairwise(f) - 0.5 * (f.front() + f.back()));
}

// Lattice accessor with second-order difference stencils and domain checks.
struct Probe {
  const GridState& g;
  double h;
  int nu, nv;

  explicit Probe(const GridState& gs)
      : g(gs), h(gs.cfg.h), nu((int)gs.rows.size() - 1), nv(gs.cfg.nv()) {}

  const Row& row(int i) const {
    if (i < 0 || i > nu) throw OutOfDomain("u-row outside the computed domain");
    return g.rows[(size_t)i];
  }
  cplx psi(int i, int j) const {
    const Row& r = row(i);
    if (!r.has(j)) throw OutOfDomain("v-node outside the computed domain");
    return r.psi_at(j);
  }
  double e(int i, int j) const {
    const Row& r = row(i);
    if (!r.has(j)) throw OutOfDomain("v-node outside the computed domain");
    return r.e_at(j);
  }
  double a(int i, int j) const {
    const Row& r = row(i);
    if (!r.has(j)) throw OutOfDomain("v-node outside the computed domain");
    return r.a_at(j);
  }
  double r_of(int i, int j) const { return (j - i) * h; }

  cplx phi(int i, int j) const {
    double r = r_of(i, j);
    if (r <= 0.0) throw OutOfDomain("field per radius requested on or inside the axis");
    return psi(i, j) / r;
  }

  cplx Dv_psi(int i, int j) const { return (psi(i, j + 1) - psi(i, j - 1)) / (2.0 * h); }
  cplx Dv_phi(int i, int j) const { return (phi(i, j + 1) - phi(i, j - 1)) / (2.0 * h); }

  // Covariant u-derivative: centered across rows, one-sided (second order)
  // on the data cone u = 0.
  cplx Du_psi(int i, int j) const {
    cplx d;
    if (i == 0)
      d = (-3.0 * psi(0, j) + 4.0 * psi(1, j) - psi(2, j)) / (2.0 * h);
    else
      d = (psi(i + 1, j) - psi(i - 1, j)) / (2.0 * h);
    return d + cplx(0.0, a(i, j)) * psi(i, j);
  }
  cplx Du_phi(int i, int j) const {
    cplx d;
    if (i == 0)
      d = (-3.0 * phi(0, j) + 4.0 * phi(1, j) - phi(2, j)) / (2.0 * h);
    else
      d = (phi(i + 1, j) - phi(i - 1, j)) / (2.0 * h);
    return d + cplx(0.0, a(i, j)) * phi(i, j);
  }

  double Pv(int i, int j) const { return std::norm(Dv_psi(i, j)); }
  double Pu(int i, int j) const { return std::norm(Du_psi(i, j)); }
  double rho(int i, int j) const {
    double r = r_of(i, j);
    return e(i, j) / (r * r);
  }
  double Q(int i, int j) const {
    double r = r_of(i, j);
    double ee = e(i, j);
    return ee * ee / (r * r);
  }
  double Jv_psi(int i, int j) const { return std::imag(psi(i, j) * std::conj(Dv_psi(i, j))); }
  double Ju_psi(int i, int j) const { return std::imag(psi(i, j) * std::conj(Du_psi(i, j))); }
  double Jv_phi(int i, int j) const { return std::imag(phi(i, j) * std::conj(Dv_phi(i, j))); }
  double Ju_phi(int i, int j) const { return std::imag(phi(i, j) * std::conj(Du_phi(i, j))); }
};

// Lattice indices of the diamond corners.
struct DiamondIdx {
  int i1, i2, j1, j2, m;  // inner-cone row, outer-corner row, corner v-indices
  double r1, r2, t0;
};

DiamondIdx resolve(const Probe& pr, const Diamond& d) {
  if (!(d.r1 > 0.0) || !(d.r2 > d.r1)) throw DomainError("diamond needs 0 < r1 < r2");
  DiamondIdx x;
  x.r1 = d.r1;
  x.r2 = d.r2;
  x.t0 = d.time();
  double h = pr.h;
  x.i1 = lat_idx(0.5 * (x.t0 - x.r1), h, "diamond inner corner u");
  x.i2 = lat_idx(0.5 * (x.t0 - x.r2), h, "diamond outer corner u");
  x.j1 = lat_idx(0.5 * (x.t0 + x.r1), h, "diamond inner corner v");
  x.j2 = lat_idx(0.5 * (x.t0 + x.r2), h, "diamond outer corner v");
  x.m = x.i1 + x.j1;
  if (x.i2 < 0) throw OutOfDomain("diamond bottom slice reaches t < r, outside the domain");
  if (x.i1 + 1 > pr.nu) throw OutOfDomain("diamond inner cone too close to u_max");
  if (x.j2 + 1 > pr.nv) throw OutOfDomain("diamond outer corner too close to v_max");
  if (x.r1 < 2.0 * h) throw OutOfDomain("diamond inner radius too close to the axis");
  return x;
}

template <class F>
double seg_H(const Probe& pr, const DiamondIdx& d, F f) {
  std::vector<double> vals;
  vals.reserve((size_t)(d.j2 - d.j1 + 1));
  for (int j = d.j1; j <= d.j2; ++j) vals.push_back(f(d.i1, j));
  return trapz(vals, pr.h);
}

template <class F>
double seg_Hbar(const Probe& pr, const DiamondIdx& d, F f) {
  std::vector<double> vals;
  vals.reserve((size_t)(d.i1 - d.i2 + 1));
  for (int i = d.i2; i <= d.i1; ++i) vals.push_back(f(i, d.j2));
  return trapz(vals, pr.h);
}

// Bottom slice, parameterized by r (node spacing 2h along the anti-diagonal).
template <class F>
double seg_B(const Probe& pr, const DiamondIdx& d, F f) {
  std::vector<double> vals;
  vals.reserve((size_t)(d.i1 - d.i2 + 1));
  for (int i = d.i1; i >= d.i2; --i) vals.push_back(f(i, d.m - i));
  return trapz(vals, 2.0 * pr.h);
}

// Iterated trapezoid over the diamond interior {u2 <= u <= u1, t0-u <= v <= v2}.
template <class F>
double bulk(const Probe& pr, const DiamondIdx& d, F f) {
  std::vector<double> rows;
  rows.reserve((size_t)(d.i1 - d.i2 + 1));
  for (int i = d.i2; i <= d.i1; ++i) {
    std::vector<double> vals;
    vals.reserve((size_t)(d.j2 - (d.m - i) + 1));
    for (int j = d.m - i; j <= d.j2; ++j) vals.push_back(f(i, j));
    rows.push_back(trapz(vals, pr.h));
  }
  return trapz(rows, pr.h);
}

ClassicalAudit classical_pieces(const Probe& pr, const DiamondIdx& d) {
  ClassicalAudit out;
  out.F_H = kFourPi * seg_H(pr, d, [&](int i, int j) { return pr.Pv(i, j) + pr.Q(i, j); });
  out.F_Hbar = kFourPi * seg_Hbar(pr, d, [&](int i, int j) { return pr.Pu(i, j) + pr.Q(i, j); });
  out.E_B = kFourPi * seg_B(pr, d, [&](int i, int j) {
    return 0.5 * (pr.Pv(i, j) + pr.Pu(i, j)) + pr.Q(i, j);
  });
  out.bulk_scalar = kFourPi * bulk(pr, d, [&](int i, int j) {
    return 2.0 * pr.rho(i, j) * (pr.Ju_psi(i, j) - pr.Jv_psi(i, j));
  });
  out.bulk_maxwell = kFourPi * bulk(pr, d, [&](int i, int j) {
    return 2.0 * pr.e(i, j) * (pr.Jv_phi(i, j) - pr.Ju_phi(i, j));
  });
  out.residual = out.F_H + out.F_Hbar - out.E_B - out.bulk_scalar - out.bulk_maxwell;
  return out;
}

}  // namespace

double flux(const GridState& st, SurfaceKind surface, const Diamond& d) {
  Probe pr(st);
  DiamondIdx dx = resolve(pr, d);
  switch (surface) {
    case SurfaceKind::OutgoingCone:
      return kFourPi * seg_H(pr, dx, [&](int i, int j) { return pr.Pv(i, j) + pr.Q(i, j); });
    case SurfaceKind::IngoingCone:
      return kFourPi * seg_Hbar(pr, dx, [&](int i, int j) { return pr.Pu(i, j) + pr.Q(i, j); });
    case SurfaceKind::TimeSlice:
      return kFourPi * seg_B(pr, dx, [&](int i, int j) {
        return 0.5 * (pr.Pv(i, j) + pr.Pu(i, j)) + pr.Q(i, j);
      });
  }
  throw DomainError("unknown surface kind");
}

ClassicalAudit classical_identity_audit(const GridState& st, const Diamond& d) {
  Probe pr(st);
  return classical_pieces(pr, resolve(pr, d));
}

RpAudit rp_weighted_identity_audit(const GridState& st, double p, const Diamond& d) {
  if (p < 0.0 || p > 2.0) throw DomainError("radial weight exponent must lie in [0, 2]");
  Probe pr(st);
  DiamondIdx dx = resolve(pr, d);
  auto rp = [&](int i, int j) { return std::pow(pr.r_of(i, j), p); };

  RpAudit out;
  out.lhs_B = kFourPi * 0.5 * seg_B(pr, dx, [&](int i, int j) {
    double r = pr.r_of(i, j);
    double rh = pr.rho(i, j);
    return rp(i, j) * (pr.Pv(i, j) + r * r * rh * rh);
  });
  out.flux_H = kFourPi * seg_H(pr, dx, [&](int i, int j) { return rp(i, j) * pr.Pv(i, j); });
  out.flux_Hbar = kFourPi * seg_Hbar(pr, dx, [&](int i, int j) {
    double r = pr.r_of(i, j);
    double rh = pr.rho(i, j);
    return rp(i, j) * r * r * rh * rh;
  });
  out.bulk = kFourPi * bulk(pr, dx, [&](int i, int j) {
    double r = pr.r_of(i, j);
    double rh = pr.rho(i, j);
    return p * std::pow(r, p - 1.0) * pr.Pv(i, j) + (2.0 - p) * std::pow(r, p + 1.0) * rh * rh;
  });
  out.err_scalar = kFourPi * bulk(pr, dx, [&](int i, int j) {
    return 2.0 * rp(i, j) * pr.rho(i, j) * pr.Jv_psi(i, j);
  });
  out.err_maxwell = kFourPi * bulk(pr, dx, [&](int i, int j) {
    return 2.0 * rp(i, j) * pr.e(i, j) * pr.Jv_phi(i, j);
  });
  out.residual =
      out.lhs_B - out.flux_H - out.flux_Hbar - out.bulk - (out.err_scalar - out.err_maxwell);
  return out;
}

EnergyLedger energy_ledger(const GridState& st, const Diamond& d, double p) {
  Probe pr(st);
  DiamondIdx dx = resolve(pr, d);
  ClassicalAudit c = classical_pieces(pr, dx);
  RpAudit rp = rp_weighted_identity_audit(st, p, d);
  EnergyLedger out;
  out.E_B = c.E_B;
  out.F_H = c.F_H;
  out.F_Hbar = c.F_Hbar;
  out.Ep = rp.flux_H + rp.flux_Hbar + rp.bulk;
  out.Err_p = rp.err_scalar - rp.err_maxwell;
  return out;
}

GammaAudit gamma_identity_audit(const GridState& st, double gamma, const Diamond& d) {
  if (gamma == 3.0) throw DomainError("gamma = 3 is excluded from the weighted identities");
  Probe pr(st);
  DiamondIdx dx = resolve(pr, d);
  double c = 1.0 / (3.0 - gamma);
  auto dens = [&](int i, int j) {
    return std::pow(pr.r_of(i, j), 2.0 - gamma) * std::norm(pr.phi(i, j));
  };
  auto boundary = [&](int i, int j) {
    return std::pow(pr.r_of(i, j), 3.0 - gamma) * std::norm(pr.phi(i, j));
  };

  GammaAudit out;
  {  // outgoing cone u = u1
    double lhs = kFourPi * seg_H(pr, dx, dens);
    double cross = seg_H(pr, dx, [&](int i, int j) {
      return std::pow(pr.r_of(i, j), 3.0 - gamma) *
             std::real(std::conj(pr.Dv_phi(i, j)) * pr.phi(i, j));
    });
    double rhs = kFourPi * (c * (boundary(dx.i1, dx.j2) - boundary(dx.i1, dx.j1)) - 2.0 * c * cross);
    out.res_H = lhs - rhs;
  }
  {  // ingoing cone v = v2
    double lhs = kFourPi * seg_Hbar(pr, dx, dens);
    double cross = seg_Hbar(pr, dx, [&](int i, int j) {
      return std::pow(pr.r_of(i, j), 3.0 - gamma) *
             std::real(std::conj(pr.Du_phi(i, j)) * pr.phi(i, j));
    });
    double rhs = kFourPi * (c * (boundary(dx.i2, dx.j2) - boundary(dx.i1, dx.j2)) + 2.0 * c * cross);
    out.res_Hbar = lhs - rhs;
  }
  {  // bottom slice t = t0
    double lhs = kFourPi * seg_B(pr, dx, dens);
    double cross = seg_B(pr, dx, [&](int i, int j) {
      cplx dr_phi = 0.5 * (pr.Dv_phi(i, j) - pr.Du_phi(i, j));
      return std::pow(pr.r_of(i, j), 3.0 - gamma) * std::real(std::conj(dr_phi) * pr.phi(i, j));
    });
    double rhs = kFourPi * (c * (boundary(dx.i2, dx.j2) - boundary(dx.i1, dx.j1)) - 2.0 * c * cross);
    out.res_B = lhs - rhs;
  }
  return out;
}

// --- hyperboloid -----------------------------------------------------------------

double Hyperboloid::offset() const { return R_star + 1.0 / (2.0 * R_star + 2.0); }
double Hyperboloid::u0_sq() const {
  double d = offset();
  return d * d - R_star * R_star;
}
double Hyperboloid::u_of_v(double v) const {
  double d = offset();
  return 0.5 * (t_shift - d) + 0.5 * u0_sq() / (2.0 * v + d - t_shift);
}
double Hyperboloid::v_of_u(double u) const {
  double d = offset();
  return 0.5 * (t_shift - d) + 0.5 * u0_sq() / (2.0 * u + d - t_shift);
}
double Hyperboloid::t_star(double u, double v) const { return u + v - t_shift + offset(); }

namespace {

struct SigmaSetup {
  Hyperboloid hb;
  int m;            // t_shift / h (anti-diagonal index of the bottom slice)
  int js, is;       // lattice indices of the corner (u_s, v_s) on the slice
  int j2;           // truncation v-index
  double u_e;       // u at the truncation point (off-lattice in general)
};

SigmaSetup sigma_setup(const Probe& pr, double R_star, double t_shift, double v2) {
  if (!(R_star > 0.0)) throw DomainError("hyperboloid radius must be positive");
  SigmaSetup s;
  s.hb.R_star = R_star;
  s.hb.t_shift = (t_shift > 0.0) ? t_shift : 2.0 * R_star + 2.0;
  double h = pr.h;
  s.hb.v2 = (v2 > 0.0) ? v2 : (pr.nv - 1) * h;
  s.m = lat_idx(s.hb.t_shift, h, "hyperboloid slice time");
  s.is = lat_idx(0.5 * (s.hb.t_shift - R_star), h, "hyperboloid corner u");
  s.js = lat_idx(0.5 * (s.hb.t_shift + R_star), h, "hyperboloid corner v");
  s.j2 = lat_idx(s.hb.v2, h, "hyperboloid truncation v");
  if (s.is < 0 || s.m > pr.nv)
    throw OutOfDomain("hyperboloid slice does not fit in the computed domain");
  if (s.j2 <= s.js) throw OutOfDomain("hyperboloid does not intersect the computed domain");
  if (s.j2 + 1 > pr.nv) throw OutOfDomain("hyperboloid truncation too close to v_max");
  if (s.is + 1 > pr.nu) throw OutOfDomain("hyperboloid slice too close to u_max");
  s.u_e = s.hb.u_of_v(s.hb.v2);
  if (s.u_e < 0.0) throw OutOfDomain("truncated hyperboloid leaves the computed domain");
  return s;
}

// Linear interpolation in u at fixed v-index, for row-sampled quantities.
template <class F>
double interp_u(const Probe& pr, double u, int j, F f) {
  double t = u / pr.h;
  int i = (int)std::floor(t + 1e-12);
  double lam = t - i;
  if (lam < 1e-12) return f(i, j);
  if (lam > 1.0 - 1e-12) return f(i + 1, j);
  return (1.0 - lam) * f(i, j) + lam * f(i + 1, j);
}

}  // namespace

double hyperboloid_flux(const GridState& st, double R_star, double t_shift, double v2) {
  Probe pr(st);
  SigmaSetup s = sigma_setup(pr, R_star, t_shift, v2);
  double h = pr.h;
  std::vector<double> vals;
  vals.reserve((size_t)(s.j2 - s.js + 1));
  for (int j = s.js; j <= s.j2; ++j) {
    double v = j * h;
    double u = s.hb.u_of_v(v);
    double r = v - u;
    double ts = s.hb.t_star(u, v);
    double b = 2.0 * v + s.hb.offset() - s.hb.t_shift;
    double du_dv = -s.hb.u0_sq() / (b * b);
    double Xv = interp_u(pr, u, j, [&](int i, int jj) { return std::norm(pr.Dv_phi(i, jj)); });
    double Xu = interp_u(pr, u, j, [&](int i, int jj) { return std::norm(pr.Du_phi(i, jj)); });
    double rh = interp_u(pr, u, j, [&](int i, int jj) { return pr.rho(i, jj); });
    double dens = (ts + r) * Xv + 2.0 * ts * rh * rh + (ts - r) * Xu;
    vals.push_back(dens * r * r / (4.0 * ts) * (1.0 - du_dv));
  }
  return kFourPi * trapz(vals, h);
}

HyperboloidAudit hyperboloid_identity_audit(const GridState& st, double R_star, double t_shift,
                                            double v2) {
  Probe pr(st);
  SigmaSetup s = sigma_setup(pr, R_star, t_shift, v2);
  double h = pr.h;
  HyperboloidAudit out;

  // Flux through the truncated hyperboloid (mixed null components).
  {
    std::vector<double> vals;
    vals.reserve((size_t)(s.j2 - s.js + 1));
    for (int j = s.js; j <= s.j2; ++j) {
      double v = j * h;
      double u = s.hb.u_of_v(v);
      double b = 2.0 * v + s.hb.offset() - s.hb.t_shift;
      double du_dv = -s.hb.u0_sq() / (b * b);
      double pv = interp_u(pr, u, j, [&](int i, int jj) { return pr.Pv(i, jj); });
      double pu = interp_u(pr, u, j, [&](int i, int jj) { return pr.Pu(i, jj); });
      double q = interp_u(pr, u, j, [&](int i, int jj) { return pr.Q(i, jj); });
      vals.push_back(pv - du_dv * pu + (1.0 - du_dv) * q);
    }
    out.sigma_flux = kFourPi * trapz(vals, h);
  }

  // Flux entering through the data cone u = 0, v in [t_shift, v2].
  {
    std::vector<double> vals;
    vals.reserve((size_t)(s.j2 - s.m + 1));
    for (int j = s.m; j <= s.j2; ++j) vals.push_back(pr.Pv(0, j) + pr.Q(0, j));
    out.F_H0 = kFourPi * trapz(vals, h);
  }

  // Closure edge v = v2, u in [0, u_e] (partial end panel by interpolation).
  {
    auto f = [&](int i, int j) { return pr.Pu(i, j) + pr.Q(i, j); };
    int ifull = (int)std::floor(s.u_e / h + 1e-12);
    std::vector<double> vals;
    for (int i = 0; i <= ifull; ++i) vals.push_back(f(i, s.j2));
    double total = trapz(vals, h);
    double delta = s.u_e - ifull * h;
    if (delta > 1e-12 * h) {
      double fend = interp_u(pr, s.u_e, s.j2, f);
      total += 0.5 * delta * (f(ifull, s.j2) + fend);
    }
    out.F_Hbar = kFourPi * total;
  }

  // Energy on the slice t = t_shift from r = R_star out to the data cone.
  {
    std::vector<double> vals;
    vals.reserve((size_t)(s.is + 1));
    for (int i = s.is; i >= 0; --i) {
      int j = s.m - i;
      vals.push_back(0.5 * (pr.Pv(i, j) + pr.Pu(i, j)) + pr.Q(i, j));
    }
    out.E_B = kFourPi * trapz(vals, 2.0 * h);
  }

  // Bulk exchange terms over the region between slice/cone and hyperboloid.
  {
    auto f = [&](int i, int j) {
      return 2.0 * pr.rho(i, j) * (pr.Ju_psi(i, j) - pr.Jv_psi(i, j)) +
             2.0 * pr.e(i, j) * (pr.Jv_phi(i, j) - pr.Ju_phi(i, j));
    };
    std::vector<double> rows;
    rows.reserve((size_t)(s.is + 1));
    for (int i = 0; i <= s.is; ++i) {
      double u = i * h;
      double denom = 2.0 * u + s.hb.offset() - s.hb.t_shift;
      double vhigh = (denom > 0.0) ? std::min(s.hb.v_of_u(u), s.hb.v2) : s.hb.v2;
      int jlow = s.m - i;
      int jfull = (int)std::floor(vhigh / h + 1e-12);
      std::vector<double> vals;
      for (int j = jlow; j <= jfull; ++j) vals.push_back(f(i, j));
      double inner = trapz(vals, h);
      double delta = vhigh - jfull * h;
      if (delta > 1e-12 * h && jfull >= jlow) {
        double fend = f(i, jfull) + (delta / h) * (f(i, jfull + 1) - f(i, jfull));
        inner += 0.5 * delta * (f(i, jfull) + fend);
      }
      rows.push_back(inner);
    }
    out.bulk = kFourPi * trapz(rows, h);
  }

  out.residual = out.sigma_flux + out.F_Hbar - out.F_H0 - out.E_B - out.bulk;
  return out;
}

std::vector<AuditRow> audit_report(const GridState& coarse, const GridState& fine,
                                   const Diamond& d, const std::vector<double>& ps,
                                   const std::vector<double>& gammas) {
  auto order = [](double rc, double rf) {
    if (rf == 0.0 || rc == 0.0) return 0.0;
    return std::log2(std::abs(rc) / std::abs(rf));
  };
  std::vector<AuditRow> rows;
  double hc = coarse.cfg.h;

  {
    double rc = classical_identity_audit(coarse, d).residual;
    double rf = classical_identity_audit(fine, d).residual;
    rows.push_back({"classical", 0.0, d.r1, d.r2, rf, fine.cfg.h, order(rc, rf)});
  }
  for (double p : ps) {
    double rc = rp_weighted_identity_audit(coarse, p, d).residual;
    double rf = rp_weighted_identity_audit(fine, p, d).residual;
    rows.push_back({"r^p-weighted", p, d.r1, d.r2, rf, fine.cfg.h, order(rc, rf)});
  }
  for (double g : gammas) {
    GammaAudit ac = gamma_identity_audit(coarse, g, d);
    GammaAudit af = gamma_identity_audit(fine, g, d);
    double rc = std::max({std::abs(ac.res_H), std::abs(ac.res_Hbar), std::abs(ac.res_B)});
    double rf = std::max({std::abs(af.res_H), std::abs(af.res_Hbar), std::abs(af.res_B)});
    rows.push_back({"r^-gamma", g, d.r1, d.r2, rf, fine.cfg.h, order(rc, rf)});
  }
  {
    double Rs = coarse.cfg.R_star;
    double v2 = (fine.cfg.nv() - 1) * fine.cfg.h;
    v2 = std::floor(v2 / hc) * hc;  // common truncation on both lattices
    double rc = hyperboloid_identity_audit(coarse, Rs, 0.0, v2).residual;
    double rf = hyperboloid_identity_audit(fine, Rs, 0.0, v2).residual;
    rows.push_back({"hyperboloid", Rs, Rs, v2, rf, fine.cfg.h, order(rc, rf)});
  }
  return rows;
}

}  // namespace mkg
