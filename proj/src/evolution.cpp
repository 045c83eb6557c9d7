#include "mkg/evolution.hpp"

#include <algorithm>
#include <cmath>

namespace mkg {

void EvolConfig::validate() const {
  if (!(h > 0.0)) throw ConfigError("step h must be positive");
  if (!(u_max > 0.0) || !(v_max > 0.0)) throw ConfigError("extents must be positive");
  if (!(v_a < v_b)) throw ConfigError("data support needs v_a < v_b");
  if (v_a < 0.0 || v_b > v_max) throw ConfigError("data support outside [0, v_max]");
  if (!(R_star >= 1.0)) throw ConfigError("R_star must be >= 1");
  if (stride < 1) throw ConfigError("stride must be >= 1");
  if (!(ceiling > 0.0)) throw ConfigError("ceiling must be positive");
  double cells = (u_max / h) * (v_max / h);
  if (cells > 4e9) throw ConfigError("grid too large");
}

double bump_c4(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  double b = 4.0 * x * (1.0 - x);
  double b2 = b * b;
  return b2 * b2 * b;
}

cplx Row::dv_psi(int j) const {
  int k = j - j0;
  int n = (int)psi.size();
  double inv = 1.0 / (2.0 * h);
  if (k > 0 && k + 1 < n) return (psi[k + 1] - psi[k - 1]) * inv;
  if (k == 0 && n >= 3) return (-3.0 * psi[0] + 4.0 * psi[1] - psi[2]) * inv;
  if (k + 1 == n && n >= 3) return (3.0 * psi[k] - 4.0 * psi[k - 1] + psi[k - 2]) * inv;
  if (n >= 2) return (psi[std::min(k + 1, n - 1)] - psi[std::max(k - 1, 0)]) / h;
  return {0.0, 0.0};
}

namespace {

// first global v index of the row at u index iu
int row_start(const EvolConfig& cfg, int iu) {
  if (!cfg.exterior_only) return iu;  // axis v = u
  return iu + (int)std::lround(2.0 * cfg.R_star / cfg.h);
}

cplx data_packet(const EvolConfig& cfg, double v) {
  double s = (v - cfg.v_a) / (cfg.v_b - cfg.v_a);
  double env = cfg.amplitude * bump_c4(s);
  return env * std::exp(cplx(0.0, cfg.kappa * v));
}


}  // namespace

SeedData seed_initial_data(const EvolConfig& cfg) {
  cfg.validate();
  SeedData sd;
  Row& row = sd.row0;
  row.iu = 0;
  row.j0 = row_start(cfg, 0);
  row.h = cfg.h;
  int n = cfg.nv() - row.j0 + 1;
  if (n < 3) throw ConfigError("v range too small");
  row.psi.resize(n);
  row.e.resize(n);
  row.a_u.resize(n);
  for (int k = 0; k < n; ++k) row.psi[k] = data_packet(cfg, row.v(row.j0 + k));
  row.psi[0] = {0.0, 0.0};  // axis / inner-boundary regularity
  // e by trapezoid of d_v e = Im(psi conj d_v psi), panel by panel with the
  // same derivative stencils the evolution uses along a row (centered at the
  // left node, backward at the right node), so the discretization error is
  // continuous across the data surface
  const double h = cfg.h;
  row.e[0] = 0.0;
  for (int k = 1; k < n; ++k) {
    cplx dpsL, dpsR;
    if (k == 1) {
      dpsL = dpsR = (row.psi[1] - row.psi[0]) / h;
    } else {
      dpsL = (row.psi[k] - row.psi[k - 2]) / (2.0 * h);
      dpsR = (3.0 * row.psi[k] - 4.0 * row.psi[k - 1] + row.psi[k - 2]) / (2.0 * h);
    }
    double fL = std::imag(row.psi[k - 1] * std::conj(dpsL));
    double fR = std::imag(row.psi[k] * std::conj(dpsR));
    row.e[k] = row.e[k - 1] + 0.5 * h * (fL + fR);
  }
  // a_u by trapezoid of d_v a_u = -2 e / r^2, a_u = gauge_c at the row start
  row.a_u[0] = cfg.gauge_c;
  auto g = [&](int k) {
    double r = row.r(row.j0 + k);
    return -2.0 * row.e[k] / (r * r);
  };
  for (int k = 1; k < n; ++k) {
    double gl = (row.r(row.j0 + k - 1) < 0.5 * cfg.h) ? g(k) : g(k - 1);
    row.a_u[k] = row.a_u[k - 1] + 0.5 * cfg.h * (gl + g(k));
  }
  sd.q0 = row.e[n - 1];
  return sd;
}

double evolve(const EvolConfig& cfg, const std::function<void(const Row&)>& observer) {
  SeedData sd = seed_initial_data(cfg);
  Row cur = std::move(sd.row0);
  if (observer) observer(cur);
  const double h = cfg.h;
  const int nu = cfg.nu();
  const int nv = cfg.nv();

  for (int i = 0; i < nu; ++i) {
    Row next;
    next.iu = i + 1;
    next.j0 = row_start(cfg, i + 1);
    next.h = h;
    int n = nv - next.j0 + 1;
    if (n < 2) break;  // the lattice has narrowed away
    next.psi.assign(n, cplx{});
    next.e.assign(n, 0.0);
    next.a_u.assign(n, 0.0);
    next.a_u[0] = cfg.gauge_c;

    // axis / inner-boundary values: psi = 0, e = 0
    for (int j = next.j0; j < nv; ++j) {
      // diamond with corners S=(i,j), E=(i,j+1), W=(i+1,j), N=(i+1,j+1)
      cplx psiS = cur.psi_at(j), psiE = cur.psi_at(j + 1), psiW = next.psi_at(j);
      double eS = cur.e_at(j), eE = cur.e_at(j + 1), eW = next.e_at(j);
      double aS = cur.a_at(j), aE = cur.a_at(j + 1), aW = next.a_at(j);
      double rc = (j - i) * h;  // v - u at the cell center
      // Integrating-factor diamond: with mu = exp(i int a_u du) the equation
      // is d_u(mu d_v psi) = i rho mu psi, integrated over the null cell.
      // Exactly covariant under the constant residual-gauge shift a_u -> a_u + c,
      // psi -> exp(-i c u) psi.
      auto cell_update = [&](cplx psiN, double eN, double aN) {
        double ac = 0.25 * (aS + aE + aW + aN);
        double ec = 0.25 * (eS + eE + eW + eN);
        double rhoc = ec / (rc * rc);
        cplx M = std::polar(1.0, h * ac);
        cplx psibar = 0.25 * (psiS + psiE) + M * 0.25 * (psiW + psiN);
        return psiW + std::conj(M) * (psiE - psiS + h * h * cplx(0.0, rhoc) * psibar);
      };
      // predictor: free transport with extrapolated gauge data, one corrector pass
      double eN = eW + eE - eS;
      double aN = aW + aE - aS;
      cplx M0 = std::polar(1.0, h * 0.25 * (aS + aE + aW + aN));
      cplx psiN = psiW + std::conj(M0) * (psiE - psiS);
      psiN = cell_update(psiN, eN, aN);

      // evolved Maxwell equation along the new row: d_v e = Im(psi conj d_v psi)
      int kW = j - next.j0;
      cplx dpsiW = (kW > 0) ? (psiN - next.psi[kW - 1]) / (2.0 * h) : (psiN - psiW) / h;
      cplx dpsiN = (kW > 0) ? (3.0 * psiN - 4.0 * psiW + next.psi[kW - 1]) / (2.0 * h)
                            : (psiN - psiW) / h;
      double fW = std::imag(psiW * std::conj(dpsiW));
      double fN = std::imag(psiN * std::conj(dpsiN));
      eN = eW + 0.5 * h * (fW + fN);

      // gauge reconstruction: d_v a_u = -2 e / r^2
      double rW = (j - (i + 1)) * h, rN = rW + h;
      double gN = -2.0 * eN / (rN * rN);
      double gW = (rW < 0.5 * h) ? gN : -2.0 * eW / (rW * rW);
      aN = aW + 0.5 * h * (gW + gN);

      // corrector with the updated Maxwell/gauge values
      psiN = cell_update(psiN, eN, aN);

      if (!(std::abs(psiN) <= cfg.ceiling))
        throw BlowupError("psi exceeded ceiling at u=" + std::to_string(next.u()) +
                          " v=" + std::to_string(next.v(j + 1)));
      next.psi[kW + 1] = psiN;
      next.e[kW + 1] = eN;
      next.a_u[kW + 1] = aN;
    }
    // axis regularity monitor: |phi| at the first off-axis point
    if (!cfg.exterior_only && (int)next.psi.size() >= 2) {
      double phi1 = std::abs(next.psi[1]) / h;
      if (!(phi1 <= cfg.ceiling))
        throw AxisError("regularity violated at u=" + std::to_string(next.u()));
    }
    cur = std::move(next);
    if (observer) observer(cur);
  }
  return sd.q0;
}

GridState evolve_full(const EvolConfig& cfg) {
  GridState st;
  st.cfg = cfg;
  st.q0 = evolve(cfg, [&](const Row& r) { st.rows.push_back(r); });
  return st;
}

const Row& GridState::row(int iu) const {
  if (iu < 0 || iu >= (int)rows.size()) throw OutOfDomain("row index");
  return rows[iu];
}

namespace {

// nearest lattice index, rejecting coordinates that are not grid-aligned
int lattice_index(double x, double h, const char* what) {
  double t = x / h;
  long j = std::lround(t);
  if (std::abs(t - (double)j) > 1e-9 * std::max(1.0, std::abs(t)))
    throw OutOfDomain(std::string(what) + " is not on the lattice");
  return (int)j;
}

}  // namespace

double GridState::enclosed_charge(double u, double v) const {
  int iu = lattice_index(u, cfg.h, "u");
  int j = lattice_index(v, cfg.h, "v");
  if (iu < 0 || iu >= (int)rows.size()) throw OutOfDomain("u off the lattice");
  const Row& r = rows[iu];
  if (!r.has(j)) throw OutOfDomain("v off the lattice");
  return r.e_at(j);
}

double enclosed_charge(const GridState& st, double u, double v) {
  return st.enclosed_charge(u, v);
}

std::vector<double> constraint_residual(const GridState& st) {
  // residual of d_u e + r^2 Im(phi conj((d_u + i a_u) phi)) = 0, centered in u
  std::vector<double> out(st.rows.size(), 0.0);
  const double h = st.cfg.h;
  for (size_t i = 1; i + 1 < st.rows.size(); ++i) {
    const Row& prev = st.rows[i - 1];
    const Row& curr = st.rows[i];
    const Row& next = st.rows[i + 1];
    double worst = 0.0;
    for (int j = curr.j0; j <= curr.jmax(); ++j) {
      if (!prev.has(j) || !next.has(j)) continue;
      double r = curr.r(j);
      if (r < 1.5 * h) continue;  // phi = psi/r is not sampled at the axis
      double due = (next.e_at(j) - prev.e_at(j)) / (2.0 * h);
      cplx phi = curr.psi_at(j) / r;
      cplx phi_p = prev.psi_at(j) / prev.r(j);
      cplx phi_n = next.psi_at(j) / next.r(j);
      cplx duphi = (phi_n - phi_p) / (2.0 * h) + cplx(0.0, curr.a_at(j)) * phi;
      double res = due + r * r * std::imag(phi * std::conj(duphi));
      worst = std::max(worst, std::abs(res));
    }
    out[i] = worst;
  }
  return out;
}

// --- ray sampling ---------------------------------------------------------------

const char* quantity_name(Quantity q) {
  switch (q) {
    case Quantity::AbsPhi: return "abs_phi";
    case Quantity::AbsDLpsi: return "abs_DL_psi";
    case Quantity::AbsDLbarPhi: return "abs_DLbar_phi";
    case Quantity::AbsRhoRing: return "abs_rho_ring";
    case Quantity::Charge: return "charge";
  }
  return "?";
}

namespace {

// evaluate a quantity at row `cur`, global index j, with u-neighbors when given
bool eval_quantity(Quantity q, double q0, const Row* prev, const Row& cur,
                   const Row* next, int j, double& value) {
  double h = cur.h;
  double r = cur.r(j);
  switch (q) {
    case Quantity::Charge:
      value = cur.e_at(j);
      return true;
    case Quantity::AbsDLpsi:
      value = std::abs(cur.dv_psi(j));
      return true;
    case Quantity::AbsPhi:
      if (r < 0.5 * h) return false;
      value = std::abs(cur.psi_at(j)) / r;
      return true;
    case Quantity::AbsRhoRing: {
      if (r < 0.5 * h) return false;
      double t = cur.u() + cur.v(j);
      double rho = cur.e_at(j) / (r * r);
      if (1.0 + t <= r) rho -= q0 / (r * r);
      value = std::abs(rho);
      return true;
    }
    case Quantity::AbsDLbarPhi: {
      if (r < 1.5 * h) return false;
      const Row* a = prev;
      const Row* b = next;
      double span = 2.0 * h;
      if (!a) {
        a = &cur;
        span = h;
      }
      if (!b) {
        b = &cur;
        span = h;
      }
      if (a == b) return false;
      if (!a->has(j) || !b->has(j)) return false;
      if (a->r(j) < 0.5 * h || b->r(j) < 0.5 * h) return false;
      cplx phi = cur.psi_at(j) / r;
      cplx duphi = (b->psi_at(j) / b->r(j) - a->psi_at(j) / a->r(j)) / span;
      value = std::abs(duphi + cplx(0.0, cur.a_at(j)) * phi);
      return true;
    }
  }
  return false;
}

bool ray_index(const Ray& ray, const EvolConfig& cfg, int iu, int& j) {
  switch (ray.kind) {
    case RayKind::ConstU:
      return false;  // handled separately
    case RayKind::ConstV:
      j = lattice_index(ray.param, cfg.h, "v ray");
      return true;
    case RayKind::Cone: {
      double c = ray.param;
      if (!(c > 0.0) || !(c < 1.0)) throw OutOfDomain("cone slope must be in (0,1)");
      double ratio = (1.0 + c) / (1.0 - c);
      j = (int)std::lround(iu * ratio);
      return true;
    }
  }
  return false;
}

RaySample make_sample(const Row& cur, int j, double value) {
  double u = cur.u(), v = cur.v(j);
  return {1.0 + std::abs(u), 1.0 + std::abs(v), value};
}

}  // namespace

DecaySamples sample_ray(const GridState& st, Quantity q, const Ray& ray) {
  DecaySamples out;
  int nrows = (int)st.rows.size();
  if (nrows == 0) throw OutOfDomain("empty history");
  if (ray.kind == RayKind::ConstU) {
    int iu = lattice_index(ray.param, st.cfg.h, "u ray");
    if (iu < 0 || iu >= nrows) throw OutOfDomain("u ray off the lattice");
    const Row& cur = st.rows[iu];
    const Row* prev = iu > 0 ? &st.rows[iu - 1] : nullptr;
    const Row* next = iu + 1 < nrows ? &st.rows[iu + 1] : nullptr;
    for (int j = cur.j0; j <= cur.jmax(); ++j) {
      double val;
      if (eval_quantity(q, st.q0, prev, cur, next, j, val))
        out.push_back(make_sample(cur, j, val));
    }
  } else {
    for (int iu = 0; iu < nrows; ++iu) {
      const Row& cur = st.rows[iu];
      int j;
      if (!ray_index(ray, st.cfg, iu, j)) continue;
      if (!cur.has(j)) continue;
      const Row* prev = iu > 0 ? &st.rows[iu - 1] : nullptr;
      const Row* next = iu + 1 < nrows ? &st.rows[iu + 1] : nullptr;
      double val;
      if (eval_quantity(q, st.q0, prev, cur, next, j, val))
        out.push_back(make_sample(cur, j, val));
    }
    if (out.empty()) throw OutOfDomain("ray misses the lattice");
  }
  return out;
}

RayCollector::RayCollector(const EvolConfig& cfg, double q0, Quantity q, const Ray& ray)
    : cfg_(cfg), q0_(q0), q_(q), ray_(ray) {}

void RayCollector::harvest_middle() {
  int n = (int)window_.size();
  if (n < 2) return;
  int mid = n - 2;  // the row with both neighbors available (or the first row)
  const Row& cur = window_[mid];
  const Row* prev = mid > 0 ? &window_[mid - 1] : nullptr;
  const Row* next = &window_[mid + 1];
  if (ray_.kind == RayKind::ConstU) {
    int iu = (int)std::lround(ray_.param / cfg_.h);
    if (cur.iu != iu) return;
    for (int j = cur.j0; j <= cur.jmax(); ++j) {
      double val;
      if (eval_quantity(q_, q0_, prev, cur, next, j, val))
        out_.push_back(make_sample(cur, j, val));
    }
    return;
  }
  int j;
  if (!ray_index(ray_, cfg_, cur.iu, j)) return;
  if (!cur.has(j)) return;
  double val;
  if (eval_quantity(q_, q0_, prev, cur, next, j, val))
    out_.push_back(make_sample(cur, j, val));
}

void RayCollector::push(const Row& row) {
  window_.push_back(row);
  if ((int)window_.size() > 3) window_.erase(window_.begin());
  harvest_middle();
}

void RayCollector::finish() {
  // the final row has no successor; sample it one-sided
  if (window_.empty()) return;
  const Row& cur = window_.back();
  const Row* prev = window_.size() >= 2 ? &window_[window_.size() - 2] : nullptr;
  auto emit = [&](int j) {
    double val;
    if (eval_quantity(q_, q0_, prev, cur, nullptr, j, val))
      out_.push_back(make_sample(cur, j, val));
  };
  if (ray_.kind == RayKind::ConstU) {
    int iu = (int)std::lround(ray_.param / cfg_.h);
    if (cur.iu == iu)
      for (int j = cur.j0; j <= cur.jmax(); ++j) emit(j);
    return;
  }
  int j;
  if (ray_index(ray_, cfg_, cur.iu, j) && cur.has(j)) emit(j);
}

}  // namespace mkg
