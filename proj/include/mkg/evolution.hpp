#pragma once
#include <cmath>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "mkg/errors.hpp"
#include "mkg/linalg.hpp"

namespace mkg {

using cplx = std::complex<double>;

// Double-null characteristic evolution of the spherically symmetric charged
// scalar field in the gauge A_v = 0, coordinates u = (t-r)/2, v = (t+r)/2,
// r = v - u.  Reduced system for psi = r phi, a_u = A_u, e = r^2 rho:
//   (d_u + i a_u)(d_v psi) = i (e/r^2) psi
//   d_v e   = Im(psi conj(d_v psi))          (evolved Maxwell equation)
//   d_u e   = -r^2 Im(phi conj((d_u + i a_u) phi))   (monitored constraint)
//   d_v a_u = -2 e / r^2                      (gauge reconstruction)
struct EvolConfig {
  double u_max = 10.0;
  double v_max = 40.0;
  double h = 0.1;  // h_u = h_v

  // outgoing data psi(0, v) = amplitude * B((v-v_a)/(v_b-v_a)) * exp(i kappa v)
  double amplitude = 1.0;
  double v_a = 2.0;
  double v_b = 6.0;
  double kappa = 0.0;

  double R_star = 1.0;    // exterior radius parameter (recorded; used by the
                          // exterior-only inner boundary v = u + 2 R_star)
  double epsilon0 = 0.0;  // bookkeeping constant, recorded only
  int stride = 1;         // output decimation for slice writers

  double ceiling = 1e3;   // |psi| blow-up guard
  double gauge_c = 0.0;   // residual gauge: a_u at the start of each u-row
  bool exterior_only = false;

  void validate() const;  // throws ConfigError
  int nu() const { return (int)std::lround(u_max / h); }
  int nv() const { return (int)std::lround(v_max / h); }
};

// One u = const row of the lattice.  Global v index j covers [j0, nv];
// v = j * h, u = iu * h.
struct Row {
  int iu = 0;
  int j0 = 0;
  double h = 0.0;
  std::vector<cplx> psi;
  std::vector<double> e, a_u;

  double u() const { return iu * h; }
  double v(int j) const { return j * h; }
  double r(int j) const { return (j - iu) * h; }
  int jmax() const { return j0 + (int)psi.size() - 1; }
  bool has(int j) const { return j >= j0 && j <= jmax(); }
  const cplx& psi_at(int j) const { return psi[j - j0]; }
  double e_at(int j) const { return e[j - j0]; }
  double a_at(int j) const { return a_u[j - j0]; }
  // centered d_v psi where possible, one-sided at the row ends
  cplx dv_psi(int j) const;
};

struct SeedData {
  Row row0;
  double q0 = 0.0;
};
SeedData seed_initial_data(const EvolConfig& cfg);

// C^4 polynomial bump B(x) = (4 x (1-x))^5 on [0,1], zero outside.
double bump_c4(double x);

// Streamed evolution: the observer sees the seed row and then every computed
// row, in order.  Returns q0.  Throws BlowupError / AxisError.
double evolve(const EvolConfig& cfg, const std::function<void(const Row&)>& observer);

// Full in-memory history for desk-scale runs and the audits.
struct GridState {
  EvolConfig cfg;
  double q0 = 0.0;
  std::vector<Row> rows;  // rows[i] has iu = i

  const Row& row(int iu) const;
  // nearest-node lookup of e(u, v); throws OutOfDomain
  double enclosed_charge(double u, double v) const;
};
GridState evolve_full(const EvolConfig& cfg);

// Max-norm residual of the unevolved (ingoing) Maxwell equation per u-row,
// via centered u-differences on the interior rows.
std::vector<double> constraint_residual(const GridState& st);

double enclosed_charge(const GridState& st, double u, double v);

// --- ray sampling ---------------------------------------------------------------

enum class Quantity { AbsPhi, AbsDLpsi, AbsDLbarPhi, AbsRhoRing, Charge };
enum class RayKind { ConstU, ConstV, Cone };  // Cone: r = c t, i.e. v = u (1+c)/(1-c)

struct Ray {
  RayKind kind = RayKind::ConstU;
  double param = 0.0;  // u0, v0, or c
};

struct RaySample {
  double u_plus, v_plus, value;
};
using DecaySamples = std::vector<RaySample>;

const char* quantity_name(Quantity q);

// Sample a quantity along a ray from a full history; throws OutOfDomain when
// the ray misses the computed lattice entirely.
DecaySamples sample_ray(const GridState& st, Quantity q, const Ray& ray);

// Streaming collector: feed rows in order (keeps a three-row window so that
// u-derivatives can be centered), then collect the same samples as above.
class RayCollector {
 public:
  RayCollector(const EvolConfig& cfg, double q0, Quantity q, const Ray& ray);
  void push(const Row& row);
  void finish();
  const DecaySamples& samples() const { return out_; }

 private:
  void harvest_middle();
  EvolConfig cfg_;
  double q0_;
  Quantity q_;
  Ray ray_;
  std::vector<Row> window_;  // up to 3 rows
  DecaySamples out_;
};

}  // namespace mkg
