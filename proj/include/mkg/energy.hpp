#pragma once
#include <string>
#include <vector>

#include "mkg/errors.hpp"
#include "mkg/evolution.hpp"

namespace mkg {

// A causal diamond in the computed domain: bottom slice at t = t0 spanning
// radii [r1, r2], bounded by the outgoing cone from the inner sphere and the
// ingoing cone from the outer sphere.
struct Diamond {
  double r1 = 0;
  double r2 = 0;
  double t0 = 0;  // time of the bottom slice; 0 means "use r2"
  double time() const { return t0 > 0 ? t0 : r2; }
};

enum class SurfaceKind { OutgoingCone, IngoingCone, TimeSlice };

// Slice energy, null fluxes, and the r^p-weighted energy of a diamond,
// including the signed weighted error integral.
struct EnergyLedger {
  double E_B = 0;
  double F_H = 0;
  double F_Hbar = 0;
  double Ep = 0;
  double Err_p = 0;
};

// Energy flux of the time-translation current through one face of the
// diamond (reduced spherically symmetric components, 4*pi included).
double flux(const GridState& st, SurfaceKind surface, const Diamond& d);

EnergyLedger energy_ledger(const GridState& st, const Diamond& d, double p);

struct ClassicalAudit {
  double F_H = 0;
  double F_Hbar = 0;
  double E_B = 0;
  double bulk_scalar = 0;
  double bulk_maxwell = 0;
  double residual = 0;
};

// Audit of the classical energy identity over the diamond: outgoing plus
// ingoing flux balances the bottom-slice energy up to the scalar/Maxwell
// exchange bulk terms (which cancel in the continuum on-shell).
ClassicalAudit classical_identity_audit(const GridState& st, const Diamond& d);

struct RpAudit {
  double lhs_B = 0;
  double flux_H = 0;
  double flux_Hbar = 0;
  double bulk = 0;
  double err_scalar = 0;   // charge coupling evaluated through the field current
  double err_maxwell = 0;  // same coupling evaluated through the flux derivative
  double residual = 0;
};

// Audit of the r^p-weighted energy identity (p in [0,2]) over the diamond.
RpAudit rp_weighted_identity_audit(const GridState& st, double p, const Diamond& d);

struct GammaAudit {
  double res_H = 0;
  double res_Hbar = 0;
  double res_B = 0;
};

// Audit of the three exact r^{-gamma} integration-by-parts identities
// (outgoing cone, ingoing cone, time slice) over the diamond; gamma != 3.
GammaAudit gamma_identity_audit(const GridState& st, double gamma, const Diamond& d);

// Spacelike hyperboloid used for interior energy bookkeeping: the unique
// hyperboloid through the sphere r = R_star at t = t_shift, asymptotic to the
// outgoing cone of radius R_star + 1/(2 R_star + 2).
struct Hyperboloid {
  double R_star = 1.0;
  double t_shift = 0.0;  // time translation placing the surface in the domain
  double v2 = 0.0;       // truncation at v = v2; 0 means "largest usable"

  double offset() const;       // d: asymptotic cone radius R_star + 1/(2R_star+2)
  double u0_sq() const;        // square of the defining U-level
  double u_of_v(double v) const;  // u-coordinate of the surface at given v
  double v_of_u(double u) const;
  double t_star(double u, double v) const;  // t - t_shift + offset
};

// Weighted energy flux through the (truncated) hyperboloid, quadrature of the
// displayed surface integrand.
double hyperboloid_flux(const GridState& st, double R_star, double t_shift = 0.0,
                        double v2 = 0.0);

struct HyperboloidAudit {
  double sigma_flux = 0;  // flux through the truncated hyperboloid
  double F_H0 = 0;        // flux entering through the data cone u = 0
  double F_Hbar = 0;      // flux leaving through the closure edge v = v2
  double E_B = 0;         // energy on the slice t = t_shift, r >= R_star
  double bulk = 0;        // discrete scalar/Maxwell exchange terms
  double residual = 0;
};

// Audit of the energy identity over the region bounded below by the slice
// t = t_shift (r >= R_star) and the data cone u = 0, and above by the
// truncated hyperboloid and its closure edge v = v2.
HyperboloidAudit hyperboloid_identity_audit(const GridState& st, double R_star,
                                            double t_shift = 0.0, double v2 = 0.0);

// One row of the audit report CSV.
struct AuditRow {
  std::string identity;
  double parameter = 0;  // p or gamma (0 when not applicable)
  double r1 = 0, r2 = 0;
  double residual = 0;
  double h = 0;
  double estimated_order = 0;
};

// Runs every audit on a coarse/fine pair of states and estimates orders.
std::vector<AuditRow> audit_report(const GridState& coarse, const GridState& fine,
                                   const Diamond& d, const std::vector<double>& ps,
                                   const std::vector<double>& gammas);

}  // namespace mkg
