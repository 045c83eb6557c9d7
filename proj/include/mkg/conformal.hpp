#pragma once
#include <array>
#include <complex>

#include "mkg/errors.hpp"
#include "mkg/fields.hpp"
#include "mkg/geometry.hpp"
#include "mkg/linalg.hpp"

namespace mkg {

// Inversion-based compactification: the composition of the standard inversion
// centered at t = -(R*+1) with a time translation on the target.  It maps the
// causal future of the hyperboloid through the sphere r = R* at t = 0 onto a
// bounded backward light cone, with conformal factor Lambda.
struct ConformalChart {
  double R_star = 1.0;

  double shift() const { return R_star + 1.0; }           // inversion center offset
  double target_shift() const { return (R_star + 1.0) / (2.0 * R_star + 1.0); }
  double sigma_U() const { return (2.0 * R_star + 1.0) / (2.0 * (R_star + 1.0)); }

  double Lambda(double t, const Vec3& x) const {
    double w = t + shift();
    return w * w - dot3(x, x);
  }
  double u_star(double u) const { return u + 0.5 * shift(); }
  double v_star(double v) const { return v + 0.5 * shift(); }
  double t_star(double t) const { return t + R_star + 1.0 / (2.0 * R_star + 2.0); }

  // hyperboloidal coordinates (defined where t_star^2 >= r^2 for U)
  double U(double t, const Vec3& x) const;
  double V(double t, const Vec3& x) const;

  // target-side optical functions and conformal factor
  double tilde_Lambda(double tt, const Vec3& tx) const {
    double tau = tt - target_shift();
    return tau * tau - dot3(tx, tx);
  }
  double tilde_u(double tt, const Vec3& tx) const {
    return 0.5 * (tt - target_shift() - norm3(tx));
  }
  double tilde_v(double tt, const Vec3& tx) const {
    return 0.5 * (tt - target_shift() + norm3(tx));
  }
};

struct Event {
  double t = 0;
  Vec3 x{0, 0, 0};
};

Event map_point(const ConformalChart& c, double t, const Vec3& x);        // DomainError
Event inverse_point(const ConformalChart& c, double tt, const Vec3& tx);  // DomainError

using Mat4 = std::array<Vec4, 4>;  // row-major, index order (t, x1, x2, x3)

// Jacobian d(tilde coords)/d(coords) of the forward map at (t, x).
Mat4 map_jacobian(const ConformalChart& c, double t, const Vec3& x);

// Functorial pushforward: Jacobian times vector, attached at the image point.
Vec4 pushforward_vector(const ConformalChart& c, const Vec4& W, double t, const Vec3& x);

// Null components of the corresponding fields on the target, from the null
// decomposition of G and the covariant derivatives of phi at one point.
struct TildeComponents {
  std::array<double, 2> alpha{}, alphabar{};
  double rho = 0, sigma = 0;
  cplx DL_phi{}, DLbar_phi{};
  std::array<cplx, 2> DA_phi{};
};
TildeComponents conformal_components(const ConformalChart& c, const NullDecomp& d,
                                     const GaugePair& gp, const OpticalCoords& p);

// Residual of the derivative correspondence for Z in {T, rotations, K}: the
// tilde of the conjugated derivative r^{-1} D_Z(r f) against the derivative of
// the corresponding field along the pushed-forward Z plus the zeroth-order
// correction in target coordinates.  Throws DomainError for the scaling field
// (no clean correspondence) and when Lambda <= 0.
double derivative_correspondence_residual(const ConformalChart& c, ZTag z,
                                          const GaugePair& gp, const OpticalCoords& p);

// The hyperboloid through the sphere r = R* at t = 0, as a graph over space,
// with its V-parameterization, measure, and flux-contraction weights.
struct SigmaSurface {
  double R_star = 1.0;
  double U0 = 0;  // the defining level U = U0

  double t_of_r(double r) const;         // graph function
  double t_star_of_r(double r) const { return std::sqrt(U0 * U0 + r * r); }
  double V_of_r(double r) const { return std::sqrt(U0 * U0 + 2.0 * r * r); }
  double r_of_V(double V) const;         // DomainError if V < U0
  double V_min() const { return V_of_r(R_star); }  // start of Sigma_+

  // dV-density of the surface measure (per unit solid angle), and the same
  // density recomputed through the Euclidean graph formula sqrt(1+|grad g|^2).
  double measure_density(double V) const;
  double measure_density_graph(double V) const;

  // pullback of i_J dvol onto the surface, per dV dtheta, from the null
  // components J_L = m(J, L), J_Lbar = m(J, Lbar) of the contracted field
  double contraction(double V, double J_L, double J_Lbar) const;
};
SigmaSurface sigma_surface(const ConformalChart& c);

// Conformal energy of the pure charge field on Sigma_+ up to V = V_cutoff:
// quadrature of the weighted null components of the charge 2-form against the
// surface measure.  Monotone nondecreasing and Cauchy in V_cutoff.
double conformal_charge_energy(const ConformalChart& c, const ChargeMoments& m,
                               double V_cutoff);

}  // namespace mkg
