#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "mkg/conformal.hpp"
#include "mkg/corpus.hpp"
#include "mkg/fields.hpp"
#include "mkg/geometry.hpp"
#include "mkg/jet.hpp"
#include "mkg/linalg.hpp"

using namespace mkg;

namespace {

// random point inside the chart domain: r < t + R* + 1 with a safety margin
OpticalCoords admissible_point(std::mt19937& rng, const ConformalChart& c) {
  OpticalCoords p = random_point(rng);
  std::uniform_real_distribution<double> margin(0.15, 2.5);
  double t = p.r - c.shift() + margin(rng);
  return optical_coords(t, p.x);
}

double dist4(const Vec4& a, const Vec4& b) {
  double s = 0;
  for (int i = 0; i < 4; ++i) s = std::max(s, std::abs(a[i] - b[i]));
  return s;
}

Vec4 scale4(double s, const Vec4& a) { return {s * a[0], s * a[1], s * a[2], s * a[3]}; }

}  // namespace

TEST_CASE("chart invariants at random admissible points") {
  std::mt19937 rng(11);
  for (double rs : {1.0, 0.5, 2.0}) {
    ConformalChart c{rs};
    for (int i = 0; i < 300; ++i) {
      OpticalCoords p = admissible_point(rng, c);
      double lam = c.Lambda(p.t, p.x);
      REQUIRE(lam > 0.0);
      // Lambda factors through the optical functions
      CHECK(std::abs(lam - 4.0 * c.u_star(p.u) * c.v_star(p.v)) <= 1e-12 * std::abs(lam));
      Event q = map_point(c, p.t, p.x);
      // the conformal factor inverts across the map
      CHECK(std::abs(c.tilde_Lambda(q.t, q.x) * lam - 1.0) <= 1e-12);
      // optical functions map reciprocally
      CHECK(std::abs(c.tilde_u(q.t, q.x) + 1.0 / (4.0 * c.u_star(p.u))) <= 1e-12);
      CHECK(std::abs(c.tilde_v(q.t, q.x) + 1.0 / (4.0 * c.v_star(p.v))) <= 1e-12);
      // time component in closed form
      double w = p.t + c.shift();
      CHECK(std::abs((q.t - c.target_shift()) + w / lam) <= 1e-12);
    }
  }
}

TEST_CASE("round trip and special values") {
  std::mt19937 rng(12);
  ConformalChart c{1.0};
  for (int i = 0; i < 1000; ++i) {
    OpticalCoords p = admissible_point(rng, c);
    Event q = map_point(c, p.t, p.x);
    Event b = inverse_point(c, q.t, q.x);
    double d = std::abs(b.t - p.t);
    for (int k = 0; k < 3; ++k) d = std::max(d, std::abs(b.x[k] - p.x[k]));
    CHECK(d <= 1e-12 * (1.0 + std::abs(p.t) + p.r));
  }
  // spatial origin at t = 0: ttilde = -2/4 + 2/3 = 1/6
  Event o = map_point(c, 0.0, {0, 0, 0});
  CHECK(o.t == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
  CHECK(norm3(o.x) == 0.0);
  // outside the cone of the inversion center: rejected
  CHECK_THROWS_AS(map_point(c, 0.0, {3.0, 0, 0}), DomainError);
  CHECK_THROWS_AS(inverse_point(c, 0.1, {1.0, 0, 0}), DomainError);
  CHECK_THROWS_AS(map_jacobian(c, 0.0, {3.0, 0, 0}), DomainError);
}

TEST_CASE("hyperboloid maps onto a bounded time slice") {
  ConformalChart c{1.0};
  SigmaSurface s = sigma_surface(c);
  for (double r : {1.0, 1.7, 3.0, 10.0, 250.0}) {
    double t = s.t_of_r(r);
    CHECK(c.U(t, {r, 0, 0}) == doctest::Approx(s.U0).epsilon(1e-12));
    Event q = map_point(c, t, {0, r, 0});
    CHECK(std::abs(q.t) <= 1e-13);
    CHECK(norm3(q.x) < c.target_shift());
  }
  // the image radius approaches the cap radius from below at large r
  Event far = map_point(c, s.t_of_r(1e8), {1e8, 0, 0});
  CHECK(norm3(far.x) == doctest::Approx(c.target_shift()).epsilon(1e-6));
}

TEST_CASE("jacobian matches a finite-difference oracle") {
  std::mt19937 rng(13);
  ConformalChart c{1.0};
  for (int i = 0; i < 50; ++i) {
    OpticalCoords p = admissible_point(rng, c);
    Mat4 J = map_jacobian(c, p.t, p.x);
    double hh = 1e-6;
    for (int j = 0; j < 4; ++j) {
      double tp = p.t, tm = p.t;
      Vec3 xp = p.x, xm = p.x;
      if (j == 0) {
        tp += hh;
        tm -= hh;
      } else {
        xp[j - 1] += hh;
        xm[j - 1] -= hh;
      }
      Event qp = map_point(c, tp, xp), qm = map_point(c, tm, xm);
      Vec4 col{(qp.t - qm.t) / (2 * hh), (qp.x[0] - qm.x[0]) / (2 * hh),
               (qp.x[1] - qm.x[1]) / (2 * hh), (qp.x[2] - qm.x[2]) / (2 * hh)};
      for (int k = 0; k < 4; ++k) CHECK(std::abs(col[k] - J[k][j]) <= 1e-6);
    }
  }
}

TEST_CASE("pushforwards of the null frame and the multiplier fields") {
  std::mt19937 rng(14);
  ConformalChart c{1.0};
  for (int i = 0; i < 200; ++i) {
    OpticalCoords p = admissible_point(rng, c);
    Event q = map_point(c, p.t, p.x);
    NullFrame nf = null_frame(p.x);
    NullFrame nft = null_frame(q.x);  // same direction, same deterministic frame
    double tu = c.tilde_u(q.t, q.x), tv = c.tilde_v(q.t, q.x);

    CHECK(dist4(pushforward_vector(c, nf.L, p.t, p.x), scale4(4 * tv * tv, nft.L)) <= 1e-12);
    CHECK(dist4(pushforward_vector(c, nf.Lbar, p.t, p.x), scale4(4 * tu * tu, nft.Lbar)) <=
          1e-12);
    // time translation: 2 vt^2 Lt + 2 ut^2 Lbart
    Vec4 wT{};
    for (int k = 0; k < 4; ++k) wT[k] = 2 * tv * tv * nft.L[k] + 2 * tu * tu * nft.Lbar[k];
    CHECK(dist4(pushforward_vector(c, {1, 0, 0, 0}, p.t, p.x), wT) <= 1e-12);
    // the shifted Morawetz field maps to half a time translation
    double us = c.u_star(p.u), vs = c.v_star(p.v);
    Vec4 Ks{};
    for (int k = 0; k < 4; ++k) Ks[k] = vs * vs * nf.L[k] + us * us * nf.Lbar[k];
    CHECK(dist4(pushforward_vector(c, Ks, p.t, p.x), {0.5, 0, 0, 0}) <= 1e-11);
    // tangent frame vectors scale by 1/Lambda; renormalizing by the target
    // conformal factor restores unit vectors
    double tlam = c.tilde_Lambda(q.t, q.x);
    for (const Vec4& e : {nf.e1, nf.e2}) {
      Vec4 te = scale4(1.0 / tlam, pushforward_vector(c, e, p.t, p.x));
      CHECK(dist4(te, e) <= 1e-12);  // frozen-axis frame is direction-only
      double n2 = -te[0] * te[0] + te[1] * te[1] + te[2] * te[2] + te[3] * te[3];
      CHECK(std::abs(n2 - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("field components transform with the stated optical weights") {
  std::mt19937 rng(15);
  ConformalChart c{1.0};
  for (int i = 0; i < 100; ++i) {
    GaugePair gp = random_gauge_pair(rng);
    OpticalCoords p = admissible_point(rng, c);
    double lam = c.Lambda(p.t, p.x);
    Event q = map_point(c, p.t, p.x);

    TwoForm F = curvature(gp, p);
    NullFrame nf = null_frame(p.x);
    NullDecomp d = null_decompose(F, nf);
    TildeComponents tc = conformal_components(c, d, gp, p);

    // second route: push the 2-form through the map and decompose at the image
    Mat4 J = map_jacobian(c, p.t, p.x);
    Mat4 Jinv{};
    // invert J by Gaussian elimination on an augmented system
    {
      double a[4][8];
      for (int r = 0; r < 4; ++r)
        for (int k = 0; k < 4; ++k) {
          a[r][k] = J[r][k];
          a[r][4 + k] = (r == k) ? 1.0 : 0.0;
        }
      for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int r = col + 1; r < 4; ++r)
          if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        for (int k = 0; k < 8; ++k) std::swap(a[col][k], a[piv][k]);
        double inv = 1.0 / a[col][col];
        for (int k = 0; k < 8; ++k) a[col][k] *= inv;
        for (int r = 0; r < 4; ++r) {
          if (r == col) continue;
          double f = a[r][col];
          for (int k = 0; k < 8; ++k) a[r][k] -= f * a[col][k];
        }
      }
      for (int r = 0; r < 4; ++r)
        for (int k = 0; k < 4; ++k) Jinv[r][k] = a[r][4 + k];
    }
    TwoForm Ft;
    for (int m = 0; m < 4; ++m)
      for (int n = 0; n < 4; ++n) {
        double s = 0;
        for (int al = 0; al < 4; ++al)
          for (int be = 0; be < 4; ++be) s += F.c[al][be] * Jinv[al][m] * Jinv[be][n];
        Ft.c[m][n] = s;
      }
    NullDecomp dt = null_decompose(Ft, null_frame(q.x));

    double scale = std::abs(lam) + 1.0;
    double tol = 1e-9 * scale * scale * scale;
    for (int A = 0; A < 2; ++A) {
      CHECK(std::abs(dt.alpha[A] - tc.alpha[A]) <= tol);
      CHECK(std::abs(dt.alphabar[A] - tc.alphabar[A]) <= tol);
    }
    CHECK(std::abs(dt.rho - tc.rho) <= tol);
    CHECK(std::abs(dt.sigma - tc.sigma) <= tol);
  }
}

TEST_CASE("scalar derivative components match a finite-difference oracle") {
  std::mt19937 rng(16);
  ConformalChart c{1.0};
  auto tilde_phi = [&](const GaugePair& gp, const Event& q) {
    Event b = inverse_point(c, q.t, q.x);
    return c.Lambda(b.t, b.x) * gp.phi(b.t, b.x);
  };
  for (int i = 0; i < 40; ++i) {
    GaugePair gp = random_gauge_pair(rng);
    OpticalCoords p = admissible_point(rng, c);
    Event q = map_point(c, p.t, p.x);
    TwoForm F = curvature(gp, p);
    NullFrame nf = null_frame(p.x);
    TildeComponents tc = conformal_components(c, null_decompose(F, nf), gp, p);

    GaugeJets gj(gp, p);
    CJet4 Dphi = gj.Dphi();
    cplx phi = gj.phi.value();
    auto a_of = [&](const Vec4& Z) {
      double s = 0;
      for (int mu = 0; mu < 4; ++mu) s += Z[mu] * gj.A[mu].value();
      return s;
    };
    // covariant derivative of the mapped scalar along the pushed direction:
    // plain directional derivative by central differences, plus i A(Z) phi
    // (the connection 1-form pairs invariantly with pushed vectors).  This
    // gives the derivative along the *pushed* vector; the components in the
    // header are taken along the renormalized target frame, so each entry
    // carries the corresponding frame multiplier.
    auto oracle = [&](const Vec4& Z) {
      Vec4 tZ = pushforward_vector(c, Z, p.t, p.x);
      double hh = 1e-6;
      Event qp{q.t + hh * tZ[0], {q.x[0] + hh * tZ[1], q.x[1] + hh * tZ[2], q.x[2] + hh * tZ[3]}};
      Event qm{q.t - hh * tZ[0], {q.x[0] - hh * tZ[1], q.x[1] - hh * tZ[2], q.x[2] - hh * tZ[3]}};
      cplx der = (tilde_phi(gp, qp) - tilde_phi(gp, qm)) / (2.0 * hh);
      return der + cplx{0, 1} * a_of(Z) * c.Lambda(p.t, p.x) * phi;
    };
    double us = c.u_star(p.u), vs = c.v_star(p.v);
    double lam2 = c.Lambda(p.t, p.x);
    auto close = [](cplx a, cplx b) { return std::abs(a - b) <= 2e-4 * (1.0 + std::abs(b)); };
    CHECK(close(4.0 * vs * vs * oracle(nf.L), tc.DL_phi));
    CHECK(close(4.0 * us * us * oracle(nf.Lbar), tc.DLbar_phi));
    CHECK(close(lam2 * oracle(nf.e1), tc.DA_phi[0]));
    CHECK(close(lam2 * oracle(nf.e2), tc.DA_phi[1]));
    (void)Dphi;
  }
}

TEST_CASE("derivative correspondence residuals vanish for T, rotations, K") {
  std::mt19937 rng(17);
  for (double rs : {1.0, 2.0}) {
    ConformalChart c{rs};
    for (int i = 0; i < 60; ++i) {
      GaugePair gp = random_gauge_pair(rng);
      OpticalCoords p = admissible_point(rng, c);
      CHECK(derivative_correspondence_residual(c, ZTag::T, gp, p) <= 1e-10);
      CHECK(derivative_correspondence_residual(c, ZTag::K, gp, p) <= 1e-10);
      CHECK(derivative_correspondence_residual(c, ZTag::O12, gp, p) <= 1e-10);
      CHECK(derivative_correspondence_residual(c, ZTag::O23, gp, p) <= 1e-10);
      CHECK(derivative_correspondence_residual(c, ZTag::O31, gp, p) <= 1e-10);
    }
  }
  ConformalChart c{1.0};
  GaugePair gp = random_gauge_pair(rng);
  CHECK_THROWS_AS(derivative_correspondence_residual(c, ZTag::S, gp, optical_coords(2, {1, 0, 0})),
                  DomainError);
  CHECK_THROWS_AS(derivative_correspondence_residual(c, ZTag::T, gp, optical_coords(0, {4, 0, 0})),
                  DomainError);
}

TEST_CASE("mapped monopole density stays bounded toward null infinity") {
  ConformalChart c{1.0};
  ChargeMoments m{};
  m.q0 = 1.0;
  GaugePair vac{};  // zero scalar: only the 2-form weights matter here
  double u = 0.3;  // fixed retarded time, v -> infinity
  double prev = 1e300, last = 0;
  for (double v = 5.0; v <= 5e4; v *= 4.0) {
    double r = v - u;
    OpticalCoords p = optical_coords(u + v, {r, 0, 0});
    NullDecomp d = null_decompose(charge_two_form(m, p), null_frame(p.x));
    TildeComponents tc = conformal_components(c, d, vac, p);
    // rho tilde = 16 u*^2 (v*/r)^2 q0: decreasing toward the limit 16 u*^2 q0
    CHECK(std::abs(tc.rho) <= prev + 1e-12);
    prev = std::abs(tc.rho);
    last = tc.rho;
  }
  double us = c.u_star(u);
  CHECK(last == doctest::Approx(16.0 * us * us).epsilon(1e-3));
}

TEST_CASE("surface geometry: graph, measure, and contraction") {
  for (double rs : {1.0, 0.5, 3.0}) {
    ConformalChart c{rs};
    SigmaSurface s = sigma_surface(c);
    // passes through the anchor sphere
    CHECK(std::abs(s.t_of_r(rs)) <= 1e-13);
    CHECK(s.V_min() == doctest::Approx(std::sqrt(s.U0 * s.U0 + 2 * rs * rs)).epsilon(1e-14));
    for (double r : {rs, 2.0, 7.5, 40.0}) {
      double V = s.V_of_r(r);
      CHECK(s.r_of_V(V) == doctest::Approx(r).epsilon(1e-13));
      double ts = s.t_star_of_r(r);
      // V^2 = t*^2 + r^2 on the surface
      CHECK(V * V == doctest::Approx(ts * ts + r * r).epsilon(1e-14));
      // the dV-density equals twice the Euclidean graph density: the
      // parameterization doubles the speed relative to arc length in r
      CHECK(s.measure_density(V) ==
            doctest::Approx(2.0 * s.measure_density_graph(V)).epsilon(1e-13));
      // contraction closed forms for the two basic null directions:
      // time translation has both null components equal to -1
      CHECK(s.contraction(V, -1.0, -1.0) == doctest::Approx(r * V / 2.0).epsilon(1e-13));
      // outgoing null direction: m(L, L) = 0, m(Lbar, L) = -2
      CHECK(s.contraction(V, 0.0, -2.0) ==
            doctest::Approx(r * V * (ts - r) / (2.0 * ts)).epsilon(1e-13));
    }
    CHECK_THROWS_AS(s.r_of_V(0.5 * s.U0), DomainError);
  }
}

TEST_CASE("reciprocal quadratic weights solve the wave equation") {
  // gamma = ((t+C)^2 - |x|^2)^(-1) has zero d'Alembertian away from the cone;
  // this underlies the chart's compatibility with the wave operator
  std::mt19937 rng(18);
  ConformalChart c{1.0};
  for (int i = 0; i < 100; ++i) {
    OpticalCoords p = admissible_point(rng, c);
    RJet t = RJet::variable(0, p.t);
    RJet x1 = RJet::variable(1, p.x[0]);
    RJet x2 = RJet::variable(2, p.x[1]);
    RJet x3 = RJet::variable(3, p.x[2]);
    RJet w = t + c.shift();
    RJet lam = w * w - (x1 * x1 + x2 * x2 + x3 * x3);
    RJet g = pow(lam, -1.0);
    double box = -g.partial(2, 0, 0, 0) + g.partial(0, 2, 0, 0) + g.partial(0, 0, 2, 0) +
                 g.partial(0, 0, 0, 2);
    double scale = std::abs(g.partial(2, 0, 0, 0)) + std::abs(g.partial(0, 2, 0, 0));
    CHECK(std::abs(box) <= 1e-11 * (1.0 + scale));
  }
}

TEST_CASE("charge energy: scaling, monotonicity, and saturation") {
  ConformalChart c{1.0};
  SigmaSurface s = sigma_surface(c);
  ChargeMoments zero{};
  CHECK(conformal_charge_energy(c, zero, 10.0) == 0.0);
  CHECK_THROWS_AS(conformal_charge_energy(c, zero, 0.9 * s.V_min()), DomainError);

  ChargeMoments m{};
  m.q0 = 1.0;
  double e1 = conformal_charge_energy(c, m, 1e3);
  double e2 = conformal_charge_energy(c, m, 1e4);
  CHECK(e1 > 0.0);
  CHECK(e2 >= e1);
  // the tail beyond V = 1e3 contributes less than one percent
  CHECK((e2 - e1) / e2 <= 0.01);

  m.q0 = -3.0;
  CHECK(conformal_charge_energy(c, m, 1e3) == doctest::Approx(9.0 * e1).epsilon(1e-12));

  // anisotropic moments: still monotone in the cutoff
  ChargeMoments an{};
  an.q0 = 0.7;
  an.dipole = {0.2, -0.1, 0.3};
  an.quad[0][0] = 0.4;
  an.quad[1][1] = -0.1;
  an.quad[2][2] = -0.3;
  an.quad[0][1] = an.quad[1][0] = 0.2;
  double prev = 0.0;
  for (double Vc = 2.0; Vc <= 20.0; Vc += 1.7) {
    double e = conformal_charge_energy(c, an, Vc);
    CHECK(e >= prev);
    prev = e;
  }
  CHECK(prev > 0.0);
}

TEST_CASE("charge energy is deterministic") {
  ConformalChart c{1.0};
  ChargeMoments m{};
  m.q0 = 1.25;
  m.dipole = {0.1, 0.2, -0.3};
  double a = conformal_charge_energy(c, m, 50.0);
  double b = conformal_charge_energy(c, m, 50.0);
  CHECK(a == b);
}
