#pragma once
#include <random>

#include "mkg/fields.hpp"

namespace mkg {

// Seeded generators for the reproducible test corpus.  Scales are bounded so
// that order-4 derivatives stay well conditioned: wide envelopes, low
// frequencies, small polynomial degrees, base points away from the axis.
inline WavePacket random_packet(std::mt19937& rng, bool complex_phase) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  std::uniform_int_distribution<int> P(0, 2);
  WavePacket p;
  p.coef = complex_phase ? cplx(U(rng), U(rng)) : cplx(U(rng), 0.0);
  int budget = P(rng);  // total polynomial degree <= 2
  for (int i = 0; i < budget; ++i) p.pows[std::uniform_int_distribution<int>(0, 3)(rng)]++;
  p.center = {2.0 * U(rng), 2.0 * U(rng), 2.0 * U(rng)};
  p.width = 1.6 + 1.5 * std::abs(U(rng));
  if (complex_phase) {
    p.k = {1.2 * U(rng), 1.2 * U(rng), 1.2 * U(rng)};
    p.omega = 1.2 * U(rng);
  }
  return p;
}

inline ScalarField random_scalar(std::mt19937& rng, int nterms, bool complex_phase) {
  ScalarField f;
  for (int i = 0; i < nterms; ++i) f.terms.push_back(random_packet(rng, complex_phase));
  return f;
}

inline GaugePair random_gauge_pair(std::mt19937& rng) {
  GaugePair gp;
  gp.phi = random_scalar(rng, 2, true);
  for (int m = 0; m < 4; ++m) gp.A[m].f = random_scalar(rng, 2, true);
  return gp;
}

// base points with r in [1.5, 6], t in [-3, 3]
inline OpticalCoords random_point(std::mt19937& rng) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  while (true) {
    Vec3 x = {6.0 * U(rng), 6.0 * U(rng), 6.0 * U(rng)};
    double r = norm3(x);
    if (r < 1.5 || r > 6.0) continue;
    return optical_coords(3.0 * U(rng), x);
  }
}

}  // namespace mkg
