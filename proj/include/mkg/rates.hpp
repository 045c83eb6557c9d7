#pragma once
#include <string>
#include <vector>

#include "mkg/errors.hpp"
#include "mkg/evolution.hpp"

namespace mkg {

// Which optical weight varies along the ray being fitted.
enum class FitAxis { U, V };

// A sampled decay series along a single ray, ready for exponent extraction.
struct DecaySeries {
  DecaySamples samples;  // sorted along the ray
  FitAxis axis = FitAxis::V;
  std::string ray;  // human-readable descriptor, e.g. "u=2" or "r=t/2"
};

// Fit window: samples with weight >= start participate; start <= 0 selects
// the last decade of the ray.  Values at or below the floor are treated as
// noise.
struct FitWindow {
  double start = 0.0;
  double floor = 1e-13;
};

struct FitResult {
  double exponent = 0;   // least-squares slope of log(value) vs log(weight)
  double stderr_ = 0;    // standard error of the slope from the residuals
  double intercept = 0;  // log-intercept
  int n_used = 0;
};

// Least squares of log(value) against log(weight) over the window.
// Throws FloorDominated if more than 30% of the window sits at the floor,
// InsufficientData if fewer than 8 above-floor samples remain.
FitResult fit_exponent(const DecaySeries& s, const FitWindow& w = {});

// One line of the peeling table.  `fitted` and `target` are decay rates
// (positive numbers; the fitted slope is negated).  Passing is one-sided:
// the series must decay at least as fast as target - tol, since compactly
// supported data may decay faster than the guaranteed rate.
struct PeelingRow {
  Quantity quantity = Quantity::AbsPhi;
  std::string ray;
  FitAxis axis = FitAxis::V;
  double fitted = 0;
  double stderr_ = 0;
  double target = 0;
  double tol = 0;
  bool floor_dominated = false;
  bool insufficient = false;
  bool pass = false;
};

struct PeelingOptions {
  double floor = 1e-13;
  double window_start = 0.0;  // 0 -> last decade per ray
  double tol = 0.15;          // v-exponent band
  double tol_u = 0.25;        // u-exponent band (the noisiest fits)
  double u0 = 2.0;            // u = const ray for the v-exponent fits
  double cone_c = 0.5;        // r = c t ray for the u-exponent fits
};

// Fits the four peeling quantities against their target rates:
//   |phi|: (1,1)   |D_L(r phi)|: (1,2)   |rho ring|: (2,2)   |D_Lbar phi|: (3,1)
// v-exponents along u = u0; u-exponents along the cone r = c t, where the
// sampled values are premultiplied by the target v-weight so that the fit
// isolates the u-exponent.  Floor-dominated or short series never pass.
std::vector<PeelingRow> peeling_report(const GridState& st, const PeelingOptions& opt = {});

}  // namespace mkg
