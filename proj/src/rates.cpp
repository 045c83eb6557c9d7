#include "mkg/rates.hpp"

#include <algorithm>
#include <cmath>

namespace mkg {

namespace {

double weight_of(const RaySample& s, FitAxis axis) {
  return axis == FitAxis::U ? s.u_plus : s.v_plus;
}

}  // namespace

FitResult fit_exponent(const DecaySeries& s, const FitWindow& w) {
  if (s.samples.empty()) throw InsufficientData("fit_exponent: empty series");
  double wmax = 0;
  for (const auto& smp : s.samples) wmax = std::max(wmax, weight_of(smp, s.axis));
  double wmin = w.start > 0.0 ? w.start : wmax / 10.0;

  std::size_t in_window = 0, at_floor = 0;
  std::vector<std::pair<double, double>> pts;  // (log w, log value)
  for (const auto& smp : s.samples) {
    double wt = weight_of(smp, s.axis);
    if (wt < wmin || wt <= 0.0) continue;
    ++in_window;
    if (!(smp.value > w.floor)) {
      ++at_floor;
      continue;
    }
    pts.emplace_back(std::log(wt), std::log(smp.value));
  }
  if (in_window == 0) throw InsufficientData("fit_exponent: empty window");
  if (at_floor * 10 > in_window * 3)
    throw FloorDominated("fit_exponent: more than 30% of the window at floor");
  if (pts.size() < 8) throw InsufficientData("fit_exponent: fewer than 8 usable samples");

  std::size_t n = pts.size();
  double mx = 0, my = 0;
  for (auto& p : pts) {
    mx += p.first;
    my += p.second;
  }
  mx /= (double)n;
  my /= (double)n;
  double sxx = 0, sxy = 0;
  for (auto& p : pts) {
    sxx += (p.first - mx) * (p.first - mx);
    sxy += (p.first - mx) * (p.second - my);
  }
  if (!(sxx > 1e-20 * (double)n * (1.0 + mx * mx)))
    throw InsufficientData("fit_exponent: degenerate abscissa");

  FitResult out;
  out.exponent = sxy / sxx;
  out.intercept = my - out.exponent * mx;
  out.n_used = (int)n;
  double ssr = 0;
  for (auto& p : pts) {
    double e = p.second - (out.intercept + out.exponent * p.first);
    ssr += e * e;
  }
  out.stderr_ = n > 2 ? std::sqrt(ssr / ((double)n - 2.0) / sxx) : 0.0;
  return out;
}

std::vector<PeelingRow> peeling_report(const GridState& st, const PeelingOptions& opt) {
  struct Plan {
    Quantity q;
    FitAxis axis;
    double target_u, target_v;
    double tol;
  };
  const Plan plans[] = {
      {Quantity::AbsPhi, FitAxis::V, 1.0, 1.0, opt.tol},
      {Quantity::AbsDLpsi, FitAxis::V, 1.0, 2.0, opt.tol},
      {Quantity::AbsRhoRing, FitAxis::V, 2.0, 2.0, opt.tol},
      {Quantity::AbsPhi, FitAxis::U, 1.0, 1.0, opt.tol_u},
      {Quantity::AbsDLbarPhi, FitAxis::U, 3.0, 1.0, opt.tol_u},
      {Quantity::AbsRhoRing, FitAxis::U, 2.0, 2.0, opt.tol_u},
  };

  std::vector<PeelingRow> rows;
  for (const Plan& pl : plans) {
    PeelingRow row;
    row.quantity = pl.q;
    row.axis = pl.axis;
    row.target = pl.axis == FitAxis::V ? pl.target_v : pl.target_u;
    row.tol = pl.tol;

    Ray ray;
    DecaySeries series;
    series.axis = pl.axis;
    if (pl.axis == FitAxis::V) {
      ray = {RayKind::ConstU, opt.u0};
      series.ray = "u=" + std::to_string(opt.u0);
    } else {
      ray = {RayKind::Cone, opt.cone_c};
      series.ray = "r=" + std::to_string(opt.cone_c) + "t";
    }
    row.ray = series.ray;

    try {
      series.samples = sample_ray(st, pl.q, ray);
      if (pl.axis == FitAxis::U) {
        // both weights grow along a cone; take out the known v-weight so the
        // slope against u_plus isolates the u-exponent
        for (auto& smp : series.samples)
          smp.value *= std::pow(smp.v_plus, pl.target_v);
      }
      FitResult fit = fit_exponent(series, {opt.window_start, opt.floor});
      row.fitted = -fit.exponent;
      row.stderr_ = fit.stderr_;
      row.pass = row.fitted >= row.target - row.tol;
    } catch (const FloorDominated&) {
      row.floor_dominated = true;
    } catch (const InsufficientData&) {
      row.insufficient = true;
    } catch (const OutOfDomain&) {
      row.insufficient = true;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace mkg
