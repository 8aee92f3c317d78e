#include "besselext/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace besselext::numerics {

double find_root(const std::function<double(double)>& f, double lo, double hi,
                 const Tolerance& tol) {
  tol.validate();
  double a = lo, b = hi;
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (fa * fb > 0.0) throw BracketError("find_root: f(lo) and f(hi) have the same sign");

  double c = a, fc = fa, d = b - a, e = d;
  const double eps = std::numeric_limits<double>::epsilon();
  for (long it = 0; it < tol.max_steps; ++it) {
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    double tol1 = 2.0 * eps * std::abs(b) + 0.5 * std::max(tol.abs, tol.rel * std::abs(b));
    double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || fb == 0.0) return b;
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      double s = fb / fa, p, q;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        double qq = fa / fc, r = fb / fc;
        p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol1) ? d : (xm > 0 ? tol1 : -tol1);
    fb = f(b);
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      e = d = b - a;
    }
  }
  throw ConvergenceError("find_root: iteration budget exhausted", b, a);
}

namespace {

// One Aitken delta-squared sweep; shrinks the sequence by two.
std::vector<double> aitken_sweep(const std::vector<double>& v) {
  std::vector<double> out;
  out.reserve(v.size() - 2);
  for (std::size_t i = 0; i + 2 < v.size(); ++i) {
    double d2 = v[i + 2] - 2.0 * v[i + 1] + v[i];
    double d1 = v[i + 2] - v[i + 1];
    if (d2 == 0.0)
      out.push_back(v[i + 2]);
    else
      out.push_back(v[i + 2] - d1 * d1 / d2);
  }
  return out;
}

}  // namespace

LimitEstimate limit_extrapolate(std::vector<double> deltas, std::vector<double> values,
                                DecayModel model, const Tolerance& tol) {
  tol.validate();
  if (deltas.size() != values.size() || deltas.size() < 3)
    throw ParameterError("limit_extrapolate: need >= 3 (delta, value) samples");
  // sort by delta descending
  std::vector<std::size_t> idx(deltas.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return deltas[i] > deltas[j]; });
  std::vector<double> d(deltas.size()), v(values.size());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    d[i] = deltas[idx[i]];
    v[i] = values[idx[i]];
    if (!(d[i] > 0.0)) throw ParameterError("limit_extrapolate: deltas must be positive");
  }

  double vmax = 0.0;
  for (double x : v) vmax = std::max(vmax, std::abs(x));
  double range = *std::max_element(v.begin(), v.end()) - *std::min_element(v.begin(), v.end());

  // essentially constant samples: nothing to extrapolate
  if (range <= 4.0 * (tol.abs + tol.rel * vmax)) {
    return {v.back(), range, 0.0};
  }

  // iterated Aitken table
  std::vector<std::vector<double>> cols;
  cols.push_back(v);
  int max_cols = (model == DecayModel::AlgebraicLog) ? 4 : 3;
  while (static_cast<int>(cols.size()) <= max_cols && cols.back().size() >= 3)
    cols.push_back(aitken_sweep(cols.back()));

  auto tail_spread = [](const std::vector<double>& c) {
    std::size_t n = c.size();
    std::size_t k = std::min<std::size_t>(3, n);
    double lo = c[n - 1], hi = c[n - 1];
    for (std::size_t i = n - k; i < n; ++i) {
      lo = std::min(lo, c[i]);
      hi = std::max(hi, c[i]);
    }
    return hi - lo;
  };
  auto spread_measure = [&](std::size_t j) {
    if (cols[j].size() >= 2) return tail_spread(cols[j]);
    return std::abs(cols[j].back() - cols[j - 1].back());
  };

  // Aitken amplifies noise when the decay ratio sits near 1; walk down the
  // table only while the columns keep improving
  std::size_t jstar = 0;
  for (std::size_t j = 1; j < cols.size(); ++j) {
    if (spread_measure(j) <= 1.2 * spread_measure(jstar))
      jstar = j;
    else
      break;
  }
  double est = cols[jstar].back();
  double residual = spread_measure(jstar);
  if (jstar >= 1 && cols[jstar].size() == 1) {
    // singleton column: remaining model error from the parent's last step
    const auto& parent = cols[jstar - 1];
    double dlast = std::abs(parent.back() - parent[parent.size() - 2]);
    double rho = 0.5;
    if (parent.size() >= 3) {
      double d0 = parent[parent.size() - 2] - parent[parent.size() - 3];
      if (d0 != 0.0)
        rho = std::min(0.95, std::abs((parent.back() - parent[parent.size() - 2]) / d0));
    }
    residual = std::min(residual, dlast * rho * rho / std::max(1e-3, 1.0 - rho));
  }

  // consistent decay settles into a trend: at most one step-direction
  // reversal in the input tail (multi-scale ladders may carry one hump);
  // oscillatory data reverse repeatedly
  bool consistent;
  {
    const auto& raw = cols[0];
    std::size_t n = raw.size();
    std::size_t k0 = (n >= 7) ? n - 7 : 0;
    int reversals = 0, sign = 0;
    for (std::size_t i = k0 + 1; i < n; ++i) {
      double step = raw[i] - raw[i - 1];
      int s = (step > 0) - (step < 0);
      if (s != 0 && sign != 0 && s != sign) ++reversals;
      if (s != 0) sign = s;
    }
    consistent = reversals <= 1;
  }

  double allowed = std::max({1e4 * tol.abs, 1e4 * tol.rel * std::abs(est), 0.05 * range});
  bool meaningful = range > 100.0 * (tol.abs + tol.rel * vmax);
  if (!std::isfinite(est) || (residual > allowed && meaningful && !consistent))
    throw ModelMismatchError("limit_extrapolate: samples inconsistent with declared decay model",
                             residual);
  return {est, residual, residual};
}

}  // namespace besselext::numerics
