#include "augpulse/synth/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "augpulse/errors.hpp"

namespace augpulse {

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> x0, const NelderMeadOptions& opts) {
  const size_t n = x0.size();
  const double nd = static_cast<double>(n);
  const double alpha = 1.0, gamma = 1.0 + 2.0 / nd, rho = 0.75 - 1.0 / (2.0 * nd),
               sigma = 1.0 - 1.0 / nd;
  std::vector<std::vector<double>> pts(n + 1, x0);
  std::vector<double> fv(n + 1);
  int evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evals;
    return f(x);
  };
  for (size_t i = 0; i < n; ++i) pts[i + 1][i] += opts.initial_step;
  for (size_t i = 0; i <= n; ++i) fv[i] = eval(pts[i]);

  std::vector<size_t> order(n + 1);
  std::vector<double> centroid(n), xr(n), xe(n), xc(n);
  while (evals < opts.max_evals) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return fv[a] < fv[b]; });
    const size_t best = order.front(), worst = order.back(), second = order[n - 1];
    double xspread = 0;
    for (size_t i = 0; i <= n; ++i)
      for (size_t k = 0; k < n; ++k) xspread = std::max(xspread, std::abs(pts[i][k] - pts[best][k]));
    if (fv[worst] - fv[best] < opts.ftol && xspread < opts.xtol * 1e3) break;
    if (xspread < opts.xtol) break;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (size_t i = 0; i <= n; ++i)
      if (i != worst)
        for (size_t k = 0; k < n; ++k) centroid[k] += pts[i][k] / nd;
    for (size_t k = 0; k < n; ++k) xr[k] = centroid[k] + alpha * (centroid[k] - pts[worst][k]);
    const double fr = eval(xr);
    if (fr < fv[best]) {
      for (size_t k = 0; k < n; ++k) xe[k] = centroid[k] + gamma * (xr[k] - centroid[k]);
      const double fe = eval(xe);
      if (fe < fr) {
        pts[worst] = xe;
        fv[worst] = fe;
      } else {
        pts[worst] = xr;
        fv[worst] = fr;
      }
      continue;
    }
    if (fr < fv[second]) {
      pts[worst] = xr;
      fv[worst] = fr;
      continue;
    }
    const bool outside = fr < fv[worst];
    for (size_t k = 0; k < n; ++k)
      xc[k] = outside ? centroid[k] + rho * (xr[k] - centroid[k])
                      : centroid[k] - rho * (centroid[k] - pts[worst][k]);
    const double fc = eval(xc);
    if (fc < (outside ? fr : fv[worst])) {
      pts[worst] = xc;
      fv[worst] = fc;
      continue;
    }
    for (size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (size_t k = 0; k < n; ++k) pts[i][k] = pts[best][k] + sigma * (pts[i][k] - pts[best][k]);
      fv[i] = eval(pts[i]);
    }
  }
  const size_t best =
      static_cast<size_t>(std::min_element(fv.begin(), fv.end()) - fv.begin());
  return {pts[best], fv[best], evals};
}

double golden_max(const std::function<double(double)>& f, double a, double b, double tol) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return (a + b) / 2.0;
}

double bracket_root(const std::function<double(double)>& f, double a, double b, double tol) {
  double fa = f(a), fb = f(b);
  if (fa == 0) return a;
  if (fb == 0) return b;
  if ((fa > 0) == (fb > 0)) throw FitError("root not bracketed");
  for (int it = 0; it < 200 && b - a > tol; ++it) {
    // Secant step, fall back to bisection when it leaves the bracket.
    double m = b - fb * (b - a) / (fb - fa);
    if (!(m > a && m < b) || it % 3 == 2) m = (a + b) / 2.0;
    const double fm = f(m);
    if (fm == 0) return m;
    if ((fm > 0) == (fa > 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
      fb = fm;
    }
  }
  return std::abs(fa) < std::abs(fb) ? a : b;
}

}  // namespace augpulse
