#pragma once

#include <functional>
#include <vector>

namespace augpulse {

struct NelderMeadOptions {
  int max_evals = 20000;
  double ftol = 1e-14;  // stop when the simplex f-spread falls below this
  double xtol = 1e-10;
  double initial_step = 0.5;
};

struct NelderMeadResult {
  std::vector<double> x;
  double f = 0;
  int evals = 0;
};

// Unconstrained minimisation (adaptive coefficients of Gao and Han).
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> x0, const NelderMeadOptions& opts = {});

// Golden-section search for a maximum of a unimodal f on [a, b].
double golden_max(const std::function<double(double)>& f, double a, double b, double tol);

// Root of f on [a, b] given a sign change (bisection + secant).
double bracket_root(const std::function<double(double)>& f, double a, double b, double tol);

}  // namespace augpulse
