#include "augpulse/sim/metrics.hpp"

#include <cmath>
#include <numeric>

#include "augpulse/errors.hpp"

namespace augpulse {

namespace {

void check_distribution(const std::vector<double>& p, const char* which) {
  for (double v : p)
    if (!(v >= 0.0)) throw UserError(std::string(which) + " has a negative or NaN entry");
  const double s = std::accumulate(p.begin(), p.end(), 0.0);
  if (std::abs(s - 1.0) > 1e-9)
    throw UserError(std::string(which) + " sums to " + std::to_string(s) + ", not 1");
}

}  // namespace

double hellinger_distance(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) throw UserError("distributions have different supports");
  check_distribution(p, "first distribution");
  check_distribution(q, "second distribution");
  double bc = 0;
  for (size_t i = 0; i < p.size(); ++i) bc += std::sqrt(p[i] * q[i]);
  return std::sqrt(std::max(0.0, 1.0 - bc));
}

}  // namespace augpulse
