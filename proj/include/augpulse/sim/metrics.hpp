#pragma once

#include <vector>

namespace augpulse {

// sqrt(1 - sum_i sqrt(p_i q_i)). Both inputs must be non-negative and sum
// to 1 within 1e-9.
double hellinger_distance(const std::vector<double>& p, const std::vector<double>& q);

}  // namespace augpulse
