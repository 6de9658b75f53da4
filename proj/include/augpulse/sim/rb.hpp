#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "augpulse/circuit/gate.hpp"
#include "augpulse/forge/phase_correction.hpp"
#include "augpulse/pulse/backend.hpp"

namespace augpulse {

// optimized_slow plays the optimized pulses but gives every gate the time
// slot of its standard-basis lowering, idling for the remainder.
enum class RbMode { Standard, Optimized, OptimizedSlow };
const char* rb_mode_name(RbMode m);
inline constexpr RbMode kAllRbModes[] = {RbMode::Standard, RbMode::Optimized, RbMode::OptimizedSlow};

struct RbOptions {
  int qubit = 0;
  int kmin = 2;
  int kmax = 25;
  int seqs = 5;
  std::uint64_t seed = 0;
  bool noisy = true;
  int jobs = 1;
  std::vector<RbMode> modes{kAllRbModes[0], kAllRbModes[1], kAllRbModes[2]};
  const PhaseCorrectionTable* corrections = nullptr;
};

struct RbPoint {
  RbMode mode = RbMode::Standard;
  int k = 0;
  int seq = 0;
  double p0 = 0;
};

// p(K) = a f^K + b.
struct RbFit {
  double a = 0, b = 0, f = 1;
  double rss = 0;
};

struct RbResult {
  std::vector<RbPoint> points;  // ordered by mode, then K, then sequence
  std::map<RbMode, RbFit> fits;
};

// K - 1 Haar-random single-qubit U3 gates followed by the U3 inverting their
// product. The same (seed, K, seq) always yields the same sequence.
std::vector<Gate> rb_sequence(int k, int seq, std::uint64_t seed, int qubit = 0);

RbResult rb_experiment(const BackendConfig& cfg, const RbOptions& opts = {});

// Upper bound on the fitted asymptote b: the single-qubit twirl limit.
inline constexpr double kRbMaxAsymptote = 0.5;

// Least squares over f around each start in {0.9, 0.99, 0.999}; a and b are
// solved exactly (b boxed to [0, kRbMaxAsymptote]) for every trial f.
// Throws FitError when the data do not decay.
RbFit fit_rb(const std::vector<int>& k, const std::vector<double>& p);

}  // namespace augpulse
