#pragma once

#include <cstdint>

#include "augpulse/sim/propagate.hpp"

namespace augpulse {

struct BlochVector {
  double x = 0, y = 0, z = 1;
  double p2 = 0;  // leakage population, reported separately
};

// Bloch vector of qubit q in the logical frame: the state's qubit subspace is
// projected and renormalised, then RZ(frame_phase_deg) undoes accumulated
// virtual-Z frame changes.
BlochVector bloch_vector(const QuantumState& s, int q, double frame_phase_deg = 0.0);

struct TomographyOptions {
  bool noisy = false;
  int shots = 0;  // 0 = exact expectations
  std::uint64_t seed = 0;
};

// Propagates from the ground state and measures X, Y and Z of qubit q. The
// three measurement settings are applied as ideal basis rotations after the
// schedule; with shots > 0 each setting is sampled binomially.
BlochVector tomography(const PulseSchedule& s, const DeviceModel& m, int q,
                       const TomographyOptions& opts = {},
                       const QuantumState* init = nullptr);

}  // namespace augpulse
