#pragma once

#include <string>
#include <vector>

#include "augpulse/circuit/circuit.hpp"
#include "augpulse/forge/phase_correction.hpp"
#include "augpulse/pulse/backend.hpp"
#include "augpulse/sim/tomography.hpp"

namespace augpulse {

// DirectRx(theta) for theta on an evenly spaced 0..180 grid, one tomography
// run per angle.
struct SweepRow {
  double theta_deg = 0;
  BlochVector bloch;
};
struct SweepOptions {
  int points = 41;
  TomographyOptions tomography;
  const PhaseCorrectionTable* corrections = nullptr;
  int jobs = 1;
};
std::vector<SweepRow> sweep_direct_rx(const BackendConfig& cfg, int q, const SweepOptions& opts = {});

// Equatorial phase error atan2(x, -y) fitted with cos(k theta), k = 0..3,
// weighted by sin^2 theta, negated and tabulated on the correction grid.
// The 0 and 180 entries stay zero.
PhaseCorrectionTable fit_phase_corrections(const std::vector<SweepRow>& rows);
double max_abs_x(const std::vector<SweepRow>& rows);

// Target-qubit Bloch vectors after CR(theta) with the control in |0> and |1>.
struct CrTomographyRow {
  double theta_deg = 0;
  int control_state = 0;
  BlochVector target;
};
std::vector<CrTomographyRow> cr_tomography_sweep(const BackendConfig& cfg, int control, int target,
                                                 int points = 21, const TomographyOptions& opts = {});

// 0 -> 1 -> 2 -> 0 cycle of single-transition pulses on one transmon.
struct CounterPulses {
  PulseSchedule p01, p12, p02;
};
CounterPulses calibrate_counter_pulses(const BackendConfig& cfg, int q, int duration = 160);
// Element k is p0 after k cycles; element 0 is the initial 1.
std::vector<double> qutrit_counter(const BackendConfig& cfg, int q, int cycles, bool noisy,
                                   const CounterPulses* pulses = nullptr);

// Two-qubit ansatz in the style of an H2 VQE circuit; the entangler is a
// CNOT-RZ-CNOT ZZ block.
Circuit h2_ansatz(double theta_deg);

// Register distribution of a simulated two-transmon state; level 2 reads as 1.
std::vector<double> measured_distribution(const QuantumState& s);

struct BenchmarkResult {
  std::vector<double> ideal, standard, optimized;
  double h_standard = 0, h_optimized = 0;
  int duration_standard = 0, duration_optimized = 0;
};
BenchmarkResult hellinger_benchmark(const BackendConfig& cfg, const Circuit& c, bool noisy = true,
                                    const PhaseCorrectionTable* corrections = nullptr);

}  // namespace augpulse
