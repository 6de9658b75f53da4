#pragma once

#include "augpulse/forge/basis_forge.hpp"
#include "augpulse/pulse/mock_backend.hpp"
#include "augpulse/sim/device_model.hpp"

namespace augpulse {

struct RabiOptions {
  int duration = 160;
  double drag_beta = 0.0;  // 01 transition only
  int coarse_points = 101;
};

struct RabiResult {
  double amplitude = 0;
  double extra_detuning_ghz = 0;  // frequency refinement (two-photon drive)
  double transfer = 0;            // target-state population at the optimum
};

// Amplitude sweep at fixed duration, then refinement of the first transfer
// maximum. The two-photon 02 drive also refines its detuning, since the
// resonance is Stark shifted. Throws CalibrationError when no oscillation is
// seen (e.g. zero coupling).
RabiResult rabi_calibrate(const DeviceModel& m, int q, Transition t, const RabiOptions& opts = {});

// Transfer population of a transition pulse from its start level.
double transition_transfer(const DeviceModel& m, int q, Transition t, double amplitude,
                           const RabiOptions& opts, double extra_detuning_ghz = 0.0);

// DRAG coefficient nulling the x Bloch component of a half-amplitude x pulse.
double drag_calibrate(const DeviceModel& m, int q, double x_amp, int duration, double sigma,
                      double detuning_ghz = 0.0);

struct QubitCalibration {
  double x_amp = 0, x_beta = 0, rx90_amp = 0, rx90_beta = 0;
  double detuning_ghz = 0;  // drive frequency offset shared by both pulses
};

// Alternates Rabi amplitude and DRAG calibration, then refines amplitude,
// DRAG and drive frequency together so that x is a clean pi pulse and its
// half-amplitude copy lands on the equator with no x component. rx90 is
// then fitted separately at that frequency.
QubitCalibration calibrate_qubit(const DeviceModel& m, int q, int duration, double sigma,
                                 int rounds = 3);

// Tone amplitude for which the echoed CR(90) block best matches the ideal.
double calibrate_cr_amplitude(const MockParams& p, size_t pair_index);

// Runs all calibrations on the mock device parameters.
MockParams calibrate_mock(MockParams p);

}  // namespace augpulse
