#pragma once

#include "augpulse/pulse/backend.hpp"

namespace augpulse {

// Inputs for the bundled two-qubit mock device. Pulse shapes follow the
// timings used throughout the project: 160 dt single-qubit DRAG pulses and a
// 1344 dt echoed CNOT built from two 512 dt cross-resonance tones.
struct MockParams {
  double dt_ns = 0.22;
  std::vector<QubitProps> qubits{{5.0, -0.3, 94.0, 88.0}, {4.9, -0.31, 94.0, 88.0}};
  std::vector<double> x_amp{0.154, 0.154};
  std::vector<double> x_beta{0.0, 0.0};
  std::vector<double> rx90_amp{0.077, 0.077};
  std::vector<double> rx90_beta{0.0, 0.0};
  // Drive frequency offset per qubit (GHz), shared by x and rx90.
  std::vector<double> drive_detuning_ghz{0.0, 0.0};
  int sq_duration = 160;
  double sq_sigma = 40.0;
  // Tone amplitude per ordered pair, same order as `model.cr`.
  std::vector<double> cr_amp{0.25, 0.25};
  int cr_duration = 512;
  double cr_sigma = 32.0;
  int cr_width = 384;
  ModelParams model{{0.969, 0.969},
                    {{0, 1, 0.031, 0.02}, {1, 0, 0.031, 0.02}}};
};

BackendConfig build_mock_backend(const MockParams& p);

// Extends two-qubit parameters to an n-qubit line with cross-resonance in
// both directions on every edge. Qubit k reuses the properties and pulse
// calibrations of qubit k % 2 so calibrated values carry over.
MockParams line_mock_params(const MockParams& two_qubit, int n);

}  // namespace augpulse
