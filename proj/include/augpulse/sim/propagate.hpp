#pragma once

#include <vector>

#include "augpulse/pulse/schedule.hpp"
#include "augpulse/sim/device_model.hpp"

namespace augpulse {

// State of n three-level systems. Basis index = sum_q level_q * 3^q.
struct QuantumState {
  int num_qutrits = 1;
  bool mixed = false;
  CVector psi;         // pure
  Eigen::MatrixXcd rho;  // mixed

  static QuantumState ground(int n);
  // levels[q] gives the level of qutrit q.
  static QuantumState basis(const std::vector<int>& levels);
  static QuantumState pure(int n, CVector psi);

  int dim() const;
  QuantumState to_mixed() const;
  Eigen::MatrixXcd density() const;
  // Probability of each basis index.
  std::vector<double> populations() const;
  // Marginal level populations {p0, p1, p2} of qutrit q.
  std::vector<double> level_populations(int q) const;
  double trace() const;
};

struct SimOptions {
  bool noisy = false;
  int substeps = 4;  // RK4 steps per dt
};

// Integrates the schedule in the interaction picture of the static
// anharmonic term, so an empty schedule leaves any state unchanged.
// Noisy mode evolves the density matrix under T1/T2 dissipators.
QuantumState propagate(const PulseSchedule& s, const DeviceModel& m, const QuantumState& init,
                       const SimOptions& opts = {});

// Sum of frame changes on the channel, degrees. The simulated state equals
// RZ(-total) applied to the ideal one on that qubit.
double final_frame_phase(const PulseSchedule& s, const std::string& channel);

// 3^n x 3^n propagator restricted to the given input basis states, i.e.
// columns for each index in `inputs` (pure evolution only).
Eigen::MatrixXcd propagator_columns(const PulseSchedule& s, const DeviceModel& m,
                                    const std::vector<int>& inputs, int substeps = 4);

// Qubit-subspace 2^n x 2^n block of the full propagator, with frame
// corrections undone so it compares directly with ideal gate matrices.
// Ordering is little-endian over qubits like circuit_unitary.
Unitary qubit_block(const PulseSchedule& s, const DeviceModel& m, int substeps = 4);

}  // namespace augpulse
