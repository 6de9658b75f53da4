#pragma once

#include <map>
#include <string>
#include <vector>

#include "augpulse/pulse/backend.hpp"

namespace augpulse {

struct TransmonParams {
  double f01_ghz = 5.0;
  double alpha_ghz = -0.3;
  double drive_rate = 1.0;  // rad/ns per unit amplitude
  double t1_us = 0.0;       // 0 = no decay
  double t2_us = 0.0;       // 0 = no dephasing
  // Qubit frequency minus the rotating-frame frequency. Nonzero values model
  // a drive that is off resonance with the qubit.
  double detuning_ghz = 0.0;
};

// Cross-resonance drive on the control channel: the target sees
// (zx/2) Z_c (s a_t + h.c.) + (ix/2) (s a_t + h.c.). Indices are local.
struct CrTerm {
  int control = 0;
  int target = 1;
  double zx_rate = 0.0;
  double ix_rate = 0.0;
};

struct ChannelBinding {
  enum class Kind { Drive, Control } kind = Kind::Drive;
  int qubit = 0;   // drive target, or control qubit for Control
  int target = 0;  // Control only
};

// One or two three-level transmons in a frame rotating at each f01.
struct DeviceModel {
  double dt_ns = 0.22;
  std::vector<TransmonParams> qubits;
  std::vector<CrTerm> cr;
  std::map<std::string, ChannelBinding> channels;

  int num_qubits() const { return static_cast<int>(qubits.size()); }
  int dim() const;
  bool has_noise() const;
  void validate() const;

  // Keeps the listed backend qubits (at most two), renumbered 0..k-1.
  static DeviceModel from_backend(const BackendConfig& b, const std::vector<int>& backend_qubits);
};

// Single transmon with the given parameters and drive channel "d0".
DeviceModel single_transmon(const TransmonParams& p, double dt_ns = 0.22);

// Stable 64-bit FNV-1a hash of the model parameters, for CSV headers.
std::string model_hash(const DeviceModel& m);

}  // namespace augpulse
