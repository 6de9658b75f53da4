#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "augpulse/pulse/schedule.hpp"
#include "json.hpp"

namespace augpulse {

inline constexpr int kFormatVersion = 1;

struct QubitProps {
  double f01_ghz = 0.0;
  double alpha_ghz = 0.0;
  double t1_us = 0.0;
  double t2_us = 0.0;
  bool operator==(const QubitProps&) const = default;
};

struct ControlChannel {
  int control = 0;
  int target = 0;
  std::string channel;
  bool operator==(const ControlChannel&) const = default;
};

struct CmdKey {
  std::string gate;
  std::vector<int> qubits;
  auto operator<=>(const CmdKey&) const = default;
};

// Effective Hamiltonian coefficients consumed by the simulator. Rates are in
// rad/ns per unit drive amplitude.
struct ModelParams {
  std::vector<double> drive_rate;
  struct Cr {
    int control = 0;
    int target = 0;
    double zx_rate = 0.0;
    double ix_rate = 0.0;
    bool operator==(const Cr&) const = default;
  };
  std::vector<Cr> cr;
  bool operator==(const ModelParams&) const = default;
};

struct BackendConfig {
  std::string name;
  double dt_ns = 0.0;
  std::vector<QubitProps> qubits;
  std::vector<std::string> drive_channels;
  std::vector<ControlChannel> control_channels;
  std::map<CmdKey, PulseSchedule> cmd_def;
  std::optional<ModelParams> model;

  int num_qubits() const { return static_cast<int>(qubits.size()); }
  const std::string& drive_channel(int q) const;
  const ControlChannel* control_channel(int control, int target) const;
  const PulseSchedule* find_cmd(const std::string& gate, const std::vector<int>& qubits) const;
  // Channels whose rotating frame follows qubit q: its drive channel and
  // every control channel that targets q.
  std::vector<std::string> frame_channels(int q) const;

  bool operator==(const BackendConfig&) const = default;
};

nlohmann::json envelope_to_json(const Envelope& e);
Envelope envelope_from_json(const nlohmann::json& j, const std::string& ptr);

nlohmann::json schedule_to_json(const PulseSchedule& s);
PulseSchedule schedule_from_json(const nlohmann::json& j, const std::string& ptr = "");

nlohmann::json backend_to_json(const BackendConfig& b);
// Validates the schema and the physical invariants (T2 <= 2 T1, required
// cmd_def entries); errors carry the JSON pointer of the offending field.
BackendConfig backend_from_json(const nlohmann::json& j);

BackendConfig load_backend(const std::string& path);
void save_backend(const BackendConfig& b, const std::string& path);
void save_schedule(const PulseSchedule& s, const std::string& path);
PulseSchedule load_schedule(const std::string& path);

// Path of the bundled mock backend.
std::string bundled_backend_path();

}  // namespace augpulse
