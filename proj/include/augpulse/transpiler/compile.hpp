#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "augpulse/circuit/dag.hpp"
#include "augpulse/forge/phase_correction.hpp"
#include "augpulse/pulse/backend.hpp"
#include "augpulse/transpiler/passes.hpp"
#include "json.hpp"

namespace augpulse {

enum class Mode { Standard, Optimized };
enum class EquivalenceCheck { Off, PerPass, Final };

const char* mode_name(Mode m);

struct PassOptions {
  Mode mode = Mode::Optimized;
  // Subset of {commutativity_detection, template_zz, cnot_to_echo,
  // cancel_adjacent, direct_rotations}; all enabled by default.
  std::set<std::string> enabled{"commutativity_detection", "template_zz", "cnot_to_echo",
                                "cancel_adjacent", "direct_rotations"};
  int max_iterations = 10;
  EquivalenceCheck check = EquivalenceCheck::Final;
  const PhaseCorrectionTable* corrections = nullptr;
};

struct PassReport {
  Mode mode = Mode::Optimized;
  std::vector<PassStats> passes;
  int iterations = 0;
  int gates_in = 0;
  int gates_out = 0;
  int two_qubit_pulse_blocks = 0;  // CR tones / cnot entries in the schedule
  int envelopes = 0;
  int duration_dt = 0;
  double duration_ns = 0;
  // Standard-mode lowering of the untouched input, the reference the
  // optimized duration is compared against. Equal to duration_dt in
  // standard mode; 0 when the input has no standard lowering.
  int baseline_duration_dt = 0;

  nlohmann::json to_json() const;
};

struct LowerResult {
  PulseSchedule schedule;
  PassReport report;
};

// ASAP lowering. Standard mode uses the calibrated cmd_def basis (two-pulse
// U3, u2, virtual u1, cmd_def cnot); optimized mode uses DirectRx, DirectX
// and stretched CR(theta). Throws UnloweredGate for gates outside the basis.
LowerResult lower(const Dag& d, const BackendConfig& cfg, Mode mode,
                  const PhaseCorrectionTable* corrections = nullptr);

// Rewrites composite gates into the standard basis {1q, CNOT}.
Dag unroll_standard(const Dag& d);

// Runs the pass pipeline (optimized mode only) then lowers.
LowerResult compile(const Circuit& c, const BackendConfig& cfg, const PassOptions& opts = {});

// Gate-level part of compile: the circuit handed to the lowering step.
Circuit optimize(const Circuit& c, const PassOptions& opts, std::vector<PassStats>* stats = nullptr,
                 int* iterations = nullptr);

}  // namespace augpulse
