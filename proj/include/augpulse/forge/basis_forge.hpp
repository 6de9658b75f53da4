#pragma once

#include <string>
#include <vector>

#include "augpulse/forge/phase_correction.hpp"
#include "augpulse/pulse/backend.hpp"

namespace augpulse {

struct AugmentedGateDef {
  std::string name;  // DirectX, DirectRx, VirtualRz, CRTheta, Subspace12Pulse, ...
  std::vector<int> qubits;
  std::vector<double> angles;  // degrees
  PulseSchedule schedule;
  // cmd_def entries the schedule was derived from, e.g. "x[0]".
  std::vector<std::string> provenance;
};

enum class Transition { T01, T12, T02 };
const char* transition_name(Transition t);

AugmentedGateDef build_direct_x(const BackendConfig& cfg, int q);

// Any angle is accepted and wrapped into (-180, 180]; negative angles are
// realised with a 180 degree frame sandwich so one pulse always suffices.
AugmentedGateDef build_direct_rx(const BackendConfig& cfg, int q, double theta_deg,
                                 const PhaseCorrectionTable* corrections = nullptr);

// Frame change on the qubit's drive channel.
ScheduleInstruction virtual_rz(const BackendConfig& cfg, int q, double theta_deg);
// Frame changes on every channel whose frame follows q, all at `at`.
void add_virtual_rz(PulseSchedule& s, const BackendConfig& cfg, int q, double theta_deg, int at);

// U3 as one DirectRx pulse between two frame changes.
AugmentedGateDef build_u3_direct(const BackendConfig& cfg, int q, double theta, double phi,
                                 double lambda, const PhaseCorrectionTable* corrections = nullptr);

struct CrBlocks {
  PulseSchedule plus;   // CR(+45) tone, rebased to t=0
  PulseSchedule minus;  // CR(-45) tone, rebased to t=0
  Envelope echo_x;      // control-qubit X used between the tones
  std::string control_channel;
  std::vector<std::string> provenance;
};

// Reads the labelled echo sub-structure of the cnot entry for (control, target).
CrBlocks extract_cr(const BackendConfig& cfg, int control, int target);

// Echoed CR(theta), 0 < theta <= 180: [X_c, tone(-), X_c, tone(+)]. Flat
// widths are stretched so tone area scales by theta/90; below the riser-only
// area the riser-only tone is scaled in amplitude instead.
AugmentedGateDef build_cr_theta(const BackendConfig& cfg, int control, int target,
                                double theta_deg);

// build_cr_theta without its leading X_c: [tone(-), X_c, tone(+)]. This is
// the pulse form of the gate run CR(-theta/2), X_c, CR(theta/2).
AugmentedGateDef build_cr_echo_tail(const BackendConfig& cfg, int control, int target,
                                    double theta_deg);
// Flat-top width giving theta/90 of the calibrated tone area (may be < 0).
double stretched_width(const Envelope& tone90, double theta_deg);
double riser_area(const Envelope& tone);

// Envelope for a single-qutrit transition: the 01 drive reuses the DRAG shape
// of the x calibration; 12 uses a Gaussian with sigma = duration/4 and the
// two-photon 02 drive sigma = duration/6 (smaller edge steps).
// Detuning is 0, alpha, alpha/2 respectively, plus `extra_detuning_ghz`.
Envelope subspace_envelope(Transition t, double amplitude, int duration, double alpha_ghz,
                           double dt_ns, double drag_beta = 0.0, double extra_detuning_ghz = 0.0);

AugmentedGateDef build_subspace_pulse(const BackendConfig& cfg, int q, Transition t,
                                      double amplitude, int duration,
                                      double extra_detuning_ghz = 0.0);

}  // namespace augpulse
