#pragma once

#include <string>
#include <variant>
#include <vector>

#include "augpulse/pulse/envelope.hpp"

namespace augpulse {

struct FrameChange {
  double phase_deg = 0.0;
  bool operator==(const FrameChange&) const = default;
};

struct FreqShift {
  double ghz = 0.0;
  bool operator==(const FreqShift&) const = default;
};

using Payload = std::variant<Envelope, FrameChange, FreqShift>;

struct ScheduleInstruction {
  std::string channel;
  int start = 0;
  Payload payload;
  // Optional tag; cmd_def entries use it to mark echo sub-blocks.
  std::string label;

  int duration() const;
  int end() const { return start + duration(); }
  bool is_envelope() const { return std::holds_alternative<Envelope>(payload); }
  bool operator==(const ScheduleInstruction&) const = default;
};

ScheduleInstruction play(std::string channel, Envelope e, int start = 0, std::string label = {});
ScheduleInstruction frame_change(std::string channel, double phase_deg, int start = 0);

enum class Align { Asap, At };

// Time-ordered instructions over named channels. Instruction order within a
// channel at equal start time is significant for frame changes.
class PulseSchedule {
 public:
  const std::vector<ScheduleInstruction>& instructions() const { return instrs_; }
  int duration() const { return duration_; }
  bool empty() const { return instrs_.empty(); }

  // Latest end time of anything on the channel, 0 if unused.
  int channel_end(const std::string& channel) const;
  std::vector<std::string> channels() const;
  int envelope_count() const;
  int frame_change_count() const;

  // Mutating insert used by builders. Asap ignores instr.start.
  void add(ScheduleInstruction instr, Align align = Align::At);
  // Inserts every instruction of other shifted by offset.
  void add_schedule(const PulseSchedule& other, int offset);

  bool operator==(const PulseSchedule&) const = default;

 private:
  std::vector<ScheduleInstruction> instrs_;
  int duration_ = 0;
};

// Persistent variant of PulseSchedule::add.
PulseSchedule append(const PulseSchedule& s, ScheduleInstruction instr, Align align);

// Baseband samples for one channel with frame changes and frequency shifts
// applied; length equals the schedule duration, gaps are zero.
std::vector<cplx> render_channel(const PulseSchedule& s, const std::string& channel,
                                 double dt_ns);

// D(t) = Re[d(t) exp(i 2 pi f t dt)].
std::vector<double> mix_lo(const PulseSchedule& s, const std::string& channel, double f_lo_ghz,
                           double dt_ns);

}  // namespace augpulse
