#include "augpulse/pulse/schedule.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "augpulse/errors.hpp"

namespace augpulse {

int ScheduleInstruction::duration() const {
  if (auto* e = std::get_if<Envelope>(&payload)) return e->duration;
  return 0;
}

ScheduleInstruction play(std::string channel, Envelope e, int start, std::string label) {
  return {std::move(channel), start, std::move(e), std::move(label)};
}

ScheduleInstruction frame_change(std::string channel, double phase_deg, int start) {
  return {std::move(channel), start, FrameChange{phase_deg}, {}};
}

int PulseSchedule::channel_end(const std::string& channel) const {
  int end = 0;
  for (const auto& i : instrs_)
    if (i.channel == channel) end = std::max(end, i.end());
  return end;
}

std::vector<std::string> PulseSchedule::channels() const {
  std::set<std::string> s;
  for (const auto& i : instrs_) s.insert(i.channel);
  return {s.begin(), s.end()};
}

int PulseSchedule::envelope_count() const {
  return static_cast<int>(
      std::count_if(instrs_.begin(), instrs_.end(), [](auto& i) { return i.is_envelope(); }));
}

int PulseSchedule::frame_change_count() const {
  return static_cast<int>(std::count_if(instrs_.begin(), instrs_.end(), [](auto& i) {
    return std::holds_alternative<FrameChange>(i.payload);
  }));
}

void PulseSchedule::add(ScheduleInstruction instr, Align align) {
  if (align == Align::Asap) {
    instr.start = channel_end(instr.channel);
  } else {
    if (instr.start < 0) throw UserError("instruction start must be >= 0");
    if (instr.is_envelope()) {
      for (const auto& o : instrs_) {
        if (o.channel != instr.channel || !o.is_envelope()) continue;
        if (instr.start < o.end() && o.start < instr.end())
          throw OverlapError("envelope on " + instr.channel + " at " +
                             std::to_string(instr.start) + " overlaps one at " +
                             std::to_string(o.start));
      }
    }
  }
  duration_ = std::max(duration_, instr.end());
  instrs_.push_back(std::move(instr));
}

void PulseSchedule::add_schedule(const PulseSchedule& other, int offset) {
  for (auto i : other.instrs_) {
    i.start += offset;
    add(std::move(i), Align::At);
  }
}

PulseSchedule append(const PulseSchedule& s, ScheduleInstruction instr, Align align) {
  PulseSchedule out = s;
  out.add(std::move(instr), align);
  return out;
}

std::vector<cplx> render_channel(const PulseSchedule& s, const std::string& channel,
                                 double dt_ns) {
  std::vector<size_t> idx;
  for (size_t i = 0; i < s.instructions().size(); ++i)
    if (s.instructions()[i].channel == channel) idx.push_back(i);
  if (idx.empty()) throw UnknownChannel("channel '" + channel + "' not in schedule");
  std::stable_sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
    return s.instructions()[a].start < s.instructions()[b].start;
  });

  std::vector<cplx> out(static_cast<size_t>(s.duration()));
  double phase = 0.0;  // radians
  struct Shift {
    double ghz;
    int at;
  };
  std::vector<Shift> shifts;
  for (size_t k : idx) {
    const auto& ins = s.instructions()[k];
    if (auto* fc = std::get_if<FrameChange>(&ins.payload)) {
      phase += deg2rad(fc->phase_deg);
    } else if (auto* fs = std::get_if<FreqShift>(&ins.payload)) {
      shifts.push_back({fs->ghz, ins.start});
    } else {
      const auto samples = render_samples(std::get<Envelope>(ins.payload));
      for (size_t t = 0; t < samples.size(); ++t) {
        const int abs_t = ins.start + static_cast<int>(t);
        double ph = phase;
        for (const auto& sh : shifts) ph += 2.0 * kPi * sh.ghz * (abs_t - sh.at) * dt_ns;
        out[static_cast<size_t>(abs_t)] += samples[t] * std::exp(kI * ph);
      }
    }
  }
  return out;
}

std::vector<double> mix_lo(const PulseSchedule& s, const std::string& channel, double f_lo_ghz,
                           double dt_ns) {
  const auto d = render_channel(s, channel, dt_ns);
  std::vector<double> out(d.size());
  for (size_t t = 0; t < d.size(); ++t)
    out[t] = (d[t] * std::exp(kI * (2.0 * kPi * f_lo_ghz * static_cast<double>(t) * dt_ns))).real();
  return out;
}

}  // namespace augpulse
