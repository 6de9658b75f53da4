#include "augpulse/forge/basis_forge.hpp"

#include <cmath>
#include <optional>

#include "augpulse/errors.hpp"

namespace augpulse {

namespace {

std::string tag(const std::string& gate, const std::vector<int>& qs) {
  std::string s = gate + "[";
  for (size_t i = 0; i < qs.size(); ++i) s += (i ? "," : "") + std::to_string(qs[i]);
  return s + "]";
}

const PulseSchedule& need_cmd(const BackendConfig& cfg, const std::string& gate,
                              const std::vector<int>& qs) {
  const auto* s = cfg.find_cmd(gate, qs);
  if (!s) throw MissingCalibration("backend has no " + tag(gate, qs) + " calibration");
  return *s;
}

// The single envelope of a one-pulse cmd_def entry on the qubit's drive channel.
const Envelope& sole_envelope(const BackendConfig& cfg, const PulseSchedule& s, int q,
                              const std::string& what) {
  const Envelope* found = nullptr;
  for (const auto& i : s.instructions()) {
    if (!i.is_envelope()) continue;
    if (found || i.channel != cfg.drive_channel(q))
      throw MissingCalibration(what + " is not a single drive pulse");
    found = &std::get<Envelope>(i.payload);
  }
  if (!found) throw MissingCalibration(what + " has no pulse");
  return *found;
}

const ScheduleInstruction& labelled(const PulseSchedule& s, const std::string& label,
                                    const std::string& channel) {
  const ScheduleInstruction* hit = nullptr;
  for (const auto& i : s.instructions()) {
    if (i.label != label) continue;
    if (hit) throw EchoStructureError("cnot entry has duplicate '" + label + "' blocks");
    hit = &i;
  }
  if (!hit) throw EchoStructureError("cnot entry lacks a '" + label + "' block");
  if (!channel.empty() && hit->channel != channel)
    throw EchoStructureError("'" + label + "' is on " + hit->channel + ", expected " + channel);
  if (!hit->is_envelope()) throw EchoStructureError("'" + label + "' is not a pulse");
  return *hit;
}

}  // namespace

const char* transition_name(Transition t) {
  switch (t) {
    case Transition::T01: return "01";
    case Transition::T12: return "12";
    case Transition::T02: return "02_two_photon";
  }
  return "?";
}

AugmentedGateDef build_direct_x(const BackendConfig& cfg, int q) {
  AugmentedGateDef d{"DirectX", {q}, {180.0}, need_cmd(cfg, "x", {q}), {tag("x", {q})}};
  return d;
}

ScheduleInstruction virtual_rz(const BackendConfig& cfg, int q, double theta_deg) {
  return frame_change(cfg.drive_channel(q), theta_deg, 0);
}

void add_virtual_rz(PulseSchedule& s, const BackendConfig& cfg, int q, double theta_deg, int at) {
  for (const auto& ch : cfg.frame_channels(q)) s.add(frame_change(ch, theta_deg, at));
}

AugmentedGateDef build_direct_rx(const BackendConfig& cfg, int q, double theta_deg,
                                 const PhaseCorrectionTable* corrections) {
  if (!std::isfinite(theta_deg)) throw UserError("DirectRx angle is not finite");
  const double theta = normalize_deg(theta_deg);
  const double mag = std::abs(theta);
  if (mag > 180.0) throw UserError("DirectRx angle out of range after normalization");
  const Envelope& x = sole_envelope(cfg, need_cmd(cfg, "x", {q}), q, tag("x", {q}));

  AugmentedGateDef d{"DirectRx", {q}, {theta}, {}, {tag("x", {q})}};
  PulseSchedule& s = d.schedule;
  if (theta < 0) add_virtual_rz(s, cfg, q, 180.0, 0);
  s.add(play(cfg.drive_channel(q), x.scaled(mag / 180.0)));
  if (corrections) {
    const double c = corrections->at(mag);
    if (c != 0.0) add_virtual_rz(s, cfg, q, c, s.duration());
  }
  if (theta < 0) add_virtual_rz(s, cfg, q, -180.0, s.duration());
  return d;
}

AugmentedGateDef build_u3_direct(const BackendConfig& cfg, int q, double theta, double phi,
                                 double lambda, const PhaseCorrectionTable* corrections) {
  AugmentedGateDef rx = build_direct_rx(cfg, q, theta, corrections);
  AugmentedGateDef d{"U3Direct", {q}, {theta, phi, lambda}, {}, rx.provenance};
  add_virtual_rz(d.schedule, cfg, q, normalize_deg(lambda - 90.0), 0);
  d.schedule.add_schedule(rx.schedule, 0);
  add_virtual_rz(d.schedule, cfg, q, normalize_deg(phi + 90.0), d.schedule.duration());
  return d;
}

CrBlocks extract_cr(const BackendConfig& cfg, int control, int target) {
  const auto* cc = cfg.control_channel(control, target);
  if (!cc)
    throw MissingCalibration("no control channel for pair (" + std::to_string(control) + "," +
                             std::to_string(target) + ")");
  const PulseSchedule& cnot = need_cmd(cfg, "cnot", {control, target});
  const auto& minus = labelled(cnot, "cr_minus", cc->channel);
  const auto& plus = labelled(cnot, "cr_plus", cc->channel);
  const auto& echo = labelled(cnot, "echo_x", cfg.drive_channel(control));
  for (const auto* i : {&minus, &plus})
    if (std::get<Envelope>(i->payload).shape != Shape::GaussianSquare)
      throw EchoStructureError("cross-resonance tone is not a GaussianSquare");
  if (!(minus.end() <= echo.start && echo.end() <= plus.start))
    throw EchoStructureError("echo blocks are out of order");

  CrBlocks b;
  b.control_channel = cc->channel;
  b.minus.add(play(cc->channel, std::get<Envelope>(minus.payload)));
  b.plus.add(play(cc->channel, std::get<Envelope>(plus.payload)));
  b.echo_x = std::get<Envelope>(echo.payload);
  b.provenance = {tag("cnot", {control, target})};
  return b;
}

double riser_area(const Envelope& tone) {
  Envelope r = tone.with_width(0).scaled(1.0 / std::abs(tone.amp));
  double area = 0;
  for (const auto& v : render_samples(r)) area += v.real();
  return area;
}

double stretched_width(const Envelope& tone90, double theta_deg) {
  const double total90 = riser_area(tone90) + tone90.width;
  return theta_deg / 90.0 * total90 - riser_area(tone90);
}

AugmentedGateDef build_cr_theta(const BackendConfig& cfg, int control, int target,
                                double theta_deg) {
  if (!(theta_deg > 0.0 && theta_deg <= 180.0))
    throw UserError("CR angle must be in (0, 180], got " + std::to_string(theta_deg));
  const CrBlocks b = extract_cr(cfg, control, target);
  const Envelope& minus90 = std::get<Envelope>(b.minus.instructions()[0].payload);
  const Envelope& plus90 = std::get<Envelope>(b.plus.instructions()[0].payload);

  Envelope minus = minus90, plus = plus90;
  if (theta_deg != 90.0) {
    const double w = stretched_width(plus90, theta_deg);
    const int width = static_cast<int>(std::lround(w));
    if (width >= 0) {
      minus = minus90.with_width(width);
      plus = plus90.with_width(width);
    } else {
      // Riser-only tone, amplitude scaled to the requested area.
      const double r = riser_area(plus90);
      const double f = (w + r) / r;
      minus = minus90.with_width(0).scaled(f);
      plus = plus90.with_width(0).scaled(f);
    }
  }

  AugmentedGateDef d{"CRTheta", {control, target}, {theta_deg}, {}, b.provenance};
  const std::string& dc = cfg.drive_channel(control);
  const int sq = b.echo_x.duration, tone = plus.duration;
  PulseSchedule& s = d.schedule;
  s.add(play(dc, b.echo_x, 0));
  s.add(play(b.control_channel, minus, sq, "cr_minus"));
  s.add(play(dc, b.echo_x, sq + tone));
  s.add(play(b.control_channel, plus, 2 * sq + tone, "cr_plus"));
  return d;
}

AugmentedGateDef build_cr_echo_tail(const BackendConfig& cfg, int control, int target,
                                    double theta_deg) {
  AugmentedGateDef full = build_cr_theta(cfg, control, target, theta_deg);
  const int shift = full.schedule.instructions()[0].duration();
  AugmentedGateDef d{"CREchoTail", {control, target}, {theta_deg}, {}, full.provenance};
  const auto& ins = full.schedule.instructions();
  for (size_t i = 1; i < ins.size(); ++i) {
    ScheduleInstruction x = ins[i];
    x.start -= shift;
    d.schedule.add(x);
  }
  return d;
}

Envelope subspace_envelope(Transition t, double amplitude, int duration, double alpha_ghz,
                           double dt_ns, double drag_beta, double extra_detuning_ghz) {
  const double sigma = duration / (t == Transition::T02 ? 6.0 : 4.0);
  switch (t) {
    case Transition::T01:
      return Envelope::frequency_shifted(Envelope::drag(amplitude, duration, sigma, drag_beta),
                                         extra_detuning_ghz, dt_ns);
    case Transition::T12:
      return Envelope::frequency_shifted(Envelope::gaussian(amplitude, duration, sigma),
                                         alpha_ghz + extra_detuning_ghz, dt_ns);
    case Transition::T02:
      return Envelope::frequency_shifted(Envelope::gaussian(amplitude, duration, sigma),
                                         alpha_ghz / 2.0 + extra_detuning_ghz, dt_ns);
  }
  throw UserError("unknown transition");
}

AugmentedGateDef build_subspace_pulse(const BackendConfig& cfg, int q, Transition t,
                                      double amplitude, int duration, double extra_detuning_ghz) {
  if (q < 0 || q >= cfg.num_qubits()) throw UserError("qubit out of range");
  const double alpha = cfg.qubits[q].alpha_ghz;
  if (!(std::abs(alpha) > 0)) throw MissingCalibration("qubit has no anharmonicity");
  double beta = 0.0;
  std::vector<std::string> prov;
  std::optional<Envelope> reuse;
  if (t == Transition::T01) {
    const Envelope& x = sole_envelope(cfg, need_cmd(cfg, "x", {q}), q, tag("x", {q}));
    const Envelope& core = x.shape == Shape::FrequencyShifted ? *x.base : x;
    beta = core.beta;
    // Same length as x: keep its calibrated shape and frequency, rescaled.
    if (x.duration == duration && std::abs(x.peak_amp()) > 0)
      reuse = x.scaled(amplitude / std::abs(x.peak_amp()));
    prov.push_back(tag("x", {q}));
  } else {
    prov.push_back("alpha[" + std::to_string(q) + "]");
  }
  AugmentedGateDef d{t == Transition::T01   ? "Subspace01Pulse"
                     : t == Transition::T12 ? "Subspace12Pulse"
                                            : "Subspace02Pulse",
                     {q},
                     {},
                     {},
                     prov};
  if (reuse && extra_detuning_ghz != 0.0)
    reuse = Envelope::frequency_shifted(*reuse, extra_detuning_ghz, cfg.dt_ns);
  d.schedule.add(play(cfg.drive_channel(q),
                      reuse ? *reuse
                            : subspace_envelope(t, amplitude, duration, alpha, cfg.dt_ns, beta,
                                                extra_detuning_ghz)));
  return d;
}

}  // namespace augpulse
