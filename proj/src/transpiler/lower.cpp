#include <cmath>
#include <optional>

#include "augpulse/errors.hpp"
#include "augpulse/forge/basis_forge.hpp"
#include "augpulse/transpiler/compile.hpp"

namespace augpulse {

namespace {

bool nonzero(double deg) { return std::abs(normalize_deg(deg)) >= kAngleEps; }

class Lowerer {
 public:
  Lowerer(const BackendConfig& cfg, Mode mode, const PhaseCorrectionTable* corr)
      : cfg_(cfg), mode_(mode), corr_(corr), avail_(static_cast<size_t>(cfg.num_qubits()), 0) {}

  void emit(const Gate& g) {
    for (int q : g.qubits)
      if (q >= cfg_.num_qubits())
        throw UnloweredGate("gate on qubit " + std::to_string(q) + " but backend has " +
                            std::to_string(cfg_.num_qubits()));
    switch (g.kind) {
      case GateKind::BARRIER: {
        int t = 0;
        for (int q : g.qubits) t = std::max(t, avail_[q]);
        for (int q : g.qubits) avail_[q] = t;
        return;
      }
      case GateKind::RZ:
        if (nonzero(g.params[0])) place(g.qubits, frames(g.qubits[0], g.params[0]));
        return;
      case GateKind::CNOT:
        return cnot(g.qubits[0], g.qubits[1]);
      case GateKind::OPEN_CNOT:
        emit(gates::x(g.qubits[0]));
        emit(gates::cnot(g.qubits[0], g.qubits[1]));
        emit(gates::x(g.qubits[0]));
        return;
      case GateKind::SWAP:
        emit(gates::cnot(g.qubits[0], g.qubits[1]));
        emit(gates::cnot(g.qubits[1], g.qubits[0]));
        emit(gates::cnot(g.qubits[0], g.qubits[1]));
        return;
      case GateKind::ZZ: {
        const int a = g.qubits[0], b = g.qubits[1];
        if (mode_ == Mode::Standard) {
          emit(gates::cnot(a, b));
          emit(gates::rz(b, g.params[0]));
          emit(gates::cnot(a, b));
        } else {
          emit(gates::h(b));
          emit(gates::cr(a, b, g.params[0]));
          emit(gates::h(b));
        }
        return;
      }
      case GateKind::CR:
        return cr(g.qubits[0], g.qubits[1], g.params[0]);
      case GateKind::Custom: {
        const auto* s = cfg_.find_cmd(g.name, g.qubits);
        if (!s) throw UnloweredGate("no calibration for custom gate '" + g.name + "'");
        place(g.qubits, *s);
        return;
      }
      case GateKind::ISWAP:
      case GateKind::SQRT_ISWAP:
      case GateKind::FSIM:
        throw UnloweredGate(std::string(kind_name(g.kind)) + " is not native on this backend");
      default:
        return single(g);
    }
  }

  // CR(-a) X_c CR(a) on one ordered pair: the two tones and the echo pulse
  // of a single echoed CR(2a), no extra leading X.
  void echo_tail(int c, int t, double first_deg) {
    const double theta = 2.0 * std::abs(first_deg);
    if (!cfg_.control_channel(c, t))
      throw UnloweredGate("no cross-resonance channel from qubit " + std::to_string(c) + " to " +
                          std::to_string(t));
    const PulseSchedule tail = build_cr_echo_tail(cfg_, c, t, theta).schedule;
    if (first_deg > 0) place({t}, frames(t, 180.0));
    place({c, t}, tail);
    if (first_deg > 0) place({t}, frames(t, -180.0));
  }

  PulseSchedule take() { return std::move(sched_); }

 private:
  PulseSchedule frames(int q, double deg) {
    PulseSchedule s;
    add_virtual_rz(s, cfg_, q, normalize_deg(deg), 0);
    return s;
  }

  void place(const std::vector<int>& qs, const PulseSchedule& block) {
    int start = 0;
    for (int q : qs) start = std::max(start, avail_[q]);
    sched_.add_schedule(block, start);
    for (int q : qs) avail_[q] = start + block.duration();
  }

  const PulseSchedule& cmd(const std::string& gate, const std::vector<int>& qs) {
    const auto* s = cfg_.find_cmd(gate, qs);
    if (!s) throw MissingCalibration("backend has no " + gate + " calibration for these qubits");
    return *s;
  }

  void single(const Gate& g) {
    const int q = g.qubits[0];
    if (mode_ == Mode::Optimized) {
      if (g.kind == GateKind::X) return place({q}, build_direct_x(cfg_, q).schedule);
      if (g.kind == GateKind::RX) {
        if (!nonzero(g.params[0])) return;
        return place({q}, build_direct_rx(cfg_, q, g.params[0], corr_).schedule);
      }
      const auto [theta, phi, lambda] = u3_angles(gate_unitary(g));
      if (theta < kAngleEps) {
        if (nonzero(phi + lambda)) place({q}, frames(q, phi + lambda));
        return;
      }
      if (nonzero(lambda - 90.0)) place({q}, frames(q, lambda - 90.0));
      place({q}, build_direct_rx(cfg_, q, theta, corr_).schedule);
      if (nonzero(phi + 90.0)) place({q}, frames(q, phi + 90.0));
      return;
    }
    // Standard basis: u1 (virtual), u2 (one rx90), u3 (two rx90).
    const auto [theta, phi, lambda] = u3_angles(gate_unitary(g));
    const PulseSchedule& rx90 = cmd("rx90", {q});
    if (theta < kAngleEps) {
      if (nonzero(phi + lambda)) place({q}, frames(q, phi + lambda));
      return;
    }
    if (std::abs(theta - 90.0) < kAngleEps) {
      if (nonzero(lambda - 90.0)) place({q}, frames(q, lambda - 90.0));
      place({q}, rx90);
      if (nonzero(phi + 90.0)) place({q}, frames(q, phi + 90.0));
      return;
    }
    if (nonzero(lambda)) place({q}, frames(q, lambda));
    place({q}, rx90);
    if (nonzero(theta + 180.0)) place({q}, frames(q, theta + 180.0));
    place({q}, rx90);
    if (nonzero(phi + 180.0)) place({q}, frames(q, phi + 180.0));
  }

  void cnot(int c, int t) {
    if (cfg_.find_cmd("cnot", {c, t})) return place({c, t}, cmd("cnot", {c, t}));
    if (!cfg_.find_cmd("cnot", {t, c}))
      throw UnloweredGate("no cnot calibration for pair (" + std::to_string(c) + "," +
                          std::to_string(t) + ") in either direction");
    for (int q : {c, t}) emit(gates::h(q));
    place({c, t}, cmd("cnot", {t, c}));
    for (int q : {c, t}) emit(gates::h(q));
  }

  void cr(int c, int t, double deg) {
    const double theta = normalize_deg(deg);
    if (!nonzero(theta)) return;
    if (mode_ == Mode::Standard) {
      emit(gates::h(t));
      emit(gates::cnot(c, t));
      emit(gates::rz(t, theta));
      emit(gates::cnot(c, t));
      emit(gates::h(t));
      return;
    }
    if (!cfg_.control_channel(c, t)) {
      if (!cfg_.control_channel(t, c))
        throw UnloweredGate("no cross-resonance channel between qubits " + std::to_string(c) +
                            " and " + std::to_string(t));
      // H(x)H swaps the roles: Z(x)X -> X(x)Z.
      for (int q : {c, t}) emit(gates::h(q));
      cr(t, c, theta);
      for (int q : {c, t}) emit(gates::h(q));
      return;
    }
    if (theta < 0) {
      // Z_t CR(a) Z_t = CR(-a).
      place({t}, frames(t, 180.0));
      place({c, t}, build_cr_theta(cfg_, c, t, -theta).schedule);
      place({t}, frames(t, -180.0));
      return;
    }
    place({c, t}, build_cr_theta(cfg_, c, t, theta).schedule);
  }

  const BackendConfig& cfg_;
  Mode mode_;
  const PhaseCorrectionTable* corr_;
  std::vector<int> avail_;
  PulseSchedule sched_;
};

int next_on_wire(const std::vector<Gate>& l, size_t pos, int q) {
  for (size_t i = pos + 1; i < l.size(); ++i)
    for (int x : l[i].qubits)
      if (x == q) return static_cast<int>(i);
  return -1;
}

bool is_x_like(const Gate& g) {
  return g.kind == GateKind::X ||
         (g.kind == GateKind::RX && std::abs(normalize_deg(g.params[0]) - 180.0) < kAngleEps);
}

// Finds CR(c,t,-a), X_c, CR(c,t,a) with nothing else on either wire in
// between; returns the indices of the X and the closing CR.
std::optional<std::pair<int, int>> echo_run(const std::vector<Gate>& l, size_t i) {
  const Gate& g = l[i];
  if (g.kind != GateKind::CR) return std::nullopt;
  const double a = normalize_deg(g.params[0]);
  if (!nonzero(a) || std::abs(a) > 90.0) return std::nullopt;
  const int c = g.qubits[0], t = g.qubits[1];
  const int x = next_on_wire(l, i, c), k = next_on_wire(l, i, t);
  if (x < 0 || k < 0 || !is_x_like(l[x]) || next_on_wire(l, x, c) != k) return std::nullopt;
  const Gate& h = l[k];
  if (h.kind != GateKind::CR || h.qubits != g.qubits ||
      std::abs(normalize_deg(h.params[0] + a)) >= kAngleEps)
    return std::nullopt;
  return std::pair{x, k};
}

}  // namespace

Dag unroll_standard(const Dag& d) {
  Circuit out(d.num_qubits());
  for (const auto& g : d.nodes()) {
    const int a = g.arity() == 2 ? g.qubits[0] : -1, b = g.arity() == 2 ? g.qubits[1] : -1;
    switch (g.kind) {
      case GateKind::CR:
        for (auto& x : {gates::h(b), gates::cnot(a, b), gates::rz(b, g.params[0]), gates::cnot(a, b),
                        gates::h(b)})
          out.add(x);
        break;
      case GateKind::ZZ:
        for (auto& x : {gates::cnot(a, b), gates::rz(b, g.params[0]), gates::cnot(a, b)}) out.add(x);
        break;
      case GateKind::SWAP:
        for (auto& x : {gates::cnot(a, b), gates::cnot(b, a), gates::cnot(a, b)}) out.add(x);
        break;
      case GateKind::OPEN_CNOT:
        for (auto& x : {gates::x(a), gates::cnot(a, b), gates::x(a)}) out.add(x);
        break;
      default:
        out.add(g);
    }
  }
  return to_dag(out);
}

LowerResult lower(const Dag& d, const BackendConfig& cfg, Mode mode,
                  const PhaseCorrectionTable* corrections) {
  if (d.num_qubits() > cfg.num_qubits())
    throw UnloweredGate("circuit needs " + std::to_string(d.num_qubits()) + " qubits, backend has " +
                        std::to_string(cfg.num_qubits()));
  Lowerer lw(cfg, mode, corrections);
  const Dag input = mode == Mode::Standard ? unroll_standard(d) : d;
  const auto& nodes = input.nodes();
  std::vector<char> done(nodes.size(), 0);
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (done[i]) continue;
    if (mode == Mode::Optimized) {
      if (auto run = echo_run(nodes, i)) {
        lw.echo_tail(nodes[i].qubits[0], nodes[i].qubits[1], normalize_deg(nodes[i].params[0]));
        done[run->first] = done[run->second] = 1;
        continue;
      }
    }
    lw.emit(nodes[i]);
  }

  LowerResult r;
  r.schedule = lw.take();
  r.report.mode = mode;
  r.report.gates_in = d.size();
  r.report.gates_out = input.size();
  r.report.envelopes = r.schedule.envelope_count();
  for (const auto& i : r.schedule.instructions()) {
    if (!i.is_envelope()) continue;
    for (const auto& c : cfg.control_channels)
      if (c.channel == i.channel) ++r.report.two_qubit_pulse_blocks;
  }
  r.report.duration_dt = r.schedule.duration();
  r.report.duration_ns = r.schedule.duration() * cfg.dt_ns;
  return r;
}

}  // namespace augpulse
