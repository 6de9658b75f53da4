#include "augpulse/pulse/mock_backend.hpp"

namespace augpulse {

BackendConfig build_mock_backend(const MockParams& p) {
  BackendConfig b;
  b.name = "almaden_mock";
  b.dt_ns = p.dt_ns;
  b.qubits = p.qubits;
  b.model = p.model;
  const int n = static_cast<int>(p.qubits.size());
  for (int q = 0; q < n; ++q) b.drive_channels.push_back("d" + std::to_string(q));
  for (size_t k = 0; k < p.model.cr.size(); ++k) {
    const auto& c = p.model.cr[k];
    b.control_channels.push_back({c.control, c.target, "u" + std::to_string(k)});
  }

  auto detuned = [&](const Envelope& e, int q) {
    const double d = p.drive_detuning_ghz.empty() ? 0.0 : p.drive_detuning_ghz[q];
    return d == 0.0 ? e : Envelope::frequency_shifted(e, d, p.dt_ns);
  };
  auto x_env = [&](int q) {
    return detuned(Envelope::drag(p.x_amp[q], p.sq_duration, p.sq_sigma, p.x_beta[q]), q);
  };
  auto rx90_env = [&](int q) {
    return detuned(Envelope::drag(p.rx90_amp[q], p.sq_duration, p.sq_sigma, p.rx90_beta[q]), q);
  };
  for (int q = 0; q < n; ++q) {
    PulseSchedule x, rx90;
    x.add(play(b.drive_channel(q), x_env(q)));
    rx90.add(play(b.drive_channel(q), rx90_env(q)));
    b.cmd_def[{"x", {q}}] = x;
    b.cmd_def[{"rx90", {q}}] = rx90;
  }

  for (size_t k = 0; k < p.model.cr.size(); ++k) {
    const int c = p.model.cr[k].control, t = p.model.cr[k].target;
    const std::string& u = b.control_channels[k].channel;
    const Envelope tone =
        Envelope::gaussian_square(p.cr_amp[k], p.cr_duration, p.cr_sigma, p.cr_width);
    const int sq = p.sq_duration, cr = p.cr_duration;
    PulseSchedule s;
    s.add(play(b.drive_channel(c), x_env(c), 0, "pre_x"));
    s.add(play(b.drive_channel(t), rx90_env(t).scaled(-1.0), 0, "pre_rx_target"));
    s.add(play(u, tone.scaled(-1.0), sq, "cr_minus"));
    s.add(play(b.drive_channel(c), x_env(c), sq + cr, "echo_x"));
    s.add(play(u, tone, 2 * sq + cr, "cr_plus"));
    for (const auto& ch : b.frame_channels(c)) s.add(frame_change(ch, -90.0, 2 * sq + 2 * cr));
    b.cmd_def[{"cnot", {c, t}}] = s;
  }
  return b;
}

MockParams line_mock_params(const MockParams& base, int n) {
  MockParams p = base;
  p.qubits.clear();
  p.x_amp.clear();
  p.x_beta.clear();
  p.rx90_amp.clear();
  p.rx90_beta.clear();
  p.drive_detuning_ghz.clear();
  p.model.drive_rate.clear();
  p.model.cr.clear();
  p.cr_amp.clear();
  for (int q = 0; q < n; ++q) {
    const size_t k = static_cast<size_t>(q % 2);
    p.qubits.push_back(base.qubits[k]);
    p.x_amp.push_back(base.x_amp[k]);
    p.x_beta.push_back(base.x_beta[k]);
    p.rx90_amp.push_back(base.rx90_amp[k]);
    p.rx90_beta.push_back(base.rx90_beta[k]);
    p.drive_detuning_ghz.push_back(base.drive_detuning_ghz.empty() ? 0.0
                                                                   : base.drive_detuning_ghz[k]);
    p.model.drive_rate.push_back(base.model.drive_rate[k]);
  }
  for (int q = 0; q + 1 < n; ++q) {
    for (int dir = 0; dir < 2; ++dir) {
      const size_t k = static_cast<size_t>(dir) % base.model.cr.size();
      auto cr = base.model.cr[k];
      cr.control = dir == 0 ? q : q + 1;
      cr.target = dir == 0 ? q + 1 : q;
      p.model.cr.push_back(cr);
      p.cr_amp.push_back(base.cr_amp[k]);
    }
  }
  return p;
}

}  // namespace augpulse
