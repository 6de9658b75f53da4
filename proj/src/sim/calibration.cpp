#include "augpulse/sim/calibration.hpp"

#include <cmath>

#include "augpulse/circuit/circuit.hpp"
#include "augpulse/errors.hpp"
#include "augpulse/sim/propagate.hpp"
#include "augpulse/sim/tomography.hpp"
#include "augpulse/synth/nelder_mead.hpp"

namespace augpulse {

namespace {

DeviceModel isolate(const DeviceModel& m, int q) {
  if (q < 0 || q >= m.num_qubits()) throw UserError("qubit out of range");
  TransmonParams p = m.qubits[q];
  p.t1_us = p.t2_us = 0;
  return single_transmon(p, m.dt_ns);
}

int start_level(Transition t) { return t == Transition::T12 ? 1 : (t == Transition::T02 ? 2 : 0); }
int end_level(Transition t) { return t == Transition::T12 ? 2 : (t == Transition::T02 ? 0 : 1); }

PulseSchedule single_pulse(const Envelope& e) {
  PulseSchedule s;
  s.add(play("d0", e));
  return s;
}

}  // namespace

double transition_transfer(const DeviceModel& m, int q, Transition t, double amplitude,
                           const RabiOptions& opts, double extra_detuning_ghz) {
  const DeviceModel one = isolate(m, q);
  const auto& p = one.qubits[0];
  const Envelope e = subspace_envelope(t, amplitude, opts.duration, p.alpha_ghz, one.dt_ns,
                                       opts.drag_beta, extra_detuning_ghz);
  const auto out = propagate(single_pulse(e), one, QuantumState::basis({start_level(t)}));
  return out.populations()[end_level(t)];
}

RabiResult rabi_calibrate(const DeviceModel& m, int q, Transition t, const RabiOptions& opts) {
  const int n = std::max(opts.coarse_points, 11);
  std::vector<double> amp(n), pop(n);
  for (int i = 0; i < n; ++i) {
    amp[i] = static_cast<double>(i) / (n - 1);
    pop[i] = transition_transfer(m, q, t, amp[i], opts);
  }
  int peak = -1;
  for (int i = 1; i + 1 < n; ++i)
    if (pop[i] > 0.5 && pop[i] >= pop[i - 1] && pop[i] >= pop[i + 1]) {
      peak = i;
      break;
    }
  if (peak < 0) {
    // The two-photon resonance can be Stark shifted far enough that the
    // first peak is shallow; take the global maximum if it is clear.
    int best = static_cast<int>(std::max_element(pop.begin(), pop.end()) - pop.begin());
    if (t == Transition::T02 && pop[best] > 0.2 && best > 0 && best + 1 < n) peak = best;
  }
  if (peak < 0)
    throw CalibrationError(std::string("no Rabi oscillation on transition ") + transition_name(t));

  RabiResult r;
  r.amplitude = golden_max([&](double a) { return transition_transfer(m, q, t, a, opts); },
                           amp[peak - 1], amp[peak + 1], 1e-9);
  if (t == Transition::T02) {
    // Joint refinement of amplitude and the Stark-shifted resonance.
    auto cost = [&](const std::vector<double>& x) {
      if (x[0] <= 0 || x[0] > 1) return 1.0;
      return 1.0 - transition_transfer(m, q, t, x[0], opts, x[1] * 1e-3);
    };
    NelderMeadOptions no;
    no.initial_step = 0.01;
    no.max_evals = 600;
    no.xtol = 1e-9;
    auto res = nelder_mead(cost, {r.amplitude, 0.0}, no);
    r.amplitude = res.x[0];
    r.extra_detuning_ghz = res.x[1] * 1e-3;
  }
  r.transfer = transition_transfer(m, q, t, r.amplitude, opts, r.extra_detuning_ghz);
  return r;
}

namespace {

Envelope detuned_drag(double amp, int duration, double sigma, double beta, double detuning_ghz,
                      double dt_ns) {
  const Envelope e = Envelope::drag(amp, duration, sigma, beta);
  return detuning_ghz == 0.0 ? e : Envelope::frequency_shifted(e, detuning_ghz, dt_ns);
}

}  // namespace

double drag_calibrate(const DeviceModel& m, int q, double x_amp, int duration, double sigma,
                      double detuning_ghz) {
  const DeviceModel one = isolate(m, q);
  auto x_of = [&](double beta) {
    const Envelope e = detuned_drag(x_amp / 2.0, duration, sigma, beta, detuning_ghz, one.dt_ns);
    return bloch_vector(propagate(single_pulse(e), one, QuantumState::ground(1)), 0).x;
  };
  double lo = -2.0, hi = 2.0;
  while ((x_of(lo) > 0) == (x_of(hi) > 0)) {
    lo *= 2;
    hi *= 2;
    if (hi > 1e3) throw CalibrationError("DRAG calibration found no zero crossing");
  }
  return bracket_root(x_of, lo, hi, 1e-12);
}

QubitCalibration calibrate_qubit(const DeviceModel& m, int q, int duration, double sigma,
                                 int rounds) {
  const DeviceModel one = isolate(m, q);
  QubitCalibration c;
  RabiOptions ro;
  ro.duration = duration;
  for (int r = 0; r < rounds; ++r) {
    ro.drag_beta = c.x_beta;
    c.x_amp = rabi_calibrate(one, 0, Transition::T01, ro).amplitude;
    c.x_beta = drag_calibrate(one, 0, c.x_amp, duration, sigma);
  }

  auto bloch_of = [&](double amp, double beta, double det) {
    const Envelope e = detuned_drag(amp, duration, sigma, beta, det, one.dt_ns);
    return bloch_vector(propagate(single_pulse(e), one, QuantumState::ground(1)), 0);
  };
  // Joint refinement; the detuning is searched in MHz to keep the simplex
  // well scaled.
  auto residual = [&](const std::vector<double>& x) {
    const BlochVector half = bloch_of(x[0] / 2.0, x[1], x[2] * 1e-3);
    const BlochVector full = bloch_of(x[0], x[1], x[2] * 1e-3);
    return half.x * half.x + full.x * full.x + (full.z + 1.0) * (full.z + 1.0);
  };
  NelderMeadOptions nm;
  nm.initial_step = 0.01;
  nm.ftol = 1e-24;
  nm.max_evals = 4000;
  const auto best = nelder_mead(residual, {c.x_amp, c.x_beta, 0.0}, nm);
  c.x_amp = best.x[0];
  c.x_beta = best.x[1];
  c.detuning_ghz = best.x[2] * 1e-3;

  // rx90: amplitude for z = 0, DRAG for x = 0, alternated.
  c.rx90_amp = c.x_amp / 2.0;
  c.rx90_beta = c.x_beta;
  for (int r = 0; r < rounds; ++r) {
    auto z_of = [&](double a) { return bloch_of(a, c.rx90_beta, c.detuning_ghz).z; };
    c.rx90_amp = bracket_root(z_of, 0.8 * c.rx90_amp, 1.2 * c.rx90_amp, 1e-13);
    c.rx90_beta =
        drag_calibrate(one, 0, 2.0 * c.rx90_amp, duration, sigma, c.detuning_ghz);
  }
  return c;
}

double calibrate_cr_amplitude(const MockParams& p, size_t k) {
  const auto& cr = p.model.cr.at(k);
  const Unitary ideal = circuit_unitary(Circuit(2, {gates::cr(0, 1, 90.0)}));
  auto fidelity = [&](double amp) {
    MockParams trial = p;
    trial.cr_amp[k] = amp;
    const BackendConfig b = build_mock_backend(trial);
    const DeviceModel m = DeviceModel::from_backend(b, {cr.control, cr.target});
    const auto block = build_cr_theta(b, cr.control, cr.target, 90.0).schedule;
    return average_gate_fidelity(qubit_block(block, m), ideal);
  };
  Envelope tone = Envelope::gaussian_square(1.0, p.cr_duration, p.cr_sigma, p.cr_width);
  const double area_ns = (riser_area(tone) + p.cr_width) * p.dt_ns;
  const double guess = (kPi / 4.0) / (cr.zx_rate * area_ns);
  return golden_max(fidelity, 0.9 * guess, 1.1 * guess, 1e-9);
}

MockParams calibrate_mock(MockParams p) {
  const BackendConfig b0 = build_mock_backend(p);
  for (int q = 0; q < static_cast<int>(p.qubits.size()); ++q) {
    const DeviceModel m = DeviceModel::from_backend(b0, {q});
    const auto c = calibrate_qubit(m, 0, p.sq_duration, p.sq_sigma);
    p.x_amp[q] = c.x_amp;
    p.x_beta[q] = c.x_beta;
    p.rx90_amp[q] = c.rx90_amp;
    p.rx90_beta[q] = c.rx90_beta;
    p.drive_detuning_ghz[q] = c.detuning_ghz;
  }
  for (size_t k = 0; k < p.model.cr.size(); ++k) p.cr_amp[k] = calibrate_cr_amplitude(p, k);
  return p;
}

}  // namespace augpulse
