#include "augpulse/sim/experiments.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "augpulse/errors.hpp"
#include "augpulse/forge/basis_forge.hpp"
#include "augpulse/sim/calibration.hpp"
#include "augpulse/sim/metrics.hpp"
#include "augpulse/sim/propagate.hpp"
#include "augpulse/sim/work_pool.hpp"
#include "augpulse/transpiler/compile.hpp"

namespace augpulse {

std::vector<SweepRow> sweep_direct_rx(const BackendConfig& cfg, int q, const SweepOptions& opts) {
  if (opts.points < 2) throw UserError("sweep needs at least 2 points");
  const DeviceModel m = DeviceModel::from_backend(cfg, {q});
  std::vector<SweepRow> rows(static_cast<size_t>(opts.points));
  parallel_for(opts.points, opts.jobs, [&](int i) {
    const double theta = 180.0 * i / (opts.points - 1);
    const auto s = build_direct_rx(cfg, q, theta, opts.corrections).schedule;
    TomographyOptions t = opts.tomography;
    t.seed = opts.tomography.seed + static_cast<std::uint64_t>(i);
    rows[i] = {theta, tomography(s, m, 0, t)};
  });
  return rows;
}

PhaseCorrectionTable fit_phase_corrections(const std::vector<SweepRow>& rows) {
  constexpr int kHarmonics = 4;
  Eigen::MatrixXd a(rows.size(), kHarmonics);
  Eigen::VectorXd b(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    const double th = deg2rad(rows[i].theta_deg);
    const double w = std::sin(th);  // sqrt of the sin^2 weight
    const double err = rad2deg(std::atan2(rows[i].bloch.x, -rows[i].bloch.y));
    for (int k = 0; k < kHarmonics; ++k) a(i, k) = w * std::cos(k * th);
    b(i) = w * err;
  }
  const Eigen::VectorXd c = a.colPivHouseholderQr().solve(b);
  std::vector<double> corr(PhaseCorrectionTable::kGridPoints);
  // The poles carry no equatorial phase to correct.
  for (int i = 1; i + 1 < PhaseCorrectionTable::kGridPoints; ++i) {
    const double th = deg2rad(PhaseCorrectionTable::grid_angle(i));
    double v = 0;
    for (int k = 0; k < kHarmonics; ++k) v += c(k) * std::cos(k * th);
    corr[i] = -v;
  }
  return PhaseCorrectionTable(std::move(corr));
}

double max_abs_x(const std::vector<SweepRow>& rows) {
  double m = 0;
  for (const auto& r : rows) m = std::max(m, std::abs(r.bloch.x));
  return m;
}

std::vector<CrTomographyRow> cr_tomography_sweep(const BackendConfig& cfg, int control, int target,
                                                 int points, const TomographyOptions& opts) {
  if (points < 2) throw UserError("sweep needs at least 2 points");
  const DeviceModel m = DeviceModel::from_backend(cfg, {control, target});
  std::vector<CrTomographyRow> rows;
  for (int i = 0; i < points; ++i) {
    const double theta = 90.0 * i / (points - 1);
    const PulseSchedule s =
        theta > 0 ? build_cr_theta(cfg, control, target, theta).schedule : PulseSchedule{};
    for (int c = 0; c < 2; ++c) {
      const QuantumState init = QuantumState::basis({c, 0});
      TomographyOptions t = opts;
      t.seed = opts.seed + static_cast<std::uint64_t>(2 * i + c);
      rows.push_back({theta, c, tomography(s, m, 1, t, &init)});
    }
  }
  return rows;
}

CounterPulses calibrate_counter_pulses(const BackendConfig& cfg, int q, int duration) {
  const DeviceModel m = DeviceModel::from_backend(cfg, {q});
  RabiOptions ro;
  ro.duration = duration;
  CounterPulses p;
  const auto* x = cfg.find_cmd("x", {q});
  if (!x) throw MissingCalibration("counter needs the x calibration of qubit " + std::to_string(q));
  if (x->duration() == duration) {
    p.p01 = *x;
  } else {
    const auto r = rabi_calibrate(m, 0, Transition::T01, ro);
    p.p01 = build_subspace_pulse(cfg, q, Transition::T01, r.amplitude, duration).schedule;
  }
  const auto r12 = rabi_calibrate(m, 0, Transition::T12, ro);
  p.p12 = build_subspace_pulse(cfg, q, Transition::T12, r12.amplitude, duration,
                               r12.extra_detuning_ghz)
              .schedule;
  const auto r02 = rabi_calibrate(m, 0, Transition::T02, ro);
  p.p02 = build_subspace_pulse(cfg, q, Transition::T02, r02.amplitude, duration,
                               r02.extra_detuning_ghz)
              .schedule;
  return p;
}

std::vector<double> qutrit_counter(const BackendConfig& cfg, int q, int cycles, bool noisy,
                                   const CounterPulses* pulses) {
  if (cycles < 0) throw UserError("cycle count must be non-negative");
  const DeviceModel m = DeviceModel::from_backend(cfg, {q});
  if (noisy && !m.has_noise()) throw UserError("noisy counter needs T1/T2 in the backend");
  CounterPulses own;
  if (!pulses && cycles > 0) {
    own = calibrate_counter_pulses(cfg, q);
    pulses = &own;
  }
  SimOptions so;
  so.noisy = noisy;
  QuantumState s = QuantumState::ground(1);
  std::vector<double> p0{1.0};
  for (int k = 0; k < cycles; ++k) {
    for (const PulseSchedule* p : {&pulses->p01, &pulses->p12, &pulses->p02})
      s = propagate(*p, m, s, so);
    p0.push_back(s.populations()[0]);
  }
  return p0;
}

Circuit h2_ansatz(double theta_deg) {
  Circuit c(2);
  c.add(gates::x(0));
  c.add(gates::rx(0, 90.0));
  c.add(gates::h(1));
  c.add(gates::cnot(0, 1));
  c.add(gates::rz(1, theta_deg));
  c.add(gates::cnot(0, 1));
  c.add(gates::rx(0, -90.0));
  c.add(gates::h(1));
  return c;
}

std::vector<double> measured_distribution(const QuantumState& s) {
  if (s.num_qutrits != 2) throw UserError("measured_distribution expects two transmons");
  const auto pops = s.populations();
  std::vector<double> out(4, 0.0);
  for (int idx = 0; idx < 9; ++idx) {
    const int l0 = idx % 3, l1 = idx / 3;
    out[(l0 > 0 ? 1 : 0) + (l1 > 0 ? 2 : 0)] += std::max(0.0, pops[idx]);
  }
  double total = 0;
  for (double v : out) total += v;
  for (double& v : out) v /= total;
  return out;
}

BenchmarkResult hellinger_benchmark(const BackendConfig& cfg, const Circuit& c, bool noisy,
                                    const PhaseCorrectionTable* corrections) {
  if (c.num_qubits != 2) throw UserError("benchmark circuit must use two qubits");
  BenchmarkResult r;
  const Unitary u = circuit_unitary(c);
  for (int i = 0; i < 4; ++i) r.ideal.push_back(std::norm(u(i, 0)));

  const DeviceModel m = DeviceModel::from_backend(cfg, {0, 1});
  SimOptions so;
  so.noisy = noisy;
  auto run = [&](Mode mode, std::vector<double>& dist, int& duration) {
    PassOptions po;
    po.mode = mode;
    po.corrections = corrections;
    const auto res = compile(c, cfg, po);
    duration = res.report.duration_dt;
    dist = measured_distribution(propagate(res.schedule, m, QuantumState::ground(2), so));
  };
  run(Mode::Standard, r.standard, r.duration_standard);
  run(Mode::Optimized, r.optimized, r.duration_optimized);
  r.h_standard = hellinger_distance(r.standard, r.ideal);
  r.h_optimized = hellinger_distance(r.optimized, r.ideal);
  return r;
}

}  // namespace augpulse
