#include <gtest/gtest.h>

#include <random>

#include "augpulse/errors.hpp"
#include "augpulse/forge/basis_forge.hpp"
#include "augpulse/sim/calibration.hpp"
#include "augpulse/sim/experiments.hpp"
#include "augpulse/sim/metrics.hpp"
#include "augpulse/sim/rb.hpp"
#include "augpulse/sim/work_pool.hpp"
#include "support.hpp"

using namespace augpulse;
using augpulse::fixtures::mock;

namespace {

DeviceModel one(int q = 0) { return DeviceModel::from_backend(mock(), {q}); }
DeviceModel two() { return DeviceModel::from_backend(mock(), {0, 1}); }

CVector random_state(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0, 1);
  CVector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = cplx(n(rng), n(rng));
  return v.normalized();
}

PulseSchedule random_drive(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0, 1);
  PulseSchedule s;
  for (const char* ch : {"d0", "d1", "u0"}) {
    const int dur = 32 + static_cast<int>(u(rng) * 200);
    s.add(play(ch, Envelope::gaussian(std::polar(0.3 * u(rng), 6.28 * u(rng)), dur, dur / 4.0)), Align::Asap);
  }
  s.add(frame_change("d0", 77), Align::Asap);
  s.add(play("d0", Envelope::drag(0.1, 160, 40, -1.0)), Align::Asap);
  return s;
}

}  // namespace

TEST(Propagate, EmptyScheduleLeavesStateAlone) {
  std::mt19937_64 rng(1);
  const CVector psi = random_state(9, rng);
  const auto out = propagate(PulseSchedule{}, two(), QuantumState::pure(2, psi));
  EXPECT_LT((out.psi - psi).norm(), 1e-15);
  // Pure delay is also a no-op in the interaction picture.
  PulseSchedule idle;
  idle.add(play("d0", Envelope::constant(0.0, 500)));
  EXPECT_LT((propagate(idle, two(), QuantumState::pure(2, psi)).psi - psi).norm(), 1e-15);
}

TEST(Propagate, NormIsPreserved) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 5; ++i) {
    const auto out = propagate(random_drive(rng), two(), QuantumState::pure(2, random_state(9, rng)));
    EXPECT_NEAR(out.psi.norm(), 1.0, 1e-8);
  }
}

TEST(Propagate, NoisyEvolutionIsAState) {
  std::mt19937_64 rng(3);
  SimOptions so;
  so.noisy = true;
  const auto out = propagate(random_drive(rng), two(), QuantumState::pure(2, random_state(9, rng)), so);
  ASSERT_TRUE(out.mixed);
  EXPECT_NEAR(out.trace(), 1.0, 1e-9);
  EXPECT_LT((out.rho - out.rho.adjoint()).norm(), 1e-12);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(out.rho);
  EXPECT_GE(es.eigenvalues().minCoeff(), -1e-9);
}

TEST(Propagate, NoisyMatchesPureWithoutDecay) {
  std::mt19937_64 rng(4);
  const PulseSchedule s = random_drive(rng);
  DeviceModel m = two();
  for (auto& q : m.qubits) q.t1_us = q.t2_us = 0;
  const CVector psi = random_state(9, rng);
  SimOptions so;
  so.noisy = true;
  const auto pure = propagate(s, m, QuantumState::pure(2, psi));
  const auto mixed = propagate(s, two(), QuantumState::pure(2, psi), so);
  // Decay over a few hundred ns costs well under a percent.
  EXPECT_GT((pure.psi.adjoint() * mixed.rho * pure.psi)(0, 0).real(), 0.99);
}

TEST(Propagate, ShiftedDriveEqualsDetunedQubit) {
  const double delta = 0.0005;  // GHz
  const Envelope base = Envelope::drag(0.077, 160, 40, -1.4);
  PulseSchedule shifted, plain;
  shifted.add(play("d0", Envelope::frequency_shifted(base, delta, 0.22)));
  plain.add(play("d0", base));
  DeviceModel detuned = one();
  detuned.qubits[0].detuning_ghz = -delta;
  const auto a = propagate(shifted, one(), QuantumState::ground(1));
  const auto b = propagate(plain, detuned, QuantumState::ground(1));
  EXPECT_GE(std::norm(a.psi.dot(b.psi)), 1 - 1e-6);
}

TEST(Propagate, CalibratedCrossResonanceIsZx) {
  const Unitary u = qubit_block(build_cr_theta(mock(), 0, 1, 90).schedule, two());
  // qubit_block is little-endian like circuit_unitary. The echo X pair on the
  // control cancels.
  const Unitary want = circuit_unitary(Circuit(2, {gates::cr(0, 1, 90)}));
  EXPECT_GT(average_gate_fidelity(u, want), 0.999);
}

TEST(Tomography, BlochVectors) {
  const auto z = tomography(PulseSchedule{}, one(), 0);
  EXPECT_NEAR(z.z, 1.0, 1e-12);
  EXPECT_NEAR(std::hypot(z.x, z.y), 0.0, 1e-12);

  const auto eq = tomography(build_direct_rx(mock(), 0, 90).schedule, one(), 0);
  EXPECT_LT(std::abs(eq.z), 0.01);
  EXPECT_NEAR(eq.y, -1.0, 0.01);

  const auto r67 = tomography(build_direct_rx(mock(), 0, 67).schedule, one(), 0);
  EXPECT_NEAR(r67.z, std::cos(deg2rad(67)), 0.02);

  for (double t : {1.0, 4.5, 10.0})
    EXPECT_NEAR(tomography(build_direct_rx(mock(), 0, t).schedule, one(), 0).z, std::cos(deg2rad(t)), 1e-3);
}

TEST(Tomography, FrameChangesRotateTheEquator) {
  PulseSchedule s = build_direct_rx(mock(), 0, 90).schedule;
  add_virtual_rz(s, mock(), 0, 90, s.duration());
  const auto b = tomography(s, one(), 0);
  // RZ(90) takes -y to +x.
  EXPECT_NEAR(b.x, 1.0, 0.01);
}

TEST(Tomography, ShotsAreSeeded) {
  TomographyOptions o;
  o.shots = 2000;
  o.seed = 11;
  const auto s = build_direct_rx(mock(), 0, 60).schedule;
  const auto a = tomography(s, one(), 0, o), b = tomography(s, one(), 0, o);
  EXPECT_EQ(a.x, b.x);
  EXPECT_EQ(a.z, b.z);
  EXPECT_NEAR(a.z, 0.5, 0.06);
}

TEST(Calibration, RabiFindsThePiPulse) {
  RabiOptions o;
  o.drag_beta = -1.4;  // without DRAG, leakage caps the transfer just below 0.999
  const auto r = rabi_calibrate(one(), 0, Transition::T01, o);
  EXPECT_GE(r.transfer, 0.999);
  DeviceModel stronger = one();
  stronger.qubits[0].drive_rate *= 2;
  const auto r2 = rabi_calibrate(stronger, 0, Transition::T01, o);
  EXPECT_NEAR(r2.amplitude / r.amplitude, 0.5, 0.025);
  const auto r02 = rabi_calibrate(one(), 0, Transition::T02);
  EXPECT_GT(r02.amplitude, r.amplitude);
}

TEST(Calibration, OneTwoTransitionAtThirtyFiveNanoseconds) {
  const auto r = rabi_calibrate(one(), 0, Transition::T12);
  EXPECT_GE(r.transfer, 0.99);
  // Single-photon drive for 1 -> 2 sits near the x amplitude scaled by the
  // sqrt(2) matrix element.
  EXPECT_NEAR(r.amplitude, 0.109, 0.01);
}

TEST(Calibration, NoCouplingIsAnError) {
  DeviceModel m = one();
  m.qubits[0].drive_rate = 0;
  EXPECT_THROW(rabi_calibrate(m, 0, Transition::T01), CalibrationError);
}

TEST(Sweep, TracksCosineAndCorrectionShrinksX) {
  const auto rows = sweep_direct_rx(mock(), 0);
  ASSERT_EQ(rows.size(), 41u);
  for (const auto& r : rows) EXPECT_NEAR(r.bloch.z, std::cos(deg2rad(r.theta_deg)), 0.02) << r.theta_deg;
  for (int i : {0, 20, 40}) EXPECT_LT(std::abs(rows[i].bloch.x), 1e-3);
  const PhaseCorrectionTable t = fit_phase_corrections(rows);
  SweepOptions o;
  o.corrections = &t;
  const auto fixed = sweep_direct_rx(mock(), 0, o);
  EXPECT_GE(max_abs_x(rows) / max_abs_x(fixed), 5.0);
}

TEST(CrTomography, NinetyDegreesSplitsOnControl) {
  const auto rows = cr_tomography_sweep(mock(), 0, 1, 3);
  // 0, 45, 90 for each control state.
  ASSERT_EQ(rows.size(), 6u);
  for (const auto& r : rows) {
    const double t = deg2rad(r.theta_deg);
    // CR(theta) rotates the target about X by +-theta depending on the control.
    const double sign = r.control_state == 0 ? -1 : 1;
    EXPECT_NEAR(r.target.z, std::cos(t), 0.02) << r.theta_deg;
    EXPECT_NEAR(r.target.y, sign * std::sin(t), 0.02) << r.theta_deg << " c=" << r.control_state;
  }
}

TEST(Hellinger, UnitValues) {
  EXPECT_NEAR(hellinger_distance({0.2, 0.3, 0.5}, {0.2, 0.3, 0.5}), 0.0, 1e-12);
  EXPECT_NEAR(hellinger_distance({1, 0}, {0, 1}), 1.0, 1e-12);
  EXPECT_NEAR(hellinger_distance({0.5, 0.5}, {1, 0}), std::sqrt(1 - std::sqrt(0.5)), 1e-12);
  EXPECT_NEAR(hellinger_distance({0.5, 0.5}, {1, 0}), 0.5412, 1e-4);
}

TEST(Hellinger, RejectsNonDistributions) {
  EXPECT_THROW(hellinger_distance({0.5, 0.6}, {0.5, 0.5}), UserError);
  EXPECT_THROW(hellinger_distance({-0.1, 1.1}, {0.5, 0.5}), UserError);
  EXPECT_THROW(hellinger_distance({1}, {0.5, 0.5}), UserError);
}

TEST(Hellinger, OptimizedCompilationIsCloserToIdeal) {
  const auto r = hellinger_benchmark(mock(), h2_ansatz(37));
  EXPECT_LT(r.duration_optimized, r.duration_standard);
  EXPECT_LE(r.h_optimized, r.h_standard);
  const auto clean = hellinger_benchmark(mock(), h2_ansatz(37), false);
  EXPECT_LT(clean.h_optimized, 0.05);
  EXPECT_LT(clean.h_standard, 0.05);
}

TEST(Rb, SequencesInvertThemselves) {
  for (int k : {1, 2, 7}) {
    Circuit c(1, rb_sequence(k, 3, 99));
    EXPECT_EQ(c.gates.size(), static_cast<size_t>(k));
    EXPECT_LT(phase_distance(circuit_unitary(c), Unitary::Identity(2, 2)), 1e-10);
  }
  EXPECT_EQ(rb_sequence(5, 1, 4), rb_sequence(5, 1, 4));
  EXPECT_NE(rb_sequence(5, 1, 4), rb_sequence(5, 2, 4));
}

TEST(Rb, FitRecoversSyntheticDecay) {
  std::vector<int> k;
  std::vector<double> p;
  for (int i = 2; i <= 60; ++i) {
    k.push_back(i);
    p.push_back(0.45 * std::pow(0.97, i) + 0.5);
  }
  const RbFit f = fit_rb(k, p);
  EXPECT_NEAR(f.f, 0.97, 1e-6);
  EXPECT_NEAR(f.a, 0.45, 1e-5);
  EXPECT_NEAR(f.b, 0.5, 1e-5);
  EXPECT_THROW(fit_rb({1, 2, 3}, {0.5, 0.6, 0.7}), FitError);
  EXPECT_NEAR(fit_rb({1, 2, 3}, {0.9, 0.9, 0.9}).f, 1.0, 0);
}

TEST(Rb, NoiselessReturnsToGround) {
  RbOptions o;
  o.kmax = 8;
  o.seqs = 2;
  o.noisy = false;
  o.modes = {RbMode::Standard, RbMode::Optimized};
  const RbResult r = rb_experiment(mock(), o);
  for (const auto& p : r.points) EXPECT_GE(p.p0, 0.999);
  for (const auto& [m, f] : r.fits) EXPECT_GT(f.f, 0.999);
}

TEST(Counter, ZeroCycles) { EXPECT_EQ(qutrit_counter(mock(), 0, 0, false), std::vector<double>{1.0}); }

TEST(Counter, NoiselessCyclesReturnToGround) {
  const auto p = qutrit_counter(mock(), 0, 10, false);
  ASSERT_EQ(p.size(), 11u);
  for (double v : p) EXPECT_GE(v, 0.99);
}

TEST(Counter, NoisyDropoutGrows) {
  const CounterPulses pulses = calibrate_counter_pulses(mock(), 0);
  const auto p = qutrit_counter(mock(), 0, 30, true, &pulses);
  for (size_t k = 1; k < p.size(); ++k) EXPECT_LE(p[k], p[k - 1] + 1e-3) << k;
  EXPECT_LT(p.back(), p[1] - 0.02);
}

TEST(WorkPool, CoversEveryIndexAndRethrows) {
  std::vector<int> hit(100, 0);
  parallel_for(100, 4, [&](int i) { hit[i]++; });
  for (int h : hit) EXPECT_EQ(h, 1);
  EXPECT_THROW(parallel_for(10, 3, [](int i) {
                 if (i == 7) throw UserError("boom");
               }),
               UserError);
}

TEST(Model, HashIsStable) {
  EXPECT_EQ(model_hash(one()), model_hash(one()));
  EXPECT_NE(model_hash(one(0)), model_hash(two()));
  EXPECT_EQ(model_hash(one()).size(), 16u);
}
