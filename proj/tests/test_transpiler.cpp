#include <gtest/gtest.h>

#include <random>

#include "augpulse/circuit/assembly.hpp"
#include "augpulse/errors.hpp"
#include "augpulse/transpiler/compile.hpp"
#include "support.hpp"

using namespace augpulse;
using augpulse::fixtures::line5;
using augpulse::fixtures::mock;

namespace {

Circuit hidden_zz() {
  return Circuit(3, {gates::h(0), gates::cnot(1, 2), gates::cnot(1, 0), gates::rz(2, 40), gates::cnot(1, 2)});
}

double dist(const Circuit& a, const Circuit& b) { return phase_distance(circuit_unitary(a), circuit_unitary(b)); }

int count(const Circuit& c, GateKind k) {
  int n = 0;
  for (const auto& g : c.gates) n += g.kind == k;
  return n;
}

int duration(const Circuit& c, const BackendConfig& cfg, Mode m) {
  PassOptions o;
  o.mode = m;
  return compile(c, cfg, o).report.duration_dt;
}

}  // namespace

TEST(Commutativity, BringsTheHiddenZzBlockTogether) {
  PassStats st;
  const Circuit out = from_dag(pass_commutativity_detection(to_dag(hidden_zz()), &st));
  EXPECT_EQ(st.matches, 1);
  EXPECT_LT(dist(out, hidden_zz()), 1e-12);
  const Dag d = to_dag(out);
  const auto& w = d.wire(2);
  ASSERT_EQ(w.size(), 3u);
  // CNOT(1,2), RZ, CNOT(1,2) are now adjacent in gate order as well.
  EXPECT_EQ(w[1], w[0] + 1);
  EXPECT_EQ(w[2], w[1] + 1);
  EXPECT_EQ(d.node(w[1]).kind, GateKind::RZ);
}

TEST(Commutativity, DiagonalOnControlMovesPastCnot) {
  EXPECT_TRUE(gates_commute(gates::rz(0, 30), gates::cnot(0, 1)));
  const Circuit c(2, {gates::rz(0, 30), gates::cnot(0, 1), gates::rz(0, -30)});
  PassStats st;
  const Circuit moved = from_dag(pass_commutativity_detection(to_dag(c), &st));
  EXPECT_EQ(st.matches, 1);
  EXPECT_LT(dist(moved, c), 1e-12);
  const Circuit done = from_dag(pass_cancel_adjacent(to_dag(moved)));
  EXPECT_EQ(done, Circuit(2, {gates::cnot(0, 1)}));
}

TEST(Commutativity, XOnControlStaysPut) {
  EXPECT_FALSE(gates_commute(gates::x(0), gates::cnot(0, 1)));
  // X on the target does commute with CNOT.
  EXPECT_TRUE(gates_commute(gates::x(1), gates::cnot(0, 1)));
  const Circuit c(2, {gates::x(0), gates::cnot(0, 1), gates::x(0)});
  PassStats st;
  EXPECT_EQ(from_dag(pass_commutativity_detection(to_dag(c), &st)), c);
  EXPECT_EQ(st.matches, 0);
}

TEST(Commutativity, RuleTableAgreesWithCommutator) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 300; ++i) {
    const Circuit c = fixtures::random_circuit(rng, 2, 2);
    const Gate &a = c.gates[0], &b = c.gates[1];
    const Unitary ab = circuit_unitary(Circuit(2, {a, b})), ba = circuit_unitary(Circuit(2, {b, a}));
    EXPECT_EQ(gates_commute(a, b), (ab - ba).norm() < 1e-9) << to_assembly(c);
  }
}

TEST(TemplateZz, HiddenZzTemplateBecomesOneCrossResonanceGate) {
  const Circuit block(3, {gates::h(0), gates::cnot(1, 0), gates::cnot(1, 2), gates::rz(2, 40), gates::cnot(1, 2)});
  PassStats st;
  const Circuit out = from_dag(pass_template_zz(to_dag(block), &st));
  EXPECT_EQ(st.matches, 1);
  EXPECT_EQ(count(out, GateKind::CR), 1);
  EXPECT_EQ(count(out, GateKind::CNOT), 1);
  EXPECT_LT(dist(out, block), 1e-12);
}

TEST(TemplateZz, NoPairsNoChange) {
  const Circuit c(2, {gates::cnot(0, 1), gates::rx(1, 20), gates::h(0)});
  PassStats st;
  EXPECT_EQ(from_dag(pass_template_zz(to_dag(c), &st)), c);
  EXPECT_EQ(st.matches, 0);
}

TEST(TemplateZz, RandomAnglesPreserveUnitary) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> a(-180, 180);
  for (int i = 0; i < 21; ++i) {
    const double t = a(rng);
    const Circuit c(2, {gates::cnot(1, 0), gates::rz(0, t), gates::cnot(1, 0), gates::zz(0, 1, -t / 3)});
    PassStats st;
    const Circuit out = from_dag(pass_template_zz(to_dag(c), &st));
    EXPECT_EQ(st.matches, 2);
    EXPECT_LT(dist(out, c), 1e-9) << t;
  }
}

TEST(CnotToEcho, ExpandsOneCnot) {
  const Circuit c(2, {gates::cnot(0, 1)});
  const Circuit out = from_dag(pass_cnot_to_echo(to_dag(c)));
  const Circuit want(2, {gates::x(0), gates::rx(1, -90), gates::cr(0, 1, -45), gates::x(0),
                         gates::cr(0, 1, 45), gates::rz(0, -90)});
  EXPECT_EQ(out, want);
  EXPECT_LT(dist(out, c), 1e-10);
}

TEST(CnotToEcho, OpenCnotLosesAnXPair) {
  const Circuit c(2, {gates::open_cnot(0, 1)});
  const Circuit expanded = from_dag(pass_cnot_to_echo(to_dag(c)));
  EXPECT_EQ(expanded.gates.size(), 8u);
  EXPECT_EQ(count(expanded, GateKind::X), 4);
  const Circuit cancelled = from_dag(pass_cancel_adjacent(to_dag(expanded)));
  EXPECT_EQ(cancelled.gates.size(), 6u);
  EXPECT_EQ(count(cancelled, GateKind::X), 2);
  EXPECT_LT(dist(cancelled, c), 1e-10);
}

TEST(Cancel, SelfInversePairVanishes) {
  EXPECT_TRUE(from_dag(pass_cancel_adjacent(to_dag(Circuit(1, {gates::x(0), gates::x(0)})))).gates.empty());
}

TEST(Cancel, MergesRotations) {
  const Circuit out = from_dag(pass_cancel_adjacent(to_dag(Circuit(1, {gates::rx(0, -90), gates::rx(0, -90)}))));
  ASSERT_EQ(out.gates.size(), 1u);
  EXPECT_EQ(out.gates[0].kind, GateKind::RX);
  EXPECT_NEAR(std::abs(out.gates[0].params[0]), 180.0, 1e-12);
}

TEST(Cancel, NeverGrowsAndReachesFixpoint) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 100; ++i) {
    const Circuit c = fixtures::random_circuit(rng, 3, 15);
    PassStats st;
    const Circuit once = from_dag(pass_cancel_adjacent(to_dag(c), &st));
    EXPECT_LE(once.gates.size(), c.gates.size());
    EXPECT_LE(st.matches, static_cast<int>(c.gates.size()));
    EXPECT_EQ(from_dag(pass_cancel_adjacent(to_dag(once))), once);
    EXPECT_LT(dist(once, c), 1e-9);
  }
}

TEST(DirectRotations, OnePulseBearingGatePerRotation) {
  const Circuit u3(1, {gates::u3(0, 33, 71, -12)});
  const Circuit out = from_dag(pass_direct_rotations(to_dag(u3)));
  EXPECT_EQ(count(out, GateKind::RX), 1);
  EXPECT_EQ(out.gates.size(), count(out, GateKind::RX) + count(out, GateKind::RZ) + 0u);
  EXPECT_LT(dist(out, u3), 1e-12);

  const Circuit x = from_dag(pass_direct_rotations(to_dag(Circuit(1, {gates::x(0)}))));
  EXPECT_EQ(x, Circuit(1, {gates::rx(0, 180)}));

  const Circuit id = from_dag(pass_direct_rotations(to_dag(Circuit(1, {gates::u3(0, 0, 0, 0)}))));
  EXPECT_EQ(count(id, GateKind::RX), 0);
}

TEST(U3Angles, RecoverRandomUnitaries) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> a(-180, 180);
  for (int i = 0; i < 100; ++i) {
    const Unitary u = gate_unitary(gates::u3(0, a(rng), a(rng), a(rng)));
    const auto [t, p, l] = u3_angles(u);
    EXPECT_GE(t, 0.0);
    EXPECT_LE(t, 180.0);
    EXPECT_LT(phase_distance(gate_unitary(gates::u3(0, t, p, l)), u), 1e-10);
  }
}

TEST(Lower, XDurations) {
  const Circuit x(1, {gates::x(0)});
  EXPECT_EQ(duration(x, mock(), Mode::Standard), 320);
  EXPECT_EQ(duration(x, mock(), Mode::Optimized), 160);
}

TEST(Lower, IndependentPulsesStartTogether) {
  const Circuit c(2, {gates::x(0), gates::x(1)});
  for (Mode m : {Mode::Standard, Mode::Optimized}) {
    PassOptions o;
    o.mode = m;
    const auto r = compile(c, mock(), o);
    std::set<int> starts;
    for (const auto& i : r.schedule.instructions())
      if (i.is_envelope()) starts.insert(i.start);
    EXPECT_EQ(*starts.begin(), 0);
    EXPECT_EQ(r.report.duration_dt, m == Mode::Standard ? 320 : 160);
  }
}

TEST(Lower, ZzIsShorterAsOneCrossResonance) {
  const Circuit zz(2, {gates::zz(0, 1, 30)});
  EXPECT_GT(duration(zz, mock(), Mode::Standard), duration(zz, mock(), Mode::Optimized));
}

TEST(Lower, GoldenDurations) {
  EXPECT_EQ(duration(Circuit(2, {gates::cnot(0, 1)}), mock(), Mode::Standard), 1344);
  EXPECT_EQ(duration(Circuit(2, {gates::cnot(1, 0)}), mock(), Mode::Optimized), 1344);
  EXPECT_EQ(duration(Circuit(2, {gates::open_cnot(0, 1)}), mock(), Mode::Standard), 1984);
  EXPECT_EQ(duration(Circuit(2, {gates::open_cnot(0, 1)}), mock(), Mode::Optimized), 1504);
  EXPECT_EQ(duration(Circuit(2, {gates::swap(0, 1)}), mock(), Mode::Standard), 4032);
}

TEST(Lower, UnsupportedGates) {
  EXPECT_THROW(lower(to_dag(Circuit(2, {gates::iswap(0, 1)})), mock(), Mode::Standard), UnloweredGate);
  EXPECT_THROW(lower(to_dag(Circuit(3, {gates::x(2)})), mock(), Mode::Standard), UnloweredGate);
  // No control channel between qubits 0 and 2 on the line.
  EXPECT_THROW(lower(to_dag(Circuit(3, {gates::cnot(0, 2)})), line5(), Mode::Standard), UserError);
}

TEST(Compile, HiddenZz) {
  PassOptions o;
  const auto opt = compile(hidden_zz(), line5(), o);
  o.mode = Mode::Standard;
  const auto std_ = compile(hidden_zz(), line5(), o);
  int zz = 0;
  for (const auto& p : opt.report.passes)
    if (p.name == "template_zz") zz += p.matches;
  EXPECT_EQ(zz, 1);
  EXPECT_LT(opt.report.two_qubit_pulse_blocks, std_.report.two_qubit_pulse_blocks);
  EXPECT_EQ(opt.report.duration_dt, 2336);
  EXPECT_EQ(std_.report.duration_dt, 4032);
  EXPECT_EQ(opt.report.baseline_duration_dt, 4032);
}

TEST(Compile, EmptyCircuit) {
  const auto r = compile(Circuit(2), mock());
  EXPECT_TRUE(r.schedule.empty());
  EXPECT_EQ(r.report.duration_dt, 0);
  EXPECT_EQ(r.report.envelopes, 0);
  EXPECT_EQ(r.report.gates_out, 0);
}

TEST(Compile, MaxcutLineMatchesEveryZzBlock) {
  const Circuit c = fixtures::load_program("maxcut5.qasm");
  PassOptions o;
  o.check = EquivalenceCheck::Off;  // five qubits exceed the unitary check
  const auto r = compile(c, line5(), o);
  int zz = 0;
  for (const auto& p : r.report.passes)
    if (p.name == "template_zz") zz += p.matches;
  EXPECT_EQ(zz, 4);
  const Circuit opt = optimize(c, o);
  EXPECT_EQ(count(opt, GateKind::CNOT), 0);
  EXPECT_LT(r.report.duration_dt, duration(c, line5(), Mode::Standard));
}

TEST(Compile, StandardModeLeavesCircuitAlone) {
  const Circuit c = hidden_zz();
  PassOptions o;
  o.mode = Mode::Standard;
  EXPECT_EQ(optimize(c, o), c);
}

TEST(Compile, DeterministicScheduleJson) {
  const Circuit c = fixtures::load_program("h2.qasm");
  const auto a = compile(c, mock()), b = compile(c, mock());
  EXPECT_EQ(schedule_to_json(a.schedule).dump(), schedule_to_json(b.schedule).dump());
  EXPECT_EQ(a.report.to_json().dump(), b.report.to_json().dump());
}

// Every pass, checked after each step, on random circuits of up to three
// qubits; optimized lowering is never slower than the standard one.
TEST(Compile, RandomCircuitsAreSoundAndNeverSlower) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> nq(1, 3), len(1, 14);
  for (int i = 0; i < 200; ++i) {
    const Circuit c = fixtures::random_circuit(rng, nq(rng), len(rng));
    PassOptions o;
    o.check = EquivalenceCheck::PerPass;
    LowerResult opt;
    ASSERT_NO_THROW(opt = compile(c, line5(), o)) << to_assembly(c);
    EXPECT_LT(dist(optimize(c, o), c), 1e-9);
    EXPECT_LE(opt.report.duration_dt, duration(c, line5(), Mode::Standard)) << to_assembly(c);
  }
}
