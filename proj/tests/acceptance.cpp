// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failed criteria, so ctest fails if any line reads FAIL.
#include <chrono>
#include <cstdio>
#include <random>
#include <string>

#include "augpulse/sim/experiments.hpp"
#include "augpulse/sim/metrics.hpp"
#include "augpulse/sim/rb.hpp"
#include "augpulse/synth/synthesis.hpp"
#include "augpulse/transpiler/compile.hpp"
#include "support.hpp"

using namespace augpulse;

namespace {

constexpr double kTableFidelity = 0.999;
constexpr double kZzIdentityTol = 1e-9;
constexpr double kEchoTol = 1e-10;
constexpr double kSoundnessTol = 1e-9;
constexpr int kSoundnessTrials = 200;
constexpr double kSweepZTol = 0.02;
constexpr double kSweepXAtNodes = 1e-3;
constexpr double kCorrectionGain = 5.0;
constexpr double kRbBudgetSeconds = 600.0;
constexpr double kCounterFloor = 0.99;
constexpr double kCounterSlack = 1e-3;  // allowed uptick between cycles in the noisy trend
constexpr double kHellingerTol = 1e-12;

int failures = 0;

void report(int n, bool ok, const std::string& what) {
  std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", n, what.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

int duration(const Circuit& c, const BackendConfig& cfg, Mode m) {
  PassOptions o;
  o.mode = m;
  return compile(c, cfg, o).report.duration_dt;
}

int count(const Circuit& c, GateKind k) {
  int n = 0;
  for (const auto& g : c.gates) n += g.kind == k;
  return n;
}

void cost_table_rows() {
  const std::vector<std::vector<double>> want{
      {1, 1, 2, 1, 1}, {3, 3, 3, 1.5, 3}, {2, 2, 2, 1, 1}, {3, 3, 3, 1.5, 3}};
  const auto rows = cost_table();
  bool ok = rows.size() == want.size();
  double worst = 1.0;
  for (size_t r = 0; ok && r < rows.size(); ++r)
    for (size_t c = 0; c < want[r].size(); ++c) {
      const auto& cell = rows[r].cells[c];
      if (!cell || table_value(*cell, kAllBases[c]) != want[r][c]) ok = false;
      if (cell) worst = std::min(worst, decomposition_fidelity(cell->circuit, rows[r].target));
    }
  ok = ok && worst >= kTableFidelity;
  report(1, ok, fmt("cost table rows CNOT/SWAP/ZZ/FSIM exact, min fidelity %.6f", worst));
}

void zz_identity() {
  double worst = 0;
  for (int i = 0; i <= 20; ++i) {
    const double t = 4.5 * i;
    const Circuit a(2, {gates::h(1), gates::cr(0, 1, t), gates::h(1)});
    const Circuit b(2, {gates::cnot(0, 1), gates::rz(1, t), gates::cnot(0, 1)});
    worst = std::max(worst, phase_distance(circuit_unitary(a), circuit_unitary(b)));
  }
  report(2, worst < kZzIdentityTol, fmt("H.CR.H vs CNOT.RZ.CNOT over 21 angles, max distance %.2e", worst));
}

void echo_and_merge() {
  const Circuit cnot(2, {gates::cnot(0, 1)});
  const double d = phase_distance(circuit_unitary(from_dag(pass_cnot_to_echo(to_dag(cnot)))),
                                  circuit_unitary(cnot));
  const Circuit open(2, {gates::open_cnot(0, 1)});
  const Circuit expanded = from_dag(pass_cnot_to_echo(to_dag(open)));
  const Circuit cancelled = from_dag(pass_cancel_adjacent(to_dag(expanded)));
  const int x_before = count(expanded, GateKind::X), x_after = count(cancelled, GateKind::X);
  const Circuit merged =
      from_dag(pass_cancel_adjacent(to_dag(Circuit(1, {gates::rx(0, -90), gates::rx(0, -90)}))));
  const bool merge_ok = merged.gates.size() == 1 && merged.gates[0].kind == GateKind::RX &&
                        std::abs(std::abs(merged.gates[0].params[0]) - 180.0) < 1e-12;
  report(3, d < kEchoTol && x_before - x_after == 2 && merge_ok,
         fmt("echo CNOT distance %.2e; open-CNOT X gates %g -> %g; RX(-90)^2 -> one RX(180)", d, x_before,
             x_after));
}

void golden_durations() {
  const auto& b = fixtures::mock();
  const Circuit x(1, {gates::x(0)}), open(2, {gates::open_cnot(0, 1)});
  const int xs = duration(x, b, Mode::Standard), xo = duration(x, b, Mode::Optimized);
  const int os = duration(open, b, Mode::Standard), oo = duration(open, b, Mode::Optimized);
  report(4, xs == 320 && xo == 160 && os == 1984 && oo == 1504,
         fmt("X %g/%g dt, open-CNOT %g/%g dt (standard/optimized)", xs, xo, os, oo));
}

void pass_soundness() {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> nq(1, 3), len(1, 16);
  double worst = 0;
  int slower = 0;
  for (int i = 0; i < kSoundnessTrials; ++i) {
    const Circuit c = fixtures::random_circuit(rng, nq(rng), len(rng));
    PassOptions o;
    o.check = EquivalenceCheck::Off;
    worst = std::max(worst, phase_distance(circuit_unitary(optimize(c, o)), circuit_unitary(c)));
    if (duration(c, fixtures::line5(), Mode::Optimized) > duration(c, fixtures::line5(), Mode::Standard))
      ++slower;
  }
  report(5, worst < kSoundnessTol && slower == 0,
         fmt("%g random circuits, max unitary distance %.2e, optimized slower in %g", kSoundnessTrials, worst,
             slower));
}

void direct_rx_sweep() {
  const auto rows = sweep_direct_rx(fixtures::mock(), 0);
  double zerr = 0;
  for (const auto& r : rows) zerr = std::max(zerr, std::abs(r.bloch.z - std::cos(deg2rad(r.theta_deg))));
  double xnodes = 0;
  for (const auto& r : rows)
    if (r.theta_deg == 0 || r.theta_deg == 90 || r.theta_deg == 180) xnodes = std::max(xnodes, std::abs(r.bloch.x));
  const PhaseCorrectionTable t = fit_phase_corrections(rows);
  SweepOptions o;
  o.corrections = &t;
  const double before = max_abs_x(rows), after = max_abs_x(sweep_direct_rx(fixtures::mock(), 0, o));
  const bool ok = rows.size() == 41 && zerr < kSweepZTol && xnodes < kSweepXAtNodes &&
                  before / after >= kCorrectionGain;
  report(6, ok,
         fmt("41 angles, max |z - cos| %.2e, |x| at 0/90/180 <= %.1e, max|x| %.2e -> %.2e", zerr, xnodes, before,
             after));
}

void rb_ordering() {
  const auto t0 = std::chrono::steady_clock::now();
  RbOptions o;
  o.kmax = 25;
  o.seqs = 5;
  const RbResult r = rb_experiment(fixtures::mock(), o);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double fs = r.fits.at(RbMode::Standard).f, fo = r.fits.at(RbMode::Optimized).f,
               fl = r.fits.at(RbMode::OptimizedSlow).f;
  report(7, fo >= fl && fl >= fs && fo - fs > 0 && secs < kRbBudgetSeconds,
         fmt("f optimized %.6f >= slow %.6f >= standard %.6f, %.0f s", fo, fl, fs, secs));
}

void qutrit_counter_trend() {
  const auto& b = fixtures::mock();
  const CounterPulses pulses = calibrate_counter_pulses(b, 0);
  const auto clean = qutrit_counter(b, 0, 10, false, &pulses);
  double floor = 1.0;
  for (double v : clean) floor = std::min(floor, v);

  const auto noisy = qutrit_counter(b, 0, 60, true, &pulses);
  bool monotone = true;
  for (size_t k = 1; k < noisy.size(); ++k) monotone = monotone && noisy[k] <= noisy[k - 1] + kCounterSlack;
  // Least-squares slope of p0 against the cycle number.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(noisy.size());
  for (size_t k = 0; k < noisy.size(); ++k) {
    sx += k;
    sy += noisy[k];
    sxx += static_cast<double>(k) * k;
    sxy += k * noisy[k];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  report(8, floor >= kCounterFloor && monotone && slope < 0,
         fmt("noiseless min p0 %.5f over 10 cycles; noisy p0 60 cycles %.4f -> %.4f, slope %.2e", floor, noisy[1],
             noisy.back(), slope));
}

void hellinger() {
  const double same = hellinger_distance({0.25, 0.75}, {0.25, 0.75});
  const double disjoint = hellinger_distance({1, 0}, {0, 1});
  const double half = hellinger_distance({0.5, 0.5}, {1, 0});
  const bool units = std::abs(same) < kHellingerTol && std::abs(disjoint - 1) < kHellingerTol &&
                     std::abs(half - std::sqrt(1 - std::sqrt(0.5))) < kHellingerTol;
  const auto r = hellinger_benchmark(fixtures::mock(), h2_ansatz(37));
  report(9, units && r.h_optimized <= r.h_standard,
         fmt("H(p,p)=%.0g, disjoint %.4f, uniform/point %.4f", same, disjoint, half) +
             fmt("; H2 ansatz noisy H optimized %.4f <= standard %.4f", r.h_optimized, r.h_standard) +
             ". Hardware Hellinger and fidelity numbers are not reproducible here.");
}

}  // namespace

int main() {
  cost_table_rows();
  zz_identity();
  echo_and_merge();
  golden_durations();
  pass_soundness();
  direct_rx_sweep();
  rb_ordering();
  qutrit_counter_trend();
  hellinger();
  return failures;
}
