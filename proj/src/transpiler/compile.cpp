#include <cmath>
#include <functional>

#include "augpulse/errors.hpp"
#include "augpulse/transpiler/compile.hpp"

namespace augpulse {

const char* mode_name(Mode m) { return m == Mode::Standard ? "standard" : "optimized"; }

nlohmann::json PassReport::to_json() const {
  nlohmann::json j;
  j["mode"] = mode_name(mode);
  j["iterations"] = iterations;
  j["gates_in"] = gates_in;
  j["gates_out"] = gates_out;
  j["two_qubit_pulse_blocks"] = two_qubit_pulse_blocks;
  j["envelopes"] = envelopes;
  j["duration_dt"] = duration_dt;
  j["duration_ns"] = duration_ns;
  j["baseline_duration_dt"] = baseline_duration_dt;
  j["passes"] = nlohmann::json::array();
  for (const auto& p : passes)
    j["passes"].push_back({{"name", p.name},
                           {"gates_before", p.gates_before},
                           {"gates_after", p.gates_after},
                           {"matches", p.matches}});
  return j;
}

namespace {

using PassFn = Dag (*)(const Dag&, PassStats*);

struct Checker {
  bool active = false;
  Unitary reference;

  Checker(const Circuit& c, EquivalenceCheck mode) {
    active = mode != EquivalenceCheck::Off && c.num_qubits <= kMaxUnitaryQubits;
    if (active) reference = circuit_unitary(c);
  }

  void check(const Dag& d, const std::string& where) const {
    if (!active) return;
    const Unitary u = circuit_unitary(from_dag(d));
    const double dist = phase_distance(u, reference);
    if (!(dist < 1e-9))
      throw EquivalenceViolation(where + " changed the circuit unitary (distance " +
                                 std::to_string(dist) + ")");
  }
};

}  // namespace

Circuit optimize(const Circuit& c, const PassOptions& opts, std::vector<PassStats>* stats,
                 int* iterations) {
  if (opts.max_iterations < 1) throw UserError("max_iterations must be at least 1");
  if (iterations) *iterations = 0;
  if (opts.mode == Mode::Standard) return c;

  const Checker checker(c, opts.check);
  const bool per_pass = opts.check == EquivalenceCheck::PerPass;
  Dag d = to_dag(c);

  auto run = [&](const char* name, PassFn fn) {
    if (!opts.enabled.count(name)) return 0;
    PassStats st;
    d = fn(d, &st);
    st.name = name;
    if (stats) stats->push_back(st);
    if (per_pass) checker.check(d, name);
    return st.matches;
  };

  // Template matching has to see CNOTs, so the echo expansion runs after it
  // inside each round; expansion exposes new cancellations for the next one.
  int rounds = 0;
  for (; rounds < opts.max_iterations;) {
    ++rounds;
    int changes = 0;
    changes += run("commutativity_detection", pass_commutativity_detection);
    changes += run("template_zz", pass_template_zz);
    changes += run("cancel_adjacent", pass_cancel_adjacent);
    changes += run("cnot_to_echo", pass_cnot_to_echo);
    changes += run("cancel_adjacent", pass_cancel_adjacent);
    if (changes == 0) break;
  }
  run("direct_rotations", pass_direct_rotations);
  run("cancel_adjacent", pass_cancel_adjacent);
  if (iterations) *iterations = rounds;
  if (opts.check == EquivalenceCheck::Final) checker.check(d, "pipeline");
  return from_dag(d);
}

LowerResult compile(const Circuit& c, const BackendConfig& cfg, const PassOptions& opts) {
  std::vector<PassStats> stats;
  int iterations = 0;
  const Circuit opt = optimize(c, opts, &stats, &iterations);
  LowerResult r = lower(to_dag(opt), cfg, opts.mode, opts.corrections);
  r.report.passes = std::move(stats);
  r.report.iterations = iterations;
  r.report.gates_in = static_cast<int>(c.gates.size());
  if (opts.mode == Mode::Standard) {
    r.report.baseline_duration_dt = r.report.duration_dt;
  } else {
    try {
      r.report.baseline_duration_dt = lower(to_dag(c), cfg, Mode::Standard).report.duration_dt;
    } catch (const UserError&) {
      r.report.baseline_duration_dt = 0;
    }
  }
  return r;
}

}  // namespace augpulse
