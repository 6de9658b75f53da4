#include "augpulse/cli/commands.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "augpulse/circuit/assembly.hpp"
#include "augpulse/errors.hpp"
#include "augpulse/sim/calibration.hpp"
#include "augpulse/sim/experiments.hpp"
#include "augpulse/sim/rb.hpp"
#include "augpulse/synth/synthesis.hpp"
#include "augpulse/transpiler/compile.hpp"

namespace augpulse {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v == 0.0 ? 0.0 : v);
  return buf;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UserError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw UserError("cannot write '" + path + "'");
  out << text;
}

// Text goes to the --out file when one is given, otherwise to stdout.
void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty())
    out << text;
  else
    write_file(path, text);
}

Mode parse_mode(const std::string& s) { return s == "standard" ? Mode::Standard : Mode::Optimized; }

std::string csv_header(const DeviceModel& m, std::uint64_t seed) {
  return "# model_hash=" + model_hash(m) + " seed=" + std::to_string(seed) + "\n";
}

std::optional<PhaseCorrectionTable> load_corrections(const std::string& path) {
  if (path.empty()) return std::nullopt;
  return PhaseCorrectionTable::load(path);
}

// Sampled estimate of a probability; shots == 0 returns it unchanged.
double sample(double p, int shots, std::mt19937_64& rng) {
  if (shots <= 0) return p;
  std::binomial_distribution<int> b(shots, std::clamp(p, 0.0, 1.0));
  return static_cast<double>(b(rng)) / shots;
}

struct Common {
  std::string backend = bundled_backend_path();
  std::uint64_t seed = 0;
  std::string out;
  int shots = 0;
  int jobs = 1;
  std::string noise;
};

void add_backend(CLI::App* c, Common& o) {
  c->add_option("--backend", o.backend, "backend JSON file")->capture_default_str();
}
void add_seed(CLI::App* c, Common& o) {
  c->add_option("--seed", o.seed, "seed for every random choice")->capture_default_str();
}
void add_out(CLI::App* c, Common& o, const char* what) { c->add_option("--out", o.out, what); }
void add_shots(CLI::App* c, Common& o) {
  c->add_option("--shots", o.shots, "sample this many shots instead of exact expectations")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
}
void add_noise(CLI::App* c, Common& o, const char* def) {
  o.noise = def;
  c->add_option("--noise", o.noise, "T1/T2 decay in the simulation")
      ->check(CLI::IsMember({"on", "off"}))
      ->capture_default_str();
}
void add_jobs(CLI::App* c, Common& o) {
  c->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
}

// ---- compile ---------------------------------------------------------------

struct CompileArgs {
  Common c;
  std::string input;
  std::string mode = "optimized";
  std::string check = "final";
  std::string corrections;
  bool compare = false;
};

LowerResult compile_mode(const Circuit& circ, const BackendConfig& cfg, Mode mode,
                         const CompileArgs& a, const PhaseCorrectionTable* corr) {
  PassOptions po;
  po.mode = mode;
  po.corrections = corr;
  po.check = a.check == "off"    ? EquivalenceCheck::Off
             : a.check == "final" ? EquivalenceCheck::Final
                                  : EquivalenceCheck::PerPass;
  return compile(circ, cfg, po);
}

int cmd_compile(const CompileArgs& a, std::ostream& out) {
  const Circuit circ = parse_assembly(read_text(a.input));
  const BackendConfig cfg = load_backend(a.c.backend);
  const auto corr = load_corrections(a.corrections);
  const PhaseCorrectionTable* cp = corr ? &*corr : nullptr;
  const std::string stem = std::filesystem::path(a.input).stem().string();

  auto save = [&](const LowerResult& r) {
    if (a.c.out.empty()) return;
    std::filesystem::create_directories(a.c.out);
    const std::string base = a.c.out + "/" + stem + "." + mode_name(r.report.mode);
    save_schedule(r.schedule, base + ".schedule.json");
    write_file(base + ".report.json", r.report.to_json().dump(1) + "\n");
  };

  if (a.compare) {
    const LowerResult s = compile_mode(circ, cfg, Mode::Standard, a, cp);
    const LowerResult o = compile_mode(circ, cfg, Mode::Optimized, a, cp);
    save(s);
    save(o);
    const int ds = s.report.duration_dt, d_o = o.report.duration_dt;
    char buf[256];
    std::snprintf(buf, sizeof buf, "standard: %d dt, optimized: %d dt\n%d dt / %d dt (%.1f ns / %.1f ns, %.2fx)\n",
                  ds, d_o, ds, d_o, s.report.duration_ns, o.report.duration_ns,
                  d_o > 0 ? static_cast<double>(ds) / d_o : 1.0);
    out << buf;
    return 0;
  }
  const LowerResult r = compile_mode(circ, cfg, parse_mode(a.mode), a, cp);
  save(r);
  char buf[128];
  std::snprintf(buf, sizeof buf, "%s: %d dt (%.1f ns), %d pulses, %d two-qubit blocks\n",
                mode_name(r.report.mode), r.report.duration_dt, r.report.duration_ns,
                r.report.envelopes, r.report.two_qubit_pulse_blocks);
  out << buf;
  return 0;
}

// ---- costs -----------------------------------------------------------------

struct CostsArgs {
  Common c;
  std::string format = "table";
  bool verify = false;
  bool strict = false;
};

int cmd_costs(const CostsArgs& a, std::ostream& out, std::ostream& err) {
  const auto rows = cost_table(a.c.seed);
  const bool csv = a.format == "csv";
  std::ostringstream s;
  const char* sep = csv ? "," : "\t";
  s << "gate";
  for (NativeBasis b : kAllBases) s << sep << basis_name(b);
  s << "\n";
  int missing = 0, weak = 0, cells = 0;
  for (const auto& row : rows) {
    s << row.name;
    for (size_t i = 0; i < row.cells.size(); ++i) {
      s << sep;
      if (!row.cells[i]) {
        ++missing;
        s << (csv ? "" : "—");
        continue;
      }
      ++cells;
      s << num(table_value(*row.cells[i], kAllBases[i]));
      if (a.verify) {
        const double f = decomposition_fidelity(row.cells[i]->circuit, row.target);
        if (f < kSynthFidelity) {
          ++weak;
          err << "verify: " << row.name << " / " << basis_name(kAllBases[i]) << " fidelity " << num(f)
              << "\n";
        }
      }
    }
    s << "\n";
  }
  emit(a.c.out, s.str(), out);
  if (a.verify) {
    if (weak > 0) throw InternalError(std::to_string(weak) + " decompositions below fidelity 0.999");
    err << "verify: " << cells << " decompositions at fidelity >= 0.999\n";
  }
  if (a.strict && missing > 0) {
    err << "error: " << missing << " unreachable cells\n";
    return 1;
  }
  return 0;
}

// ---- simulate --------------------------------------------------------------

struct SimulateArgs {
  Common c;
  std::string input;
  std::string mode = "optimized";
  std::string corrections;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  const Circuit circ = parse_assembly(read_text(a.input));
  if (circ.num_qubits > 2) throw UserError("the simulator handles at most two qubits");
  const BackendConfig cfg = load_backend(a.c.backend);
  const auto corr = load_corrections(a.corrections);
  PassOptions po;
  po.mode = parse_mode(a.mode);
  po.corrections = corr ? &*corr : nullptr;
  const LowerResult r = compile(circ, cfg, po);

  const int n = circ.num_qubits;
  std::vector<int> qs;
  for (int q = 0; q < n; ++q) qs.push_back(q);
  const DeviceModel m = DeviceModel::from_backend(cfg, qs);
  SimOptions so;
  so.noisy = a.c.noise == "on";
  const QuantumState st = propagate(r.schedule, m, QuantumState::ground(n), so);
  std::vector<double> dist;
  if (n == 2) {
    dist = measured_distribution(st);
  } else {
    const auto lv = st.level_populations(0);
    dist = {lv[0], lv[1] + lv[2]};
  }

  std::ostringstream s;
  s << csv_header(m, a.c.seed);
  s << "# mode=" << mode_name(po.mode) << " duration_dt=" << r.report.duration_dt << "\n";
  if (a.c.shots > 0) {
    std::mt19937_64 rng(a.c.seed);
    std::discrete_distribution<int> d(dist.begin(), dist.end());
    std::vector<int> counts(dist.size(), 0);
    for (int i = 0; i < a.c.shots; ++i) ++counts[d(rng)];
    s << "state,count\n";
    for (size_t i = 0; i < dist.size(); ++i) {
      std::string bits;
      for (int q = n - 1; q >= 0; --q) bits += ((i >> q) & 1) ? '1' : '0';
      s << bits << "," << counts[i] << "\n";
    }
  } else {
    s << "state,probability\n";
    for (size_t i = 0; i < dist.size(); ++i) {
      std::string bits;
      for (int q = n - 1; q >= 0; --q) bits += ((i >> q) & 1) ? '1' : '0';
      s << bits << "," << num(dist[i]) << "\n";
    }
  }
  emit(a.c.out, s.str(), out);
  return 0;
}

// ---- sweep -----------------------------------------------------------------

struct SweepArgs {
  Common c;
  int points = 41;
  int qubit = 0;
  std::string corrections;
  std::string fit_out;
};

int cmd_sweep(const SweepArgs& a, std::ostream& out, std::ostream& err) {
  const BackendConfig cfg = load_backend(a.c.backend);
  const auto corr = load_corrections(a.corrections);
  SweepOptions so;
  so.points = a.points;
  so.jobs = a.c.jobs;
  so.corrections = corr ? &*corr : nullptr;
  so.tomography.noisy = a.c.noise == "on";
  so.tomography.shots = a.c.shots;
  so.tomography.seed = a.c.seed;
  const auto rows = sweep_direct_rx(cfg, a.qubit, so);

  std::ostringstream s;
  s << csv_header(DeviceModel::from_backend(cfg, {a.qubit}), a.c.seed);
  s << "theta_deg,x,y,z,p2\n";
  for (const auto& r : rows)
    s << num(r.theta_deg) << "," << num(r.bloch.x) << "," << num(r.bloch.y) << "," << num(r.bloch.z)
      << "," << num(r.bloch.p2) << "\n";
  emit(a.c.out, s.str(), out);
  err << "max |x| = " << num(max_abs_x(rows)) << "\n";
  if (!a.fit_out.empty()) {
    if (a.points != PhaseCorrectionTable::kGridPoints)
      throw UserError("--fit-corrections needs the 41-point grid");
    fit_phase_corrections(rows).save(a.fit_out);
  }
  return 0;
}

// ---- rb --------------------------------------------------------------------

struct RbArgs {
  Common c;
  int kmin = 2;
  int kmax = 25;
  int seqs = 5;
  int qubit = 0;
  std::string corrections;
};

int cmd_rb(const RbArgs& a, std::ostream& out) {
  const BackendConfig cfg = load_backend(a.c.backend);
  const auto corr = load_corrections(a.corrections);
  RbOptions o;
  o.qubit = a.qubit;
  o.kmin = a.kmin;
  o.kmax = a.kmax;
  o.seqs = a.seqs;
  o.seed = a.c.seed;
  o.noisy = a.c.noise == "on";
  o.jobs = a.c.jobs;
  o.corrections = corr ? &*corr : nullptr;
  RbResult r = rb_experiment(cfg, o);

  if (a.c.shots > 0) {
    std::mt19937_64 rng(a.c.seed);
    for (auto& p : r.points) p.p0 = sample(p.p0, a.c.shots, rng);
    for (RbMode mode : o.modes) {
      std::vector<int> ks;
      std::vector<double> ps;
      for (const auto& p : r.points)
        if (p.mode == mode) {
          ks.push_back(p.k);
          ps.push_back(p.p0);
        }
      r.fits[mode] = fit_rb(ks, ps);
    }
  }

  std::ostringstream s;
  s << csv_header(DeviceModel::from_backend(cfg, {a.qubit}), a.c.seed);
  s << "mode,K,seed,p0\n";
  for (const auto& p : r.points)
    s << rb_mode_name(p.mode) << "," << p.k << "," << p.seq << "," << num(p.p0) << "\n";
  for (RbMode mode : o.modes) {
    const RbFit& f = r.fits.at(mode);
    s << "# fit " << rb_mode_name(mode) << " f=" << num(f.f) << " A=" << num(f.a) << " B=" << num(f.b)
      << "\n";
  }
  emit(a.c.out, s.str(), out);
  return 0;
}

// ---- counter ---------------------------------------------------------------

struct CounterArgs {
  Common c;
  int cycles = 60;
  int qubit = 0;
};

int cmd_counter(const CounterArgs& a, std::ostream& out) {
  const BackendConfig cfg = load_backend(a.c.backend);
  const CounterPulses pulses = calibrate_counter_pulses(cfg, a.qubit);
  const auto p0 = qutrit_counter(cfg, a.qubit, a.cycles, a.c.noise == "on", &pulses);
  std::mt19937_64 rng(a.c.seed);
  std::ostringstream s;
  s << csv_header(DeviceModel::from_backend(cfg, {a.qubit}), a.c.seed);
  s << "cycle,p0\n";
  for (int k = 1; k <= a.cycles; ++k) s << k << "," << num(sample(p0[k], a.c.shots, rng)) << "\n";
  emit(a.c.out, s.str(), out);
  return 0;
}

// ---- calibrate -------------------------------------------------------------

struct CalibrateArgs {
  std::string out;
  std::string line_out;
  int line_qubits = 5;
};

int cmd_calibrate(const CalibrateArgs& a, std::ostream& out) {
  const MockParams p = calibrate_mock(MockParams{});
  save_backend(build_mock_backend(p), a.out);
  out << "wrote " << a.out << "\n";
  if (!a.line_out.empty()) {
    save_backend(build_mock_backend(line_mock_params(p, a.line_qubits)), a.line_out);
    out << "wrote " << a.line_out << "\n";
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pulse-level compiler and transmon simulator", "augpulse"};
  app.require_subcommand(1);
  app.fallthrough(false);

  CompileArgs ca;
  auto* compile_cmd = app.add_subcommand("compile", "lower a circuit to a pulse schedule");
  compile_cmd->add_option("input", ca.input, "assembly file")->required();
  add_backend(compile_cmd, ca.c);
  compile_cmd->add_option("--mode", ca.mode, "lowering mode")
      ->check(CLI::IsMember({"standard", "optimized"}))
      ->capture_default_str();
  compile_cmd->add_flag("--compare", ca.compare, "compile in both modes and print both durations");
  compile_cmd->add_option("--check", ca.check, "unitary equivalence checking")
      ->check(CLI::IsMember({"off", "final", "per-pass"}))
      ->capture_default_str();
  compile_cmd->add_option("--corrections", ca.corrections, "DirectRx phase correction CSV");
  add_out(compile_cmd, ca.c, "directory for <name>.<mode>.schedule.json and .report.json");

  CostsArgs co;
  auto* costs_cmd = app.add_subcommand("costs", "two-qubit decomposition cost table");
  costs_cmd->add_option("--format", co.format, "output format")
      ->check(CLI::IsMember({"table", "csv"}))
      ->capture_default_str();
  costs_cmd->add_flag("--verify", co.verify, "recheck every decomposition fidelity");
  costs_cmd->add_flag("--strict", co.strict, "exit 1 if any cell is unreachable");
  add_seed(costs_cmd, co.c);
  add_out(costs_cmd, co.c, "output file (default stdout)");

  SimulateArgs sa;
  auto* sim_cmd = app.add_subcommand("simulate", "compile and simulate a circuit of up to two qubits");
  sim_cmd->add_option("input", sa.input, "assembly file")->required();
  add_backend(sim_cmd, sa.c);
  sim_cmd->add_option("--mode", sa.mode, "lowering mode")
      ->check(CLI::IsMember({"standard", "optimized"}))
      ->capture_default_str();
  sim_cmd->add_option("--corrections", sa.corrections, "DirectRx phase correction CSV");
  add_noise(sim_cmd, sa.c, "off");
  add_shots(sim_cmd, sa.c);
  add_seed(sim_cmd, sa.c);
  add_out(sim_cmd, sa.c, "output CSV (default stdout)");

  SweepArgs sw;
  auto* sweep_cmd = app.add_subcommand("sweep", "DirectRx angle sweep with tomography");
  add_backend(sweep_cmd, sw.c);
  sweep_cmd->add_option("--points", sw.points, "angles from 0 to 180")
      ->check(CLI::Range(2, 10000))
      ->capture_default_str();
  sweep_cmd->add_option("--qubit", sw.qubit, "backend qubit")->capture_default_str();
  sweep_cmd->add_option("--corrections", sw.corrections, "apply this phase correction CSV");
  sweep_cmd->add_option("--fit-corrections", sw.fit_out, "write a fitted correction CSV here");
  add_noise(sweep_cmd, sw.c, "off");
  add_shots(sweep_cmd, sw.c);
  add_seed(sweep_cmd, sw.c);
  add_jobs(sweep_cmd, sw.c);
  add_out(sweep_cmd, sw.c, "output CSV (default stdout)");

  RbArgs ra;
  auto* rb_cmd = app.add_subcommand("rb", "single-qubit randomized benchmarking in three modes");
  add_backend(rb_cmd, ra.c);
  rb_cmd->add_option("--kmin", ra.kmin, "shortest sequence")->check(CLI::PositiveNumber)->capture_default_str();
  rb_cmd->add_option("--kmax", ra.kmax, "longest sequence")->check(CLI::PositiveNumber)->capture_default_str();
  rb_cmd->add_option("--seqs", ra.seqs, "random sequences per length")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  rb_cmd->add_option("--qubit", ra.qubit, "backend qubit")->capture_default_str();
  rb_cmd->add_option("--corrections", ra.corrections, "DirectRx phase correction CSV");
  add_noise(rb_cmd, ra.c, "on");
  add_shots(rb_cmd, ra.c);
  add_seed(rb_cmd, ra.c);
  add_jobs(rb_cmd, ra.c);
  add_out(rb_cmd, ra.c, "output CSV (default stdout)");

  CounterArgs cn;
  auto* counter_cmd = app.add_subcommand("counter", "qutrit 0->1->2->0 counter");
  add_backend(counter_cmd, cn.c);
  counter_cmd->add_option("--cycles", cn.cycles, "full cycles")->check(CLI::PositiveNumber)->capture_default_str();
  counter_cmd->add_option("--qubit", cn.qubit, "backend qubit")->capture_default_str();
  add_noise(counter_cmd, cn.c, "on");
  add_shots(counter_cmd, cn.c);
  add_seed(counter_cmd, cn.c);
  add_out(counter_cmd, cn.c, "output CSV (default stdout)");

  CalibrateArgs cal;
  auto* cal_cmd = app.add_subcommand("calibrate", "recalibrate the mock device and write its backend file");
  cal_cmd->add_option("--out", cal.out, "backend JSON to write")->required();
  cal_cmd->add_option("--line-out", cal.line_out, "also write a line backend built from the same calibration");
  cal_cmd->add_option("--line-qubits", cal.line_qubits, "qubits in the line backend")
      ->check(CLI::Range(2, 64))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*compile_cmd) return cmd_compile(ca, out);
    if (*costs_cmd) return cmd_costs(co, out, err);
    if (*sim_cmd) return cmd_simulate(sa, out);
    if (*sweep_cmd) return cmd_sweep(sw, out, err);
    if (*rb_cmd) return cmd_rb(ra, out);
    if (*counter_cmd) return cmd_counter(cn, out);
    if (*cal_cmd) return cmd_calibrate(cal, out);
  } catch (const UserError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace augpulse
