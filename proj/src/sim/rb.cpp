#include "augpulse/sim/rb.hpp"

#include <algorithm>
#include <cmath>

#include "augpulse/errors.hpp"
#include "augpulse/sim/device_model.hpp"
#include "augpulse/sim/propagate.hpp"
#include "augpulse/sim/work_pool.hpp"
#include "augpulse/synth/nelder_mead.hpp"
#include "augpulse/transpiler/compile.hpp"

namespace augpulse {

const char* rb_mode_name(RbMode m) {
  switch (m) {
    case RbMode::Standard: return "standard";
    case RbMode::Optimized: return "optimized";
    case RbMode::OptimizedSlow: return "optimized_slow";
  }
  return "?";
}

namespace {

Unitary haar_su2(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  cplx a(n(rng), n(rng)), b(n(rng), n(rng));
  const double norm = std::sqrt(std::norm(a) + std::norm(b));
  a /= norm;
  b /= norm;
  Unitary u(2, 2);
  u << a, -std::conj(b), b, std::conj(a);
  return u;
}

Gate as_u3(const Unitary& u, int q) {
  const auto [t, p, l] = u3_angles(u);
  return gates::u3(q, t, p, l);
}

PulseSchedule gate_block(const BackendConfig& cfg, const Gate& g, Mode mode,
                         const PhaseCorrectionTable* corr) {
  Circuit c(g.qubits[0] + 1);
  c.add(g);
  return lower(to_dag(c), cfg, mode, corr).schedule;
}

}  // namespace

std::vector<Gate> rb_sequence(int k, int seq, std::uint64_t seed, int qubit) {
  if (k < 1) throw UserError("RB sequence length must be at least 1");
  std::seed_seq ss{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                   static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(seq)};
  std::mt19937_64 rng(ss);
  std::vector<Gate> out;
  Unitary total = Unitary::Identity(2, 2);
  for (int i = 0; i + 1 < k; ++i) {
    const Unitary u = haar_su2(rng);
    total = u * total;
    out.push_back(as_u3(u, qubit));
  }
  out.push_back(as_u3(total.adjoint(), qubit));
  return out;
}

RbResult rb_experiment(const BackendConfig& cfg, const RbOptions& opts) {
  if (opts.kmin < 1 || opts.kmax < opts.kmin || opts.seqs < 1)
    throw UserError("RB needs 1 <= kmin <= kmax and at least one sequence");
  const DeviceModel m = DeviceModel::from_backend(cfg, {opts.qubit});
  if (opts.noisy && !m.has_noise()) throw UserError("noisy RB needs T1/T2 in the backend");

  struct Job {
    RbMode mode;
    int k, seq;
  };
  std::vector<Job> jobs;
  for (RbMode mode : opts.modes)
    for (int k = opts.kmin; k <= opts.kmax; ++k)
      for (int s = 0; s < opts.seqs; ++s) jobs.push_back({mode, k, s});

  RbResult res;
  res.points.resize(jobs.size());
  SimOptions so;
  so.noisy = opts.noisy;
  parallel_for(static_cast<int>(jobs.size()), opts.jobs, [&](int i) {
    const Job& j = jobs[i];
    PulseSchedule s;
    int t = 0;
    for (const Gate& g : rb_sequence(j.k, j.seq, opts.seed, opts.qubit)) {
      const PulseSchedule std_block = gate_block(cfg, g, Mode::Standard, nullptr);
      const PulseSchedule block = j.mode == RbMode::Standard
                                      ? std_block
                                      : gate_block(cfg, g, Mode::Optimized, opts.corrections);
      s.add_schedule(block, t);
      t += j.mode == RbMode::Optimized ? block.duration() : std_block.duration();
    }
    const QuantumState out = propagate(s, m, QuantumState::ground(1), so);
    res.points[i] = {j.mode, j.k, j.seq, out.populations()[0]};
  });

  for (RbMode mode : opts.modes) {
    std::vector<int> ks;
    std::vector<double> ps;
    for (const auto& p : res.points)
      if (p.mode == mode) {
        ks.push_back(p.k);
        ps.push_back(p.p0);
      }
    res.fits[mode] = fit_rb(ks, ps);
  }
  return res;
}

RbFit fit_rb(const std::vector<int>& k, const std::vector<double>& p) {
  if (k.size() != p.size() || k.size() < 3) throw FitError("RB fit needs at least 3 points");
  double lo = p[0], hi = p[0];
  for (double v : p) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (hi - lo < 1e-9) {
    RbFit flat;
    flat.b = hi;
    return flat;
  }
  double mk = 0, mp = 0, cov = 0;
  for (size_t i = 0; i < k.size(); ++i) {
    mk += k[i];
    mp += p[i];
  }
  mk /= k.size();
  mp /= k.size();
  for (size_t i = 0; i < k.size(); ++i) cov += (k[i] - mk) * (p[i] - mp);
  if (!(cov < 0)) throw FitError("RB data do not decay with K");

  // Linear in (a, b) for fixed f. b is boxed to [0, 1/2]: over short K ranges
  // the unbounded problem trades a against f and the fit wanders off.
  auto solve = [&](double f) {
    const double n = static_cast<double>(k.size());
    double sx = 0, sxx = 0, sy = 0, sxy = 0;
    for (size_t i = 0; i < k.size(); ++i) {
      const double x = std::pow(f, k[i]);
      sx += x;
      sxx += x * x;
      sy += p[i];
      sxy += x * p[i];
    }
    RbFit r;
    r.f = f;
    const double det = n * sxx - sx * sx;
    if (std::abs(det) > 1e-300) {
      r.a = (n * sxy - sx * sy) / det;
      r.b = (sxx * sy - sx * sxy) / det;
    }
    if (std::abs(det) <= 1e-300 || r.b < 0.0 || r.b > kRbMaxAsymptote) {
      r.b = std::clamp(std::abs(det) <= 1e-300 ? sy / n : r.b, 0.0, kRbMaxAsymptote);
      r.a = sxx > 0 ? (sxy - r.b * sx) / sxx : 0.0;
    }
    for (size_t i = 0; i < k.size(); ++i) {
      const double e = r.a * std::pow(f, k[i]) + r.b - p[i];
      r.rss += e * e;
    }
    return r;
  };
  RbFit best;
  best.rss = 1e300;
  for (double start : {0.9, 0.99, 0.999}) {
    const double lo_f = 1.0 - 3.0 * (1.0 - start);
    const double hi_f = 1.0 - (1.0 - start) / 30.0;
    const double f = golden_max([&](double x) { return -solve(x).rss; }, lo_f, hi_f, 1e-13);
    const RbFit r = solve(f);
    if (r.rss < best.rss) best = r;
  }
  if (!(best.a > 0) || !(best.f < 1.0)) throw FitError("RB data do not decay");
  return best;
}

}  // namespace augpulse
