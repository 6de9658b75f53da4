#include "augpulse/synth/synthesis.hpp"

#include <cmath>
#include <random>

#include "augpulse/errors.hpp"
#include "augpulse/synth/nelder_mead.hpp"
#include "augpulse/transpiler/passes.hpp"

namespace augpulse {

namespace {

Unitary swap4() { return gate_unitary(gates::swap(0, 1)); }

// Collects single-qubit factors per wire and flushes them as one U3 each
// before the next two-qubit gate.
class CircuitBuilder {
 public:
  void local(const LocalPair& p) {
    pending_[0] = p.first * pending_[0];
    pending_[1] = p.second * pending_[1];
  }
  void two(const Gate& g) {
    flush();
    c_.add(g);
  }
  Circuit finish() {
    flush();
    return c_;
  }

 private:
  void flush() {
    for (int q = 0; q < 2; ++q) {
      const auto [t, p, l] = u3_angles(pending_[q]);
      if (std::abs(t) > kAngleEps || std::abs(normalize_deg(p + l)) > kAngleEps)
        c_.add(gates::u3(q, t, p, l));
      pending_[q] = Unitary::Identity(2, 2);
    }
  }
  Circuit c_{2};
  Unitary pending_[2] = {Unitary::Identity(2, 2), Unitary::Identity(2, 2)};
};

Unitary u3_matrix(double t, double p, double l) { return gate_unitary(gates::u3(0, t, p, l)); }

struct BasisInfo {
  Gate gate;
  double weight;
  int max_applications;
};

BasisInfo basis_info(NativeBasis b) {
  switch (b) {
    case NativeBasis::CNOT: return {gates::cnot(0, 1), 1.0, 3};
    case NativeBasis::CR90: return {gates::cr(0, 1, 90.0), 1.0, 3};
    case NativeBasis::ISWAP: return {gates::iswap(0, 1), 1.0, 3};
    case NativeBasis::SQRT_ISWAP: return {gates::sqrt_iswap(0, 1), 0.5, 6};
    case NativeBasis::CRTheta: break;
  }
  throw UserError("no fixed gate for the CR(theta) basis");
}

// basis . (L_k basis) ... with locals from x (6 angles per slot).
Unitary core_from_params(const Unitary& basis, const std::vector<double>& x, int n) {
  Unitary v = basis;
  for (int k = 0; k + 1 < n; ++k) {
    const double* p = x.data() + 6 * k;
    v = basis * kron(u3_matrix(p[0], p[1], p[2]), u3_matrix(p[3], p[4], p[5])) * v;
  }
  return v;
}

Decomposition assemble(const std::string& name, const char* basis, const Unitary& target,
                       const Gate& g, const std::vector<double>& x, int n, const LocalMatch& m,
                       double weight) {
  CircuitBuilder cb;
  cb.local(m.before);
  for (int k = 0; k < n; ++k) {
    if (k > 0) {
      const double* p = x.data() + 6 * (k - 1);
      cb.local({u3_matrix(p[0], p[1], p[2]), u3_matrix(p[3], p[4], p[5])});
    }
    cb.two(g);
  }
  cb.local(m.after);
  Decomposition d;
  d.target = name;
  d.basis = basis;
  d.circuit = cb.finish();
  d.applications = n;
  d.cost = weight * n;
  d.fidelity = decomposition_fidelity(d.circuit, target);
  return d;
}

}  // namespace

const char* basis_name(NativeBasis b) {
  switch (b) {
    case NativeBasis::CNOT: return "CNOT";
    case NativeBasis::CR90: return "CR90";
    case NativeBasis::ISWAP: return "iSWAP";
    case NativeBasis::SQRT_ISWAP: return "sqrt_iSWAP";
    case NativeBasis::CRTheta: return "CR(theta)";
  }
  return "?";
}

double decomposition_fidelity(const Circuit& c, const Unitary& target) {
  const Unitary s = swap4();
  return average_gate_fidelity(circuit_unitary(c), s * target * s);
}

Decomposition discrete_cost(const Unitary& target, NativeBasis basis, const std::string& name,
                            uint64_t seed) {
  if (basis == NativeBasis::CRTheta) return parametrized_cr_cost(target, name);
  const BasisInfo info = basis_info(basis);
  const Unitary b = gate_unitary(info.gate);

  // Zero or one application: compare local invariants directly.
  for (int n = 0; n <= 1; ++n) {
    const Unitary core = n == 0 ? Unitary::Identity(4, 4) : b;
    const LocalMatch m = match_locals(target, core);
    if (m.fidelity >= kSynthFidelity) {
      auto d = assemble(name, basis_name(basis), target, info.gate, {}, n, m, info.weight);
      if (d.fidelity >= kSynthFidelity) return d;
    }
  }

  const auto goal = makhlin_invariants(target);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(-180.0, 180.0);
  for (int n = 2; n <= info.max_applications; ++n) {
    const int dim = 6 * (n - 1);
    auto objective = [&](const std::vector<double>& x) {
      const auto inv = makhlin_invariants(core_from_params(b, x, n));
      return std::norm(inv[0] - goal[0]) + std::norm(inv[1] - goal[1]);
    };
    NelderMeadOptions opts;
    opts.max_evals = 600 * dim;
    opts.initial_step = 40.0;
    opts.ftol = 1e-20;
    std::optional<Decomposition> best;
    for (int restart = 0; restart < 16; ++restart) {
      std::vector<double> x0(static_cast<size_t>(dim));
      for (auto& v : x0) v = angle(rng);
      const auto r = nelder_mead(objective, x0, opts);
      if (r.f > 1e-6) continue;
      const LocalMatch m = match_locals(target, core_from_params(b, r.x, n));
      if (m.fidelity < kSynthFidelity) continue;
      auto d = assemble(name, basis_name(basis), target, info.gate, r.x, n, m, info.weight);
      if (d.fidelity >= kSynthFidelity && (!best || d.fidelity > best->fidelity)) best = d;
      if (best && best->fidelity > 1.0 - 1e-9) break;
    }
    if (best) return *best;
  }
  throw NotReachable(name + " is not reachable with up to " +
                     std::to_string(info.max_applications) + " " + basis_name(basis) + " gates");
}

Decomposition parametrized_cr_cost(const Unitary& target, const std::string& name) {
  const CanonicalCoords k = kak_decompose(target);
  CircuitBuilder cb;
  cb.local(k.before);
  Decomposition d;
  d.target = name;
  d.basis = basis_name(NativeBasis::CRTheta);
  // exp(-i(aXX + bYY + cZZ)) factors into commuting terms; each is one CR
  // conjugated by locals.
  const double coords[3] = {k.c, k.b, k.a};
  for (int i = 0; i < 3; ++i) {
    const double v = coords[i];
    if (std::abs(v) < 1e-7) continue;
    const double theta = 2.0 * std::abs(v);
    const Unitary term = canonical_gate(i == 2 ? v : 0.0, i == 1 ? v : 0.0, i == 0 ? v : 0.0);
    const Gate cr = gates::cr(0, 1, theta);
    const LocalMatch m = match_locals(term, gate_unitary(cr));
    cb.local(m.before);
    cb.two(cr);
    cb.local(m.after);
    d.cost += theta / 90.0;
    ++d.applications;
  }
  cb.local(k.after);
  d.circuit = cb.finish();
  d.fidelity = decomposition_fidelity(d.circuit, target);
  if (d.fidelity < kSynthFidelity)
    throw NotReachable(name + ": CR(theta) construction reached fidelity " +
                       std::to_string(d.fidelity));
  return d;
}

Decomposition decompose(const Unitary& target, NativeBasis basis, const std::string& name,
                        uint64_t seed) {
  return basis == NativeBasis::CRTheta ? parametrized_cr_cost(target, name)
                                       : discrete_cost(target, basis, name, seed);
}

std::vector<CostRow> cost_table(uint64_t seed) {
  std::vector<CostRow> rows{
      {"CNOT", gate_unitary(gates::cnot(0, 1)), {}},
      {"SWAP", gate_unitary(gates::swap(0, 1)), {}},
      {"ZZ", gate_unitary(gates::zz(0, 1, 37.0)), {}},
      {"FSIM", gate_unitary(gates::fsim(0, 1)), {}},
  };
  for (auto& r : rows)
    for (NativeBasis b : kAllBases) {
      try {
        r.cells.push_back(decompose(r.target, b, r.name, seed));
      } catch (const NotReachable&) {
        r.cells.push_back(std::nullopt);
      }
    }
  return rows;
}

double table_value(const Decomposition& d, NativeBasis b) {
  return b == NativeBasis::CRTheta ? d.applications : d.cost;
}

}  // namespace augpulse
