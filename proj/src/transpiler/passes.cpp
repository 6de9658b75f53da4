#include "augpulse/transpiler/passes.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>

#include "augpulse/errors.hpp"

namespace augpulse {

namespace {

using GateList = std::vector<Gate>;

bool touches(const Gate& g, int q) {
  return std::find(g.qubits.begin(), g.qubits.end(), q) != g.qubits.end();
}

bool share_qubit(const Gate& a, const Gate& b) {
  for (int q : a.qubits)
    if (touches(b, q)) return true;
  return false;
}

bool same_qubit_set(const Gate& a, const Gate& b) {
  std::set<int> sa(a.qubits.begin(), a.qubits.end()), sb(b.qubits.begin(), b.qubits.end());
  return sa == sb;
}

int prev_on_wire(const GateList& l, int pos, int q) {
  for (int i = pos - 1; i >= 0; --i)
    if (touches(l[i], q)) return i;
  return -1;
}

int next_on_wire(const GateList& l, int pos, int q) {
  for (int i = pos + 1; i < static_cast<int>(l.size()); ++i)
    if (touches(l[i], q)) return i;
  return -1;
}

bool is_rotation(GateKind k) {
  return k == GateKind::RX || k == GateKind::RY || k == GateKind::RZ || k == GateKind::CR ||
         k == GateKind::ZZ;
}

bool self_inverse(GateKind k) {
  return k == GateKind::X || k == GateKind::H || k == GateKind::CNOT ||
         k == GateKind::OPEN_CNOT || k == GateKind::SWAP;
}

bool symmetric(GateKind k) { return k == GateKind::SWAP || k == GateKind::ZZ; }

Gate with_angle(const Gate& g, double deg) {
  Gate out = g;
  out.params = {normalize_deg(deg)};
  return out;
}

// Replacement for the adjacent pair (a then b), or nullopt if they do not
// combine. An empty vector means the pair cancels.
std::optional<GateList> combine(const Gate& a, const Gate& b) {
  if (!same_qubit_set(a, b)) return std::nullopt;
  if (a.qubits != b.qubits && !(a.kind == b.kind && symmetric(a.kind))) {
    if (a.arity() > 1) return std::nullopt;
  }
  if (a.kind == b.kind && self_inverse(a.kind)) return GateList{};
  if (a.kind == b.kind && is_rotation(a.kind)) {
    const double sum = normalize_deg(a.params[0] + b.params[0]);
    if (std::abs(sum) < kAngleEps) return GateList{};
    return GateList{with_angle(a, sum)};
  }
  if (a.kind == GateKind::X && b.kind == GateKind::RX)
    return GateList{with_angle(b, b.params[0] + 180.0)};
  if (a.kind == GateKind::RX && b.kind == GateKind::X)
    return GateList{with_angle(a, a.params[0] + 180.0)};
  return std::nullopt;
}

bool is_identity_rotation(const Gate& g) {
  return is_rotation(g.kind) && std::abs(normalize_deg(g.params[0])) < kAngleEps;
}

bool is_diagonal(const Gate& g) { return g.kind == GateKind::RZ || g.kind == GateKind::ZZ; }

bool controlled_x_like(const Gate& g) {
  return g.kind == GateKind::CNOT || g.kind == GateKind::OPEN_CNOT || g.kind == GateKind::CR;
}

bool x_axis_1q(const Gate& g) { return g.kind == GateKind::X || g.kind == GateKind::RX; }

bool exact_commute(const Gate& a, const Gate& b) {
  std::vector<int> qs;
  for (int q : a.qubits) qs.push_back(q);
  for (int q : b.qubits)
    if (!touches(a, q)) qs.push_back(q);
  if (qs.size() > 4) return false;
  auto local = [&](const Gate& g) {
    std::vector<int> l;
    for (int q : g.qubits) l.push_back(static_cast<int>(std::find(qs.begin(), qs.end(), q) - qs.begin()));
    return l;
  };
  const int n = static_cast<int>(qs.size());
  const Unitary ua = embed(gate_unitary(a), local(a), n);
  const Unitary ub = embed(gate_unitary(b), local(b), n);
  return (ua * ub - ub * ua).norm() < 1e-10;
}

std::optional<bool> rule_commute(const Gate& a, const Gate& b) {
  if (!share_qubit(a, b)) return true;
  if (a.kind == GateKind::BARRIER || b.kind == GateKind::BARRIER) return false;
  if (a.kind == GateKind::Custom || b.kind == GateKind::Custom) return false;
  if (is_diagonal(a) && is_diagonal(b)) return true;
  for (int pass = 0; pass < 2; ++pass) {
    const Gate& c = pass ? b : a;
    const Gate& o = pass ? a : b;
    if (controlled_x_like(c) && o.arity() == 1) {
      if (o.qubits[0] == c.qubits[0] && o.kind == GateKind::RZ) return true;
      if (o.qubits[0] == c.qubits[1] && x_axis_1q(o)) return true;
    }
  }
  if (a.kind == GateKind::CNOT && b.kind == GateKind::CNOT) {
    if (a.qubits == b.qubits) return true;
    if (a.qubits[0] == b.qubits[0] || a.qubits[1] == b.qubits[1]) return true;
    return false;
  }
  return std::nullopt;
}

Dag rebuild(int n, GateList l) { return to_dag(Circuit(n, std::move(l))); }

void record(PassStats* s, const char* name, int before, int after, int matches) {
  if (!s) return;
  *s = PassStats{name, before, after, matches};
}

// True when b (a CNOT about to sit at position p, right after the RZ at p-1)
// would close a CNOT . RZ_t . CNOT template.
// Last gate on wire q before `pos` that b cannot simply pass: a gate it does
// not commute with, or one it would combine with.
int wire_stop(const GateList& l, int pos, int q, const Gate& b) {
  for (int i = prev_on_wire(l, pos, q); i >= 0; i = prev_on_wire(l, i, q)) {
    const Gate& g = l[i];
    if (g.kind == GateKind::BARRIER || combine(g, b) || !gates_commute(g, b)) return i;
  }
  return -1;
}

// Is b's partner (combine or ZZ-template) reachable once the commuting gates
// in between are moved out of the way?
bool partner_reachable(const GateList& l, int j, const std::vector<int>& stops) {
  const Gate& b = l[j];
  const int s0 = stops[0];
  if (s0 < 0) return false;
  bool same = true;
  for (int s : stops) same = same && s == s0;
  if (same && same_qubit_set(l[s0], b) && combine(l[s0], b)) return true;
  if (b.kind != GateKind::CNOT) return false;
  const int rz = stops[1], first = stops[0];
  if (rz < 0 || first < 0) return false;
  if (l[rz].kind != GateKind::RZ || l[rz].qubits[0] != b.qubits[1]) return false;
  return prev_on_wire(l, rz, b.qubits[1]) == first && l[first].kind == GateKind::CNOT &&
         l[first].qubits == b.qubits;
}

}  // namespace

bool gates_commute(const Gate& a, const Gate& b) {
  if (auto r = rule_commute(a, b)) return *r;
  return exact_commute(a, b);
}

std::array<double, 3> u3_angles(const Unitary& u) {
  const double c = std::abs(u(0, 0)), s = std::abs(u(1, 0));
  const double theta = 2.0 * std::atan2(s, c);
  double phi = 0, lambda = 0;
  if (s < 1e-12) {
    lambda = std::arg(u(1, 1)) - std::arg(u(0, 0));
  } else if (c < 1e-12) {
    phi = std::arg(u(1, 0)) - std::arg(-u(0, 1));
  } else {
    phi = std::arg(u(1, 0)) - std::arg(u(0, 0));
    lambda = std::arg(-u(0, 1)) - std::arg(u(0, 0));
  }
  return {rad2deg(theta), normalize_deg(rad2deg(phi)), normalize_deg(rad2deg(lambda))};
}

Dag pass_cancel_adjacent(const Dag& d, PassStats* stats) {
  GateList l = d.nodes();
  const int before = static_cast<int>(l.size());
  int matches = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < static_cast<int>(l.size()) && !changed; ++i) {
      if (is_identity_rotation(l[i])) {
        l.erase(l.begin() + i);
        ++matches;
        changed = true;
        break;
      }
      if (l[i].kind == GateKind::BARRIER) continue;
      const int j = next_on_wire(l, i, l[i].qubits[0]);
      if (j < 0) continue;
      bool adjacent = true;
      for (int q : l[i].qubits) adjacent = adjacent && next_on_wire(l, i, q) == j;
      if (!adjacent) continue;
      auto rep = combine(l[i], l[j]);
      if (!rep) continue;
      l.erase(l.begin() + j);
      l.insert(l.begin() + j, rep->begin(), rep->end());
      l.erase(l.begin() + i);
      ++matches;
      changed = true;
    }
  }
  const int after = static_cast<int>(l.size());
  record(stats, "cancel_adjacent", before, after, matches);
  return rebuild(d.num_qubits(), std::move(l));
}

Dag pass_commutativity_detection(const Dag& d, PassStats* stats) {
  GateList l = d.nodes();
  int moves = 0;
  for (int j = 1; j < static_cast<int>(l.size()); ++j) {
    const Gate b = l[j];
    if (b.kind == GateKind::BARRIER) continue;
    std::vector<int> stops;
    for (int q : b.qubits) stops.push_back(wire_stop(l, j, q, b));
    if (!partner_reachable(l, j, stops)) continue;

    // Gates between a stop and b on b's wires all commute with b. They move
    // behind b together with everything that depends on them.
    std::vector<char> moved(l.size(), 0);
    int lo = j;
    for (size_t w = 0; w < b.qubits.size(); ++w)
      for (int i = next_on_wire(l, stops[w], b.qubits[w]); i >= 0 && i < j;
           i = next_on_wire(l, i, b.qubits[w])) {
        moved[i] = 1;
        lo = std::min(lo, i);
      }
    if (lo == j) continue;
    for (int i = lo; i < j; ++i)
      for (int k = lo; k < i && !moved[i]; ++k)
        if (moved[k] && share_qubit(l[k], l[i])) moved[i] = 1;
    bool ok = true;
    for (int s : stops) ok = ok && !moved[s];
    for (int i = lo; i < j && ok; ++i)
      if (moved[i] && share_qubit(l[i], b) && !gates_commute(l[i], b)) ok = false;
    if (!ok) continue;

    GateList out(l.begin(), l.begin() + lo), tail;
    for (int i = lo; i < j; ++i) (moved[i] ? tail : out).push_back(l[i]);
    out.push_back(b);
    out.insert(out.end(), tail.begin(), tail.end());
    out.insert(out.end(), l.begin() + j + 1, l.end());
    l = std::move(out);
    ++moves;
  }
  record(stats, "commutativity_detection", d.size(), static_cast<int>(l.size()), moves);
  return rebuild(d.num_qubits(), std::move(l));
}

Dag pass_template_zz(const Dag& d, PassStats* stats) {
  GateList l = d.nodes();
  int matches = 0;
  for (int i = 0; i < static_cast<int>(l.size()); ++i) {
    const Gate g = l[i];
    if (g.kind == GateKind::ZZ) {
      const int c = g.qubits[0], t = g.qubits[1];
      l.erase(l.begin() + i);
      l.insert(l.begin() + i, {gates::h(t), gates::cr(c, t, g.params[0]), gates::h(t)});
      ++matches;
      continue;
    }
    if (g.kind != GateKind::CNOT) continue;
    const int c = g.qubits[0], t = g.qubits[1];
    const int r = next_on_wire(l, i, t);
    if (r < 0 || l[r].kind != GateKind::RZ) continue;
    const int k = next_on_wire(l, r, t);
    if (k < 0 || l[k].kind != GateKind::CNOT || l[k].qubits != g.qubits) continue;
    if (next_on_wire(l, i, c) != k) continue;
    const double theta = l[r].params[0];
    l.erase(l.begin() + k);
    l.insert(l.begin() + k, {gates::h(t), gates::cr(c, t, theta), gates::h(t)});
    l.erase(l.begin() + r);
    l.erase(l.begin() + i);
    ++matches;
    --i;
  }
  record(stats, "template_zz", d.size(), static_cast<int>(l.size()), matches);
  return rebuild(d.num_qubits(), std::move(l));
}

Dag pass_cnot_to_echo(const Dag& d, PassStats* stats) {
  GateList out;
  int matches = 0;
  auto echo = [&](int c, int t) {
    out.push_back(gates::x(c));
    out.push_back(gates::rx(t, -90.0));
    out.push_back(gates::cr(c, t, -45.0));
    out.push_back(gates::x(c));
    out.push_back(gates::cr(c, t, 45.0));
    out.push_back(gates::rz(c, -90.0));
    ++matches;
  };
  for (const auto& g : d.nodes()) {
    const int a = g.arity() == 2 ? g.qubits[0] : -1, b = g.arity() == 2 ? g.qubits[1] : -1;
    switch (g.kind) {
      case GateKind::CNOT:
        echo(a, b);
        break;
      case GateKind::OPEN_CNOT:
        out.push_back(gates::x(a));
        echo(a, b);
        out.push_back(gates::x(a));
        break;
      case GateKind::SWAP:
        echo(a, b);
        echo(b, a);
        echo(a, b);
        break;
      default:
        out.push_back(g);
    }
  }
  record(stats, "cnot_to_echo", d.size(), static_cast<int>(out.size()), matches);
  return rebuild(d.num_qubits(), std::move(out));
}

Dag pass_direct_rotations(const Dag& d, PassStats* stats) {
  GateList out;
  int matches = 0;
  for (const auto& g : d.nodes()) {
    if (g.arity() != 1 || g.kind == GateKind::RZ || g.kind == GateKind::RX ||
        g.kind == GateKind::BARRIER || g.kind == GateKind::Custom) {
      out.push_back(g);
      continue;
    }
    const int q = g.qubits[0];
    ++matches;
    if (g.kind == GateKind::X) {
      out.push_back(gates::rx(q, 180.0));
      continue;
    }
    const auto [theta, phi, lambda] = u3_angles(gate_unitary(g));
    if (theta < kAngleEps) {
      const double z = normalize_deg(phi + lambda);
      if (std::abs(z) >= kAngleEps) out.push_back(gates::rz(q, z));
      continue;
    }
    const double pre = normalize_deg(lambda - 90.0), post = normalize_deg(phi + 90.0);
    if (std::abs(pre) >= kAngleEps) out.push_back(gates::rz(q, pre));
    out.push_back(gates::rx(q, theta));
    if (std::abs(post) >= kAngleEps) out.push_back(gates::rz(q, post));
  }
  record(stats, "direct_rotations", d.size(), static_cast<int>(out.size()), matches);
  return rebuild(d.num_qubits(), std::move(out));
}

}  // namespace augpulse
