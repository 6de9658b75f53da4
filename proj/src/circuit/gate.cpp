#include "augpulse/circuit/gate.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <set>

#include "augpulse/errors.hpp"

namespace augpulse {

namespace {

struct KindInfo {
  GateKind kind;
  std::string_view name;
  int arity;
  int params;
};

constexpr std::array<KindInfo, 16> kKinds{{
    {GateKind::X, "x", 1, 0},
    {GateKind::H, "h", 1, 0},
    {GateKind::RX, "rx", 1, 1},
    {GateKind::RY, "ry", 1, 1},
    {GateKind::RZ, "rz", 1, 1},
    {GateKind::U3, "u3", 1, 3},
    {GateKind::CNOT, "cnot", 2, 0},
    {GateKind::OPEN_CNOT, "open_cnot", 2, 0},
    {GateKind::SWAP, "swap", 2, 0},
    {GateKind::CR, "cr", 2, 1},
    {GateKind::ZZ, "zz", 2, 1},
    {GateKind::FSIM, "fsim", 2, 0},
    {GateKind::ISWAP, "iswap", 2, 0},
    {GateKind::SQRT_ISWAP, "sqrt_iswap", 2, 0},
    {GateKind::BARRIER, "barrier", -1, 0},
    {GateKind::Custom, "custom", -1, -1},
}};

const KindInfo& info(GateKind k) {
  for (const auto& i : kKinds)
    if (i.kind == k) return i;
  throw InvalidGate("unsupported gate kind");
}

void validate(const Gate& g) {
  const auto& i = info(g.kind);
  if (g.qubits.empty()) throw InvalidGate(std::string(i.name) + ": no qubits");
  if (i.arity >= 0 && g.arity() != i.arity)
    throw InvalidGate(std::string(i.name) + ": expected " + std::to_string(i.arity) +
                      " qubit(s), got " + std::to_string(g.arity()));
  if (i.params >= 0 && static_cast<int>(g.params.size()) != i.params)
    throw InvalidGate(std::string(i.name) + ": expected " + std::to_string(i.params) +
                      " parameter(s), got " + std::to_string(g.params.size()));
  std::set<int> seen;
  for (int q : g.qubits) {
    if (q < 0) throw InvalidGate(std::string(i.name) + ": negative qubit index");
    if (!seen.insert(q).second)
      throw InvalidGate(std::string(i.name) + ": repeated qubit " + std::to_string(q));
  }
  for (double p : g.params)
    if (!std::isfinite(p)) throw InvalidGate(std::string(i.name) + ": non-finite parameter");
}

Unitary matrix4(std::initializer_list<cplx> v) {
  Unitary m(4, 4);
  auto it = v.begin();
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m(r, c) = *it++;
  return m;
}

}  // namespace

Gate Gate::make(GateKind kind, std::vector<int> qubits, std::vector<double> params) {
  if (kind == GateKind::Custom) throw InvalidGate("use Gate::custom for named gates");
  Gate g{kind, std::move(params), std::move(qubits), {}};
  validate(g);
  return g;
}

Gate Gate::custom(std::string name, std::vector<int> qubits, std::vector<double> params) {
  Gate g{GateKind::Custom, std::move(params), std::move(qubits), std::move(name)};
  validate(g);
  return g;
}

std::string_view kind_name(GateKind k) { return info(k).name; }

bool kind_from_name(std::string_view name, GateKind& out) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "cx") lower = "cnot";
  for (const auto& i : kKinds) {
    if (i.kind == GateKind::Custom) continue;
    if (i.name == lower) {
      out = i.kind;
      return true;
    }
  }
  return false;
}

int expected_arity(GateKind k) { return info(k).arity; }
int expected_params(GateKind k) { return info(k).params; }

bool is_single_qubit(GateKind k) { return info(k).arity == 1; }

Unitary gate_unitary(const Gate& g) {
  const double s = 1.0 / std::sqrt(2.0);
  switch (g.kind) {
    case GateKind::X:
      return pauli_x();
    case GateKind::H: {
      Unitary m(2, 2);
      m << s, s, s, -s;
      return m;
    }
    case GateKind::RX:
      return rx_rad(deg2rad(g.params[0]));
    case GateKind::RY:
      return ry_rad(deg2rad(g.params[0]));
    case GateKind::RZ:
      return rz_rad(deg2rad(g.params[0]));
    case GateKind::U3: {
      const double t = deg2rad(g.params[0]), p = deg2rad(g.params[1]),
                   l = deg2rad(g.params[2]);
      Unitary m(2, 2);
      m << std::cos(t / 2), -std::exp(kI * l) * std::sin(t / 2),
          std::exp(kI * p) * std::sin(t / 2), std::exp(kI * (p + l)) * std::cos(t / 2);
      return m;
    }
    case GateKind::CNOT:
      return matrix4({1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0});
    case GateKind::OPEN_CNOT:
      return matrix4({0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1});
    case GateKind::SWAP:
      return matrix4({1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1});
    case GateKind::ISWAP:
      return matrix4({1, 0, 0, 0, 0, 0, kI, 0, 0, kI, 0, 0, 0, 0, 0, 1});
    case GateKind::SQRT_ISWAP:
      return matrix4({1, 0, 0, 0, 0, s, kI * s, 0, 0, kI * s, s, 0, 0, 0, 0, 1});
    case GateKind::FSIM:
      // iSWAP followed by CZ.
      return matrix4({1, 0, 0, 0, 0, 0, kI, 0, 0, kI, 0, 0, 0, 0, 0, -1});
    case GateKind::CR: {
      const double t = deg2rad(g.params[0]);
      return expm_hermitian(kron(pauli_z(), pauli_x()), t / 2);
    }
    case GateKind::ZZ: {
      const double t = deg2rad(g.params[0]);
      Unitary m = Unitary::Zero(4, 4);
      m(0, 0) = m(3, 3) = std::exp(-kI * (t / 2));
      m(1, 1) = m(2, 2) = std::exp(kI * (t / 2));
      return m;
    }
    case GateKind::BARRIER:
    case GateKind::Custom:
      break;
  }
  throw InvalidGate("gate '" + std::string(kind_name(g.kind)) + "' has no unitary");
}

namespace gates {
Gate x(int q) { return Gate::make(GateKind::X, {q}); }
Gate h(int q) { return Gate::make(GateKind::H, {q}); }
Gate rx(int q, double d) { return Gate::make(GateKind::RX, {q}, {d}); }
Gate ry(int q, double d) { return Gate::make(GateKind::RY, {q}, {d}); }
Gate rz(int q, double d) { return Gate::make(GateKind::RZ, {q}, {d}); }
Gate u3(int q, double t, double p, double l) { return Gate::make(GateKind::U3, {q}, {t, p, l}); }
Gate cnot(int c, int t) { return Gate::make(GateKind::CNOT, {c, t}); }
Gate open_cnot(int c, int t) { return Gate::make(GateKind::OPEN_CNOT, {c, t}); }
Gate swap(int a, int b) { return Gate::make(GateKind::SWAP, {a, b}); }
Gate cr(int c, int t, double d) { return Gate::make(GateKind::CR, {c, t}, {d}); }
Gate zz(int a, int b, double d) { return Gate::make(GateKind::ZZ, {a, b}, {d}); }
Gate fsim(int a, int b) { return Gate::make(GateKind::FSIM, {a, b}); }
Gate iswap(int a, int b) { return Gate::make(GateKind::ISWAP, {a, b}); }
Gate sqrt_iswap(int a, int b) { return Gate::make(GateKind::SQRT_ISWAP, {a, b}); }
}  // namespace gates

}  // namespace augpulse
