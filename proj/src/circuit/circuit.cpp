#include "augpulse/circuit/circuit.hpp"

#include "augpulse/errors.hpp"

namespace augpulse {

Circuit::Circuit(int n) : num_qubits(n) {
  if (n < 0) throw InvalidGate("negative qubit count");
}

Circuit::Circuit(int n, std::vector<Gate> gs) : Circuit(n) {
  for (auto& g : gs) add(std::move(g));
}

Circuit& Circuit::add(Gate g) {
  for (int q : g.qubits)
    if (q >= num_qubits)
      throw InvalidGate("qubit " + std::to_string(q) + " out of range for " +
                        std::to_string(num_qubits) + "-qubit circuit");
  gates.push_back(std::move(g));
  return *this;
}

Unitary embed(const Unitary& g, const std::vector<int>& qubits, int n) {
  const int k = static_cast<int>(qubits.size());
  const Eigen::Index dim = Eigen::Index{1} << n;
  Unitary out = Unitary::Zero(dim, dim);
  Eigen::Index mask = 0;
  for (int q : qubits) mask |= Eigen::Index{1} << q;
  for (Eigen::Index col = 0; col < dim; ++col) {
    // Local index: qubits[0] is the most significant bit of the gate.
    int local = 0;
    for (int m = 0; m < k; ++m)
      if (col >> qubits[m] & 1) local |= 1 << (k - 1 - m);
    const Eigen::Index rest = col & ~mask;
    for (int lr = 0; lr < (1 << k); ++lr) {
      cplx v = g(lr, local);
      if (v == cplx{}) continue;
      Eigen::Index row = rest;
      for (int m = 0; m < k; ++m)
        if (lr >> (k - 1 - m) & 1) row |= Eigen::Index{1} << qubits[m];
      out(row, col) = v;
    }
  }
  return out;
}

Unitary circuit_unitary(const Circuit& c, int max_qubits) {
  if (c.num_qubits > max_qubits)
    throw RegisterTooLarge("circuit_unitary: " + std::to_string(c.num_qubits) +
                           " qubits exceeds limit of " + std::to_string(max_qubits));
  const Eigen::Index dim = Eigen::Index{1} << c.num_qubits;
  Unitary u = Unitary::Identity(dim, dim);
  for (const auto& g : c.gates) {
    if (g.kind == GateKind::BARRIER) continue;
    u = embed(gate_unitary(g), g.qubits, c.num_qubits) * u;
  }
  return u;
}

}  // namespace augpulse
