#pragma once

#include <vector>

#include "augpulse/circuit/gate.hpp"

namespace augpulse {

struct Circuit {
  int num_qubits = 0;
  std::vector<Gate> gates;

  explicit Circuit(int n = 0);
  Circuit(int n, std::vector<Gate> gs);

  // Range-checks the gate's qubits against num_qubits.
  Circuit& add(Gate g);
  bool operator==(const Circuit&) const = default;
};

// Register order is little-endian: basis index = sum_q bit_q * 2^q.
inline constexpr int kMaxUnitaryQubits = 4;

// Embeds a gate matrix on an n-qubit register (no size limit beyond memory).
Unitary embed(const Unitary& g, const std::vector<int>& qubits, int n);

// Product of all gates; barriers are skipped. Throws RegisterTooLarge above
// max_qubits.
Unitary circuit_unitary(const Circuit& c, int max_qubits = kMaxUnitaryQubits);

}  // namespace augpulse
