#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "augpulse/linalg.hpp"

namespace augpulse {

// ISWAP and SQRT_ISWAP exist so synthesized circuits over those bases can be
// evaluated with the same machinery as user circuits.
enum class GateKind {
  X, H, RX, RY, RZ, U3,
  CNOT, OPEN_CNOT, SWAP, CR, ZZ, FSIM, ISWAP, SQRT_ISWAP,
  BARRIER, Custom
};

struct Gate {
  GateKind kind = GateKind::X;
  std::vector<double> params;  // degrees
  std::vector<int> qubits;
  std::string name;            // only meaningful for Custom

  // Checks arity, parameter count and distinct qubits; throws InvalidGate.
  static Gate make(GateKind kind, std::vector<int> qubits,
                   std::vector<double> params = {});
  static Gate custom(std::string name, std::vector<int> qubits,
                     std::vector<double> params = {});

  int arity() const { return static_cast<int>(qubits.size()); }
  bool operator==(const Gate&) const = default;
};

std::string_view kind_name(GateKind k);
// Case-insensitive; accepts "cx" for CNOT. Returns false if unknown.
bool kind_from_name(std::string_view name, GateKind& out);
int expected_arity(GateKind k);   // -1 when any arity >= 1 is allowed
int expected_params(GateKind k);  // -1 when unconstrained

bool is_single_qubit(GateKind k);

// Two-qubit matrices put qubits[0] in the most significant position.
// CR(t) = exp(-i t/2 Z(x)X) with qubits[0] the control.
Unitary gate_unitary(const Gate& g);

// Convenience constructors.
namespace gates {
Gate x(int q);
Gate h(int q);
Gate rx(int q, double deg);
Gate ry(int q, double deg);
Gate rz(int q, double deg);
Gate u3(int q, double theta, double phi, double lambda);
Gate cnot(int c, int t);
Gate open_cnot(int c, int t);
Gate swap(int a, int b);
Gate cr(int c, int t, double deg);
Gate zz(int a, int b, double deg);
Gate fsim(int a, int b);
Gate iswap(int a, int b);
Gate sqrt_iswap(int a, int b);
}  // namespace gates

}  // namespace augpulse
