#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "augpulse/circuit/circuit.hpp"
#include "augpulse/synth/kak.hpp"

namespace augpulse {

enum class NativeBasis { CNOT, CR90, ISWAP, SQRT_ISWAP, CRTheta };

const char* basis_name(NativeBasis b);
inline constexpr NativeBasis kAllBases[] = {NativeBasis::CNOT, NativeBasis::CR90, NativeBasis::ISWAP,
                                            NativeBasis::SQRT_ISWAP, NativeBasis::CRTheta};
inline constexpr double kSynthFidelity = 0.999;

// Targets are 4x4 matrices in gate order (qubit 0 is the most significant
// index); `circuit` acts on qubits {0, 1} of a two-qubit register.
struct Decomposition {
  std::string target;
  std::string basis;
  Circuit circuit{2};
  double cost = 0;        // basis weight sum; sum(theta)/90 for CR(theta)
  int applications = 0;  // two-qubit gates in the circuit
  double fidelity = 0;
};

// Average gate fidelity of the circuit against a gate-order target.
double decomposition_fidelity(const Circuit& c, const Unitary& target);

// Fewest basis applications (sqrt-iSWAP weighted 0.5) that reach
// kSynthFidelity. Up to three applications, six for sqrt-iSWAP; beyond that
// NotReachable. Locals come from a seeded multi-start search.
Decomposition discrete_cost(const Unitary& target, NativeBasis basis,
                            const std::string& target_name = "target", uint64_t seed = 0);

// Minimum total CR angle: one CR per nonzero canonical coordinate with
// theta_k = 2 |coord_k|, so the cost is 2 (a + b + |c|) / 90.
Decomposition parametrized_cr_cost(const Unitary& target, const std::string& target_name = "target");

Decomposition decompose(const Unitary& target, NativeBasis basis, const std::string& name,
                        uint64_t seed = 0);

struct CostRow {
  std::string name;
  Unitary target;
  std::vector<std::optional<Decomposition>> cells;  // one per kAllBases entry
};

// Rows CNOT, SWAP, ZZ(37), FSIM. A cell is empty when unreachable.
std::vector<CostRow> cost_table(uint64_t seed = 0);

// Value shown in the table: the weighted cost, or the number of CR(theta)
// applications for the parametrized column.
double table_value(const Decomposition& d, NativeBasis b);

}  // namespace augpulse
