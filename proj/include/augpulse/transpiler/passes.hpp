#pragma once

#include <array>
#include <string>

#include "augpulse/circuit/dag.hpp"

namespace augpulse {

struct PassStats {
  std::string name;
  int gates_before = 0;
  int gates_after = 0;
  int matches = 0;  // rewrites, cancellations or moves performed
};

// Hoists a gate leftwards past gates it commutes with, but only when that
// makes it adjacent to a cancellation, merge or ZZ-template partner.
Dag pass_commutativity_detection(const Dag& d, PassStats* stats = nullptr);

// CNOT(c,t) RZ_t(a) CNOT(c,t) -> H_t CR(a) H_t; explicit ZZ(a) gates get
// the same rewrite.
Dag pass_template_zz(const Dag& d, PassStats* stats = nullptr);

// CNOT -> X_c, RX_t(-90), CR(-45), X_c, CR(45), RZ_c(-90).
// OPEN_CNOT -> X_c, (CNOT expansion), X_c. SWAP is first split into CNOTs.
Dag pass_cnot_to_echo(const Dag& d, PassStats* stats = nullptr);

// Removes adjacent self-inverse pairs, merges adjacent rotations (angles
// wrapped to (-180, 180]) and drops identity rotations, to a fixpoint.
Dag pass_cancel_adjacent(const Dag& d, PassStats* stats = nullptr);

// Rewrites each single-qubit gate to RZ, RX(theta in [0,180]), RZ; X
// becomes RX(180). Pure Z rotations stay RZ.
Dag pass_direct_rotations(const Dag& d, PassStats* stats = nullptr);

// Commutation test: rule table, exact commutator as fallback.
bool gates_commute(const Gate& a, const Gate& b);

// (theta, phi, lambda) in degrees with U = e^{i g} U3(theta, phi, lambda),
// theta in [0, 180].
std::array<double, 3> u3_angles(const Unitary& u);

inline constexpr double kAngleEps = 1e-9;

}  // namespace augpulse
