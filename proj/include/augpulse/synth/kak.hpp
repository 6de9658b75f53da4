#pragma once

#include <array>

#include "augpulse/linalg.hpp"

namespace augpulse {

// Two single-qubit factors; `first` acts on the gate's qubits[0] (the most
// significant index of a 4x4 gate matrix).
struct LocalPair {
  Unitary first = Unitary::Identity(2, 2);
  Unitary second = Unitary::Identity(2, 2);
  Unitary matrix() const { return kron(first, second); }
};

// u = e^{i phase} after . canonical_gate(a, b, c) . before
// with 45 >= a >= b >= |c| (degrees), c >= 0 when a = 45.
struct CanonicalCoords {
  double a = 0, b = 0, c = 0;
  LocalPair before, after;
  double phase = 0;  // radians
};

// exp(-i (a XX + b YY + c ZZ)), angles in degrees.
Unitary canonical_gate(double a, double b, double c);

CanonicalCoords kak_decompose(const Unitary& u);
Unitary reconstruct(const CanonicalCoords& k);

// Moves (a, b, c) into the chamber above using the local symmetries
// (shifts by 90, permutations, paired sign flips).
std::array<double, 3> canonicalize(double a, double b, double c);

// Locals with u ~ after . v . before when u and v are locally equivalent.
// `fidelity` is the average gate fidelity of the reconstruction; below 1 the
// two classes differ and the locals are only a best effort.
struct LocalMatch {
  LocalPair before, after;
  double fidelity = 0;
};
LocalMatch match_locals(const Unitary& u, const Unitary& v);

// Local invariants: G1 = tr(m)^2 / 16, G2 = (tr(m)^2 - tr(m^2)) / 4 with m
// built from the magic-basis form of u normalised to SU(4).
std::array<cplx, 2> makhlin_invariants(const Unitary& u);

// Factors a 4x4 local unitary into a (x) b.
LocalPair split_local(const Unitary& k);

}  // namespace augpulse
