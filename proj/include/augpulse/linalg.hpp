#pragma once

#include <Eigen/Dense>
#include <complex>
#include <numbers>

namespace augpulse {

using cplx = std::complex<double>;
using Unitary = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr cplx kI{0.0, 1.0};

inline double deg2rad(double deg) { return deg * kPi / 180.0; }
inline double rad2deg(double rad) { return rad * 180.0 / kPi; }

// Wraps an angle in degrees into (-180, 180].
double normalize_deg(double deg);

Unitary kron(const Unitary& a, const Unitary& b);

// min over gamma of ||a - e^{i gamma} b||_F.
double phase_distance(const Unitary& a, const Unitary& b);

// (|Tr(U^dag V)|^2 + d) / (d^2 + d).
double average_gate_fidelity(const Unitary& u, const Unitary& v);

bool is_unitary(const Unitary& u, double tol);

// Pauli and single-qubit helpers, radians.
Unitary pauli_x();
Unitary pauli_y();
Unitary pauli_z();
Unitary rx_rad(double theta);
Unitary ry_rad(double theta);
Unitary rz_rad(double theta);

// Hermitian matrix exponential exp(-i h t).
Unitary expm_hermitian(const Unitary& h, double t);

// Scales u by a phase so det(u) = 1.
Unitary to_special(const Unitary& u);

}  // namespace augpulse
