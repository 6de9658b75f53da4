#include "augpulse/linalg.hpp"

#include <cmath>

namespace augpulse {

double normalize_deg(double deg) {
  double r = std::fmod(deg, 360.0);
  if (r <= -180.0) r += 360.0;
  if (r > 180.0) r -= 360.0;
  return r;
}

Unitary kron(const Unitary& a, const Unitary& b) {
  Unitary out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

double phase_distance(const Unitary& a, const Unitary& b) {
  // Align the global phase first; the expanded-norm form loses half the
  // digits near zero.
  const cplx tr = (b.adjoint() * a).trace();
  const cplx ph = std::abs(tr) > 0 ? tr / std::abs(tr) : cplx(1.0);
  return (a - ph * b).norm();
}

double average_gate_fidelity(const Unitary& u, const Unitary& v) {
  const double d = static_cast<double>(u.rows());
  double tr = std::abs((u.adjoint() * v).trace());
  return (tr * tr + d) / (d * d + d);
}

bool is_unitary(const Unitary& u, double tol) {
  if (u.rows() != u.cols()) return false;
  return (u.adjoint() * u - Unitary::Identity(u.rows(), u.cols())).norm() < tol;
}

Unitary pauli_x() {
  Unitary m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Unitary pauli_y() {
  Unitary m(2, 2);
  m << 0, -kI, kI, 0;
  return m;
}

Unitary pauli_z() {
  Unitary m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Unitary rx_rad(double t) {
  Unitary m(2, 2);
  m << std::cos(t / 2), -kI * std::sin(t / 2), -kI * std::sin(t / 2), std::cos(t / 2);
  return m;
}

Unitary ry_rad(double t) {
  Unitary m(2, 2);
  m << std::cos(t / 2), -std::sin(t / 2), std::sin(t / 2), std::cos(t / 2);
  return m;
}

Unitary rz_rad(double t) {
  Unitary m = Unitary::Zero(2, 2);
  m(0, 0) = std::exp(-kI * (t / 2));
  m(1, 1) = std::exp(kI * (t / 2));
  return m;
}

Unitary expm_hermitian(const Unitary& h, double t) {
  Eigen::SelfAdjointEigenSolver<Unitary> es(h);
  CVector phases = (-kI * t * es.eigenvalues().cast<cplx>()).array().exp();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Unitary to_special(const Unitary& u) {
  cplx det = u.determinant();
  double n = static_cast<double>(u.rows());
  return u * std::exp(-kI * std::arg(det) / n);
}

}  // namespace augpulse
