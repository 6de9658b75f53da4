#include "augpulse/synth/kak.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "augpulse/errors.hpp"

namespace augpulse {

namespace {

const Unitary& magic() {
  static const Unitary q = [] {
    const double r = 1.0 / std::sqrt(2.0);
    Unitary m(4, 4);
    m << r, 0, 0, kI * r,
         0, kI * r, r, 0,
         0, kI * r, -r, 0,
         r, 0, 0, -kI * r;
    return m;
  }();
  return q;
}

Unitary to_magic(const Unitary& u) { return magic().adjoint() * u * magic(); }
Unitary from_magic(const Unitary& u) { return magic() * u * magic().adjoint(); }

// Diagonal of Q^dag (P (x) P) Q for P = X, Y, Z: the +-1 signature of each
// magic basis vector.
std::array<std::array<double, 4>, 3> signatures() {
  static const auto sig = [] {
    std::array<std::array<double, 4>, 3> s{};
    const Unitary ps[3] = {pauli_x(), pauli_y(), pauli_z()};
    for (int k = 0; k < 3; ++k) {
      const Unitary d = to_magic(kron(ps[k], ps[k]));
      for (int j = 0; j < 4; ++j) s[k][j] = d(j, j).real();
    }
    return s;
  }();
  return sig;
}

struct SymDiag {
  Eigen::Matrix4d p;  // real orthogonal, det +1
  Eigen::Vector4cd d;
};

// m is symmetric and unitary, so its real and imaginary parts are commuting
// real symmetric matrices with a common orthogonal eigenbasis.
SymDiag diagonalize_symmetric_unitary(const Unitary& m) {
  const Eigen::Matrix4d re = m.real(), im = m.imag();
  for (double r : {0.6180339887498949, 1.3247179572447460, 0.2718281828459045, 2.7182818284590452}) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(re + r * im);
    Eigen::Matrix4d p = es.eigenvectors();
    if (p.determinant() < 0) p.col(0) *= -1.0;
    const Unitary pc = p.cast<cplx>();
    const Unitary dm = pc.transpose() * m * pc;
    const Unitary off = dm - Unitary(dm.diagonal().asDiagonal());
    if (off.norm() < 1e-9) return {p, dm.diagonal()};
  }
  throw InternalError("could not diagonalise symmetric unitary");
}

Eigen::Matrix4d nearest_orthogonal(const Eigen::Matrix4d& a) {
  Eigen::JacobiSVD<Eigen::Matrix4d> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().transpose();
}

double wrap_half_pi(double x) {
  // into (-pi/4, pi/4]
  const double h = kPi / 2.0;
  x = std::fmod(x, h);
  if (x > h / 2.0) x -= h;
  if (x <= -h / 2.0) x += h;
  return x;
}

}  // namespace

Unitary canonical_gate(double a, double b, double c) {
  const Unitary h = deg2rad(a) * kron(pauli_x(), pauli_x()) + deg2rad(b) * kron(pauli_y(), pauli_y()) +
                    deg2rad(c) * kron(pauli_z(), pauli_z());
  return expm_hermitian(h, 1.0);
}

std::array<double, 3> canonicalize(double a, double b, double c) {
  std::array<double, 3> v{wrap_half_pi(deg2rad(a)), wrap_half_pi(deg2rad(b)),
                          wrap_half_pi(deg2rad(c))};
  std::sort(v.begin(), v.end(), [](double x, double y) { return std::abs(x) > std::abs(y); });
  if (v[0] < 0) {
    v[0] = -v[0];
    v[2] = -v[2];
  }
  if (v[1] < 0) {
    v[1] = -v[1];
    v[2] = -v[2];
  }
  if (std::abs(v[0] - kPi / 4.0) < 1e-12) v[2] = std::abs(v[2]);
  for (auto& x : v)
    if (std::abs(x) < 1e-13) x = 0.0;
  return {rad2deg(v[0]), rad2deg(v[1]), rad2deg(v[2])};
}

LocalPair split_local(const Unitary& k) {
  Unitary r(4, 4);
  for (int i1 = 0; i1 < 2; ++i1)
    for (int i2 = 0; i2 < 2; ++i2)
      for (int j1 = 0; j1 < 2; ++j1)
        for (int j2 = 0; j2 < 2; ++j2) r(2 * i1 + j1, 2 * i2 + j2) = k(2 * i1 + i2, 2 * j1 + j2);
  Eigen::JacobiSVD<Unitary> svd(r, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const double s = std::sqrt(svd.singularValues()(0));
  LocalPair out;
  const Eigen::Vector4cd u = svd.matrixU().col(0) * s, v = svd.matrixV().col(0).conjugate() * s;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      out.first(i, j) = u(2 * i + j);
      out.second(i, j) = v(2 * i + j);
    }
  return out;
}

std::array<cplx, 2> makhlin_invariants(const Unitary& u) {
  const Unitary ub = to_magic(to_special(u));
  const Unitary m = ub.transpose() * ub;
  const cplx t = m.trace();
  const cplx t2 = (m * m).trace();
  return {t * t / 16.0, (t * t - t2) / 4.0};
}

LocalMatch match_locals(const Unitary& u, const Unitary& v) {
  const Unitary ub = to_magic(to_special(u)), vb = to_magic(to_special(v));
  const SymDiag du = diagonalize_symmetric_unitary(ub.transpose() * ub);
  const SymDiag dv = diagonalize_symmetric_unitary(vb.transpose() * vb);

  std::array<int, 4> perm{0, 1, 2, 3}, best_perm = perm;
  double best = 1e300, best_sigma = 1.0;
  do {
    for (double sigma : {1.0, -1.0}) {
      double err = 0;
      for (int j = 0; j < 4; ++j) err += std::abs(du.d(j) - sigma * dv.d(perm[j]));
      if (err < best) {
        best = err;
        best_perm = perm;
        best_sigma = sigma;
      }
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  Eigen::Matrix4d pv;
  for (int j = 0; j < 4; ++j) pv.col(j) = dv.p.col(best_perm[j]);
  if (pv.determinant() < 0) pv.col(0) *= -1.0;
  const Eigen::Matrix4d o2 = pv * du.p.transpose();
  Unitary o1 = ub * o2.transpose().cast<cplx>() * vb.adjoint();
  if (best_sigma < 0) o1 /= kI;
  Eigen::Matrix4d r = nearest_orthogonal(o1.real());
  if (r.determinant() < 0) r.col(0) *= -1.0;

  LocalMatch out;
  out.after = split_local(from_magic(r.cast<cplx>()));
  out.before = split_local(from_magic(o2.cast<cplx>()));
  out.fidelity = average_gate_fidelity(out.after.matrix() * v * out.before.matrix(), u);
  return out;
}

CanonicalCoords kak_decompose(const Unitary& u) {
  if (u.rows() != 4 || u.cols() != 4 || !is_unitary(u, 1e-10))
    throw UserError("KAK decomposition needs a 4x4 unitary");
  const Unitary ub = to_magic(to_special(u));
  const SymDiag sd = diagonalize_symmetric_unitary(ub.transpose() * ub);

  // m ~ O^T diag(exp(-2i lambda_j)) O with lambda_j = a x_j + b y_j + c z_j.
  std::array<double, 4> lambda{};
  double total = 0;
  for (int j = 0; j < 4; ++j) total += lambda[j] = -std::arg(sd.d(j)) / 2.0;
  // Pick branches so the implied global phase is a multiple of pi/2.
  const double k = std::round(total / kPi);
  if (std::abs(std::fmod(k, 2.0)) > 0.5) {
    const auto it = std::max_element(lambda.begin(), lambda.end());
    *it -= kPi;
  }
  const auto sig = signatures();
  double coord[3];
  for (int i = 0; i < 3; ++i) {
    coord[i] = 0;
    for (int j = 0; j < 4; ++j) coord[i] += sig[i][j] * lambda[j] / 4.0;
  }
  const auto c = canonicalize(rad2deg(coord[0]), rad2deg(coord[1]), rad2deg(coord[2]));

  CanonicalCoords out;
  out.a = c[0];
  out.b = c[1];
  out.c = c[2];
  const Unitary core = canonical_gate(out.a, out.b, out.c);
  const LocalMatch m = match_locals(u, core);
  out.before = m.before;
  out.after = m.after;
  const Unitary rec = out.after.matrix() * core * out.before.matrix();
  const cplx tr = (rec.adjoint() * u).trace();
  out.phase = std::arg(tr);
  if (phase_distance(reconstruct(out), u) > 1e-9)
    throw InternalError("KAK reconstruction failed (distance " +
                        std::to_string(phase_distance(reconstruct(out), u)) + ")");
  return out;
}

Unitary reconstruct(const CanonicalCoords& k) {
  return std::exp(kI * k.phase) * k.after.matrix() * canonical_gate(k.a, k.b, k.c) *
         k.before.matrix();
}

}  // namespace augpulse
