#include "augpulse/sim/propagate.hpp"

#include <cmath>

#include "augpulse/circuit/circuit.hpp"
#include "augpulse/errors.hpp"

namespace augpulse {

using Mat = Eigen::MatrixXcd;

QuantumState QuantumState::ground(int n) { return basis(std::vector<int>(static_cast<size_t>(n), 0)); }

QuantumState QuantumState::basis(const std::vector<int>& levels) {
  QuantumState s;
  s.num_qutrits = static_cast<int>(levels.size());
  s.psi = CVector::Zero(s.dim());
  int idx = 0, stride = 1;
  for (int l : levels) {
    if (l < 0 || l > 2) throw UserError("level must be 0, 1 or 2");
    idx += l * stride;
    stride *= 3;
  }
  s.psi(idx) = 1.0;
  return s;
}

QuantumState QuantumState::pure(int n, CVector psi) {
  QuantumState s;
  s.num_qutrits = n;
  if (psi.size() != s.dim()) throw UserError("state dimension mismatch");
  s.psi = std::move(psi);
  return s;
}

int QuantumState::dim() const {
  int d = 1;
  for (int i = 0; i < num_qutrits; ++i) d *= 3;
  return d;
}

QuantumState QuantumState::to_mixed() const {
  if (mixed) return *this;
  QuantumState s = *this;
  s.mixed = true;
  s.rho = psi * psi.adjoint();
  s.psi.resize(0);
  return s;
}

Eigen::MatrixXcd QuantumState::density() const { return mixed ? rho : Mat(psi * psi.adjoint()); }

std::vector<double> QuantumState::populations() const {
  std::vector<double> p(static_cast<size_t>(dim()));
  for (int i = 0; i < dim(); ++i) p[i] = mixed ? rho(i, i).real() : std::norm(psi(i));
  return p;
}

std::vector<double> QuantumState::level_populations(int q) const {
  std::vector<double> out(3, 0.0);
  const auto p = populations();
  int stride = 1;
  for (int i = 0; i < q; ++i) stride *= 3;
  for (int i = 0; i < dim(); ++i) out[(i / stride) % 3] += p[i];
  return out;
}

double QuantumState::trace() const { return mixed ? rho.trace().real() : psi.squaredNorm(); }

namespace {

Mat embed_op(const Mat& op, int q, int n) {
  Mat out = Mat::Identity(1, 1);
  for (int k = n - 1; k >= 0; --k) {
    const Mat& f = (k == q) ? op : Mat(Mat::Identity(3, 3));
    Mat next(out.rows() * 3, out.cols() * 3);
    for (Eigen::Index i = 0; i < out.rows(); ++i)
      for (Eigen::Index j = 0; j < out.cols(); ++j) next.block(i * 3, j * 3, 3, 3) = out(i, j) * f;
    out = std::move(next);
  }
  return out;
}

Mat ket_bra(int i, int j) {
  Mat m = Mat::Zero(3, 3);
  m(i, j) = 1.0;
  return m;
}

struct DriveTerm {
  std::vector<cplx> samples;
  Mat m0;      // couples 0<->1, rotates at the qubit detuning
  Mat m1;      // couples 1<->2, rotates at detuning + alpha
  double omega_detuning = 0;  // rad/ns
  double omega_alpha = 0;
};

struct System {
  int dim = 0;
  std::vector<DriveTerm> drives;
  Mat k_half;  // (1/2) sum L^dag L
  std::vector<Mat> jumps;
};

System build_system(const PulseSchedule& s, const DeviceModel& m, bool noisy) {
  m.validate();
  System sys;
  const int n = m.num_qubits();
  sys.dim = m.dim();
  const Mat lower01 = ket_bra(0, 1);
  const Mat lower12 = std::sqrt(2.0) * ket_bra(1, 2);
  const Mat zc = Eigen::Vector3cd(1, -1, -1).asDiagonal();

  for (const auto& ch : s.channels()) {
    bool plays = false;
    for (const auto& i : s.instructions()) plays = plays || (i.channel == ch && i.is_envelope());
    // Frame-only channels (virtual Z on a coupler outside the model) carry
    // no drive.
    if (!plays) continue;
    auto it = m.channels.find(ch);
    if (it == m.channels.end())
      throw UserError("schedule channel '" + ch + "' is not part of the device model");
    auto samples = render_channel(s, ch, m.dt_ns);
    bool any = false;
    for (const auto& v : samples) any = any || v != cplx{};
    if (!any) continue;
    const auto& b = it->second;
    DriveTerm t;
    t.samples = std::move(samples);
    if (b.kind == ChannelBinding::Kind::Drive) {
      const double half = m.qubits[b.qubit].drive_rate / 2.0;
      t.m0 = half * embed_op(lower01, b.qubit, n);
      t.m1 = half * embed_op(lower12, b.qubit, n);
      t.omega_alpha = 2.0 * kPi * m.qubits[b.qubit].alpha_ghz;
      t.omega_detuning = 2.0 * kPi * m.qubits[b.qubit].detuning_ghz;
    } else {
      const CrTerm* cr = nullptr;
      for (const auto& c : m.cr)
        if (c.control == b.qubit && c.target == b.target) cr = &c;
      if (!cr) throw UserError("no cross-resonance coefficients for channel " + ch);
      const Mat zfull = embed_op(zc, b.qubit, n);
      const Mat a0 = embed_op(lower01, b.target, n), a1 = embed_op(lower12, b.target, n);
      t.m0 = (cr->zx_rate / 2.0) * zfull * a0 + (cr->ix_rate / 2.0) * a0;
      t.m1 = (cr->zx_rate / 2.0) * zfull * a1 + (cr->ix_rate / 2.0) * a1;
      t.omega_alpha = 2.0 * kPi * m.qubits[b.target].alpha_ghz;
      t.omega_detuning = 2.0 * kPi * m.qubits[b.target].detuning_ghz;
    }
    sys.drives.push_back(std::move(t));
  }

  sys.k_half = Mat::Zero(sys.dim, sys.dim);
  if (noisy) {
    for (int q = 0; q < n; ++q) {
      const auto& p = m.qubits[q];
      if (p.t1_us > 0) {
        const double g1 = 1.0 / (p.t1_us * 1000.0);
        sys.jumps.push_back(std::sqrt(g1) * embed_op(lower01, q, n));
        sys.jumps.push_back(std::sqrt(g1) * embed_op(lower12, q, n));
      }
      if (p.t2_us > 0) {
        const double g1 = p.t1_us > 0 ? 1.0 / (p.t1_us * 1000.0) : 0.0;
        const double gphi = 1.0 / (p.t2_us * 1000.0) - g1 / 2.0;
        if (gphi > 0) {
          const Mat num = Eigen::Vector3cd(0, 1, 2).asDiagonal();
          sys.jumps.push_back(std::sqrt(2.0 * gphi) * embed_op(num, q, n));
        }
      }
    }
    for (const auto& l : sys.jumps) sys.k_half += 0.5 * l.adjoint() * l;
  }
  return sys;
}

// H(t) for sample index k at absolute time t (ns).
void hamiltonian(const System& sys, size_t k, double t, Mat& h) {
  h.setZero();
  for (const auto& d : sys.drives) {
    cplx s = d.samples[k];
    if (s == cplx{}) continue;
    if (d.omega_detuning != 0.0) s *= std::exp(-kI * (d.omega_detuning * t));
    h.noalias() += s * d.m0;
    h.noalias() += (s * std::exp(-kI * (d.omega_alpha * t))) * d.m1;
  }
  h += h.adjoint().eval();
}

bool sample_idle(const System& sys, size_t k) {
  for (const auto& d : sys.drives)
    if (d.samples[k] != cplx{}) return false;
  return true;
}

}  // namespace

QuantumState propagate(const PulseSchedule& s, const DeviceModel& m, const QuantumState& init,
                       const SimOptions& opts) {
  if (init.num_qutrits != m.num_qubits()) throw UserError("state/model size mismatch");
  if (opts.substeps < 4) throw UserError("need at least 4 substeps per dt");
  const bool noisy = opts.noisy && m.has_noise();
  const System sys = build_system(s, m, noisy);
  const double dt = m.dt_ns, h = dt / opts.substeps;
  const int steps = s.duration();
  Mat H(sys.dim, sys.dim), H2(sys.dim, sys.dim), H3(sys.dim, sys.dim);

  if (!noisy) {
    CVector psi = init.mixed ? CVector() : init.psi;
    if (init.mixed) throw UserError("noiseless propagation needs a pure state");
    const double n0 = psi.norm();
    CVector k1, k2, k3, k4;
    for (int k = 0; k < steps; ++k) {
      if (sample_idle(sys, static_cast<size_t>(k))) continue;
      for (int j = 0; j < opts.substeps; ++j) {
        const double t = k * dt + j * h;
        hamiltonian(sys, k, t, H);
        hamiltonian(sys, k, t + h / 2, H2);
        hamiltonian(sys, k, t + h, H3);
        k1 = -kI * (H * psi);
        k2 = -kI * (H2 * (psi + (h / 2) * k1));
        k3 = -kI * (H2 * (psi + (h / 2) * k2));
        k4 = -kI * (H3 * (psi + h * k3));
        psi += (h / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      }
    }
    if (std::abs(psi.norm() - n0) > 1e-6)
      throw StepSizeError("norm drift " + std::to_string(std::abs(psi.norm() - n0)) +
                          "; increase substeps");
    return QuantumState::pure(init.num_qutrits, std::move(psi));
  }

  Mat rho = init.density();
  const double tr0 = rho.trace().real();
  Mat k1, k2, k3, k4, tmp;
  auto rhs = [&](const Mat& heff, const Mat& r, Mat& out) {
    tmp.noalias() = heff * r;
    out = -kI * tmp;
    out += out.adjoint().eval();
    for (const auto& l : sys.jumps) out.noalias() += l * r * l.adjoint();
  };
  for (int k = 0; k < steps; ++k) {
    for (int j = 0; j < opts.substeps; ++j) {
      const double t = k * dt + j * h;
      hamiltonian(sys, k, t, H);
      hamiltonian(sys, k, t + h / 2, H2);
      hamiltonian(sys, k, t + h, H3);
      H -= kI * sys.k_half;
      H2 -= kI * sys.k_half;
      H3 -= kI * sys.k_half;
      rhs(H, rho, k1);
      rhs(H2, rho + (h / 2) * k1, k2);
      rhs(H2, rho + (h / 2) * k2, k3);
      rhs(H3, rho + h * k3, k4);
      rho += (h / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
  }
  if (std::abs(rho.trace().real() - tr0) > 1e-6)
    throw StepSizeError("trace drift; increase substeps");
  QuantumState out;
  out.num_qutrits = init.num_qutrits;
  out.mixed = true;
  out.rho = std::move(rho);
  return out;
}

double final_frame_phase(const PulseSchedule& s, const std::string& channel) {
  double total = 0.0;
  for (const auto& i : s.instructions())
    if (i.channel == channel)
      if (auto* fc = std::get_if<FrameChange>(&i.payload)) total += fc->phase_deg;
  return total;
}

Eigen::MatrixXcd propagator_columns(const PulseSchedule& s, const DeviceModel& m,
                                    const std::vector<int>& inputs, int substeps) {
  Mat out(m.dim(), static_cast<Eigen::Index>(inputs.size()));
  SimOptions opts;
  opts.substeps = substeps;
  for (size_t c = 0; c < inputs.size(); ++c) {
    CVector e = CVector::Zero(m.dim());
    e(inputs[c]) = 1.0;
    out.col(static_cast<Eigen::Index>(c)) =
        propagate(s, m, QuantumState::pure(m.num_qubits(), e), opts).psi;
  }
  return out;
}

Unitary qubit_block(const PulseSchedule& s, const DeviceModel& m, int substeps) {
  const int n = m.num_qubits();
  const int d2 = 1 << n;
  // Map little-endian qubit index to qutrit index.
  std::vector<int> idx(static_cast<size_t>(d2));
  for (int i = 0; i < d2; ++i) {
    int t = 0, stride = 1;
    for (int q = 0; q < n; ++q, stride *= 3)
      if (i >> q & 1) t += stride;
    idx[i] = t;
  }
  const Mat cols = propagator_columns(s, m, idx, substeps);
  Unitary u(d2, d2);
  for (int r = 0; r < d2; ++r) u.row(r) = cols.row(idx[r]);
  for (int q = 0; q < n; ++q) {
    for (const auto& [name, b] : m.channels) {
      if (b.kind != ChannelBinding::Kind::Drive || b.qubit != q) continue;
      const double phi = final_frame_phase(s, name);
      if (phi != 0.0) u = embed(rz_rad(deg2rad(phi)), {q}, n) * u;
    }
  }
  return u;
}

}  // namespace augpulse
