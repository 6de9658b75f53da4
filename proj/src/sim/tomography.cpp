#include "augpulse/sim/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace augpulse {

namespace {

// 2x2 reduced density matrix of qubit q (levels 0,1), unnormalised, plus p2.
Eigen::Matrix2cd reduced_qubit(const QuantumState& s, int q, double& p2) {
  const Eigen::MatrixXcd rho = s.density();
  int stride = 1;
  for (int i = 0; i < q; ++i) stride *= 3;
  Eigen::Matrix3cd r = Eigen::Matrix3cd::Zero();
  const int d = s.dim();
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      // Same levels on all other qutrits.
      if (i - ((i / stride) % 3) * stride != j - ((j / stride) % 3) * stride) continue;
      r((i / stride) % 3, (j / stride) % 3) += rho(i, j);
    }
  p2 = r(2, 2).real();
  return r.topLeftCorner<2, 2>();
}

}  // namespace

BlochVector bloch_vector(const QuantumState& s, int q, double frame_phase_deg) {
  BlochVector b;
  Eigen::Matrix2cd r = reduced_qubit(s, q, b.p2);
  const double tr = r.trace().real();
  if (tr <= 0) return {0, 0, 0, b.p2};
  r /= tr;
  const Eigen::Matrix2cd rz = rz_rad(deg2rad(frame_phase_deg));
  r = rz * r * rz.adjoint();
  b.x = 2.0 * r(0, 1).real();
  b.y = -2.0 * r(0, 1).imag();
  b.z = (r(0, 0) - r(1, 1)).real();
  return b;
}

BlochVector tomography(const PulseSchedule& s, const DeviceModel& m, int q,
                       const TomographyOptions& opts, const QuantumState* init) {
  SimOptions so;
  so.noisy = opts.noisy;
  const QuantumState start = init ? *init : QuantumState::ground(m.num_qubits());
  const QuantumState out = propagate(s, m, start, so);
  double phase = 0;
  for (const auto& [name, b] : m.channels)
    if (b.kind == ChannelBinding::Kind::Drive && b.qubit == q) phase = final_frame_phase(s, name);
  BlochVector b = bloch_vector(out, q, phase);
  if (opts.shots > 0) {
    std::mt19937_64 rng(opts.seed);
    auto sample = [&](double e) {
      const double p = std::clamp((1.0 + e) / 2.0, 0.0, 1.0);
      std::binomial_distribution<int> dist(opts.shots, p);
      return 2.0 * dist(rng) / opts.shots - 1.0;
    };
    b.x = sample(b.x);
    b.y = sample(b.y);
    b.z = sample(b.z);
  }
  return b;
}

}  // namespace augpulse
