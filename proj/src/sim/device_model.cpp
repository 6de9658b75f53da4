#include "augpulse/sim/device_model.hpp"

#include <cstdio>
#include <sstream>

#include "augpulse/errors.hpp"

namespace augpulse {

int DeviceModel::dim() const {
  int d = 1;
  for (size_t i = 0; i < qubits.size(); ++i) d *= 3;
  return d;
}

bool DeviceModel::has_noise() const {
  for (const auto& q : qubits)
    if (q.t1_us > 0 || q.t2_us > 0) return true;
  return false;
}

void DeviceModel::validate() const {
  if (qubits.empty() || qubits.size() > 2) throw UserError("model must have 1 or 2 transmons");
  if (!(dt_ns > 0)) throw UserError("model dt must be positive");
  for (const auto& q : qubits)
    if (q.t1_us > 0 && q.t2_us > 2 * q.t1_us) throw UserError("model T2 exceeds 2*T1");
  for (const auto& [name, b] : channels) {
    if (b.qubit < 0 || b.qubit >= num_qubits()) throw UserError("channel " + name + " unbound");
    if (b.kind == ChannelBinding::Kind::Control && (b.target < 0 || b.target >= num_qubits()))
      throw UserError("channel " + name + " target unbound");
  }
}

DeviceModel DeviceModel::from_backend(const BackendConfig& b, const std::vector<int>& bq) {
  if (bq.empty() || bq.size() > 2) throw UserError("simulate 1 or 2 qubits");
  if (!b.model) throw UserError("backend has no simulator model section");
  DeviceModel m;
  m.dt_ns = b.dt_ns;
  auto local = [&](int q) {
    for (size_t i = 0; i < bq.size(); ++i)
      if (bq[i] == q) return static_cast<int>(i);
    return -1;
  };
  for (size_t i = 0; i < bq.size(); ++i) {
    const int q = bq[i];
    if (q < 0 || q >= b.num_qubits()) throw UserError("qubit out of range");
    const auto& p = b.qubits[q];
    m.qubits.push_back({p.f01_ghz, p.alpha_ghz, b.model->drive_rate[q], p.t1_us, p.t2_us});
    m.channels[b.drive_channel(q)] = {ChannelBinding::Kind::Drive, static_cast<int>(i), 0};
  }
  for (const auto& c : b.model->cr) {
    const int lc = local(c.control), lt = local(c.target);
    if (lc < 0 || lt < 0) continue;
    m.cr.push_back({lc, lt, c.zx_rate, c.ix_rate});
    if (const auto* ch = b.control_channel(c.control, c.target))
      m.channels[ch->channel] = {ChannelBinding::Kind::Control, lc, lt};
  }
  m.validate();
  return m;
}

DeviceModel single_transmon(const TransmonParams& p, double dt_ns) {
  DeviceModel m;
  m.dt_ns = dt_ns;
  m.qubits.push_back(p);
  m.channels["d0"] = {ChannelBinding::Kind::Drive, 0, 0};
  m.validate();
  return m;
}

std::string model_hash(const DeviceModel& m) {
  std::ostringstream os;
  os.precision(17);
  os << m.dt_ns;
  for (const auto& q : m.qubits) {
    os << '|' << q.f01_ghz << ',' << q.alpha_ghz << ',' << q.drive_rate << ',' << q.t1_us << ','
       << q.t2_us;
    if (q.detuning_ghz != 0.0) os << ',' << q.detuning_ghz;
  }
  for (const auto& c : m.cr) os << "|cr" << c.control << c.target << ',' << c.zx_rate << ',' << c.ix_rate;
  for (const auto& [n, b] : m.channels)
    os << '|' << n << static_cast<int>(b.kind) << b.qubit << b.target;
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : os.str()) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace augpulse
