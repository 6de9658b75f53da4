#include "augpulse/pulse/backend.hpp"

#include <fstream>
#include <set>

#include "augpulse/errors.hpp"

namespace augpulse {

using nlohmann::json;

namespace {

const json& field(const json& j, const std::string& ptr, const char* key) {
  if (!j.is_object()) throw SchemaError(ptr, "expected object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(ptr + "/" + key, "missing field");
  return *it;
}

double num(const json& j, const std::string& ptr, const char* key) {
  const auto& v = field(j, ptr, key);
  if (!v.is_number()) throw SchemaError(ptr + "/" + key, "expected number");
  return v.get<double>();
}

int integer(const json& j, const std::string& ptr, const char* key) {
  const auto& v = field(j, ptr, key);
  if (!v.is_number_integer()) throw SchemaError(ptr + "/" + key, "expected integer");
  return v.get<int>();
}

std::string str(const json& j, const std::string& ptr, const char* key) {
  const auto& v = field(j, ptr, key);
  if (!v.is_string()) throw SchemaError(ptr + "/" + key, "expected string");
  return v.get<std::string>();
}

const json& arr(const json& j, const std::string& ptr, const char* key) {
  const auto& v = field(j, ptr, key);
  if (!v.is_array()) throw SchemaError(ptr + "/" + key, "expected array");
  return v;
}

void check_version(const json& j, const std::string& ptr) {
  int v = integer(j, ptr, "format_version");
  if (v != kFormatVersion)
    throw SchemaError(ptr + "/format_version", "unsupported version " + std::to_string(v));
}

std::vector<int> int_list(const json& j, const std::string& ptr) {
  if (!j.is_array()) throw SchemaError(ptr, "expected array");
  std::vector<int> out;
  for (size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number_integer())
      throw SchemaError(ptr + "/" + std::to_string(i), "expected integer");
    out.push_back(j[i].get<int>());
  }
  return out;
}

template <class F>
auto wrap(const std::string& ptr, F&& f) {
  try {
    return f();
  } catch (const SchemaError&) {
    throw;
  } catch (const UserError& e) {
    throw SchemaError(ptr, e.what());
  }
}

}  // namespace

const std::string& BackendConfig::drive_channel(int q) const {
  if (q < 0 || q >= static_cast<int>(drive_channels.size()))
    throw UserError("no drive channel for qubit " + std::to_string(q));
  return drive_channels[q];
}

const ControlChannel* BackendConfig::control_channel(int control, int target) const {
  for (const auto& c : control_channels)
    if (c.control == control && c.target == target) return &c;
  return nullptr;
}

const PulseSchedule* BackendConfig::find_cmd(const std::string& gate,
                                             const std::vector<int>& qs) const {
  auto it = cmd_def.find(CmdKey{gate, qs});
  return it == cmd_def.end() ? nullptr : &it->second;
}

std::vector<std::string> BackendConfig::frame_channels(int q) const {
  std::vector<std::string> out{drive_channel(q)};
  for (const auto& c : control_channels)
    if (c.target == q) out.push_back(c.channel);
  return out;
}

json envelope_to_json(const Envelope& e) {
  json j;
  j["shape"] = shape_name(e.shape);
  switch (e.shape) {
    case Shape::FrequencyShifted:
      j["detuning_ghz"] = e.detuning_ghz;
      j["dt_ns"] = e.dt_ns;
      j["base"] = envelope_to_json(*e.base);
      return j;
    case Shape::Drag:
      j["beta"] = e.beta;
      [[fallthrough]];
    case Shape::Gaussian:
      j["sigma"] = e.sigma;
      break;
    case Shape::GaussianSquare:
      j["sigma"] = e.sigma;
      j["width"] = e.width;
      break;
    case Shape::Constant:
      break;
  }
  j["amp"] = {e.amp.real(), e.amp.imag()};
  j["duration"] = e.duration;
  return j;
}

Envelope envelope_from_json(const json& j, const std::string& ptr) {
  const std::string shape = str(j, ptr, "shape");
  if (shape == "frequency_shifted") {
    Envelope base = envelope_from_json(field(j, ptr, "base"), ptr + "/base");
    double det = num(j, ptr, "detuning_ghz");
    double dt = num(j, ptr, "dt_ns");
    return wrap(ptr, [&] { return Envelope::frequency_shifted(base, det, dt); });
  }
  const auto& a = arr(j, ptr, "amp");
  if (a.size() != 2 || !a[0].is_number() || !a[1].is_number())
    throw SchemaError(ptr + "/amp", "expected [re, im]");
  const cplx amp{a[0].get<double>(), a[1].get<double>()};
  const int dur = integer(j, ptr, "duration");
  return wrap(ptr, [&] {
    if (shape == "constant") return Envelope::constant(amp, dur);
    if (shape == "gaussian") return Envelope::gaussian(amp, dur, num(j, ptr, "sigma"));
    if (shape == "drag")
      return Envelope::drag(amp, dur, num(j, ptr, "sigma"), num(j, ptr, "beta"));
    if (shape == "gaussian_square")
      return Envelope::gaussian_square(amp, dur, num(j, ptr, "sigma"), integer(j, ptr, "width"));
    throw SchemaError(ptr + "/shape", "unknown shape '" + shape + "'");
  });
}

json schedule_to_json(const PulseSchedule& s) {
  json instrs = json::array();
  for (const auto& i : s.instructions()) {
    json ji;
    ji["channel"] = i.channel;
    ji["start_dt"] = i.start;
    if (auto* e = std::get_if<Envelope>(&i.payload)) {
      ji["type"] = "play";
      ji["params"] = envelope_to_json(*e);
    } else if (auto* fc = std::get_if<FrameChange>(&i.payload)) {
      ji["type"] = "frame_change";
      ji["params"] = {{"phase_deg", fc->phase_deg}};
    } else {
      ji["type"] = "freq_shift";
      ji["params"] = {{"ghz", std::get<FreqShift>(i.payload).ghz}};
    }
    if (!i.label.empty()) ji["label"] = i.label;
    instrs.push_back(std::move(ji));
  }
  return {{"format_version", kFormatVersion},
          {"duration_dt", s.duration()},
          {"instructions", std::move(instrs)}};
}

PulseSchedule schedule_from_json(const json& j, const std::string& ptr) {
  check_version(j, ptr);
  PulseSchedule s;
  const auto& instrs = arr(j, ptr, "instructions");
  for (size_t k = 0; k < instrs.size(); ++k) {
    const std::string p = ptr + "/instructions/" + std::to_string(k);
    const auto& ji = instrs[k];
    ScheduleInstruction ins;
    ins.channel = str(ji, p, "channel");
    ins.start = integer(ji, p, "start_dt");
    if (ins.start < 0) throw SchemaError(p + "/start_dt", "must be >= 0");
    const std::string type = str(ji, p, "type");
    const auto& params = field(ji, p, "params");
    if (type == "play") ins.payload = envelope_from_json(params, p + "/params");
    else if (type == "frame_change") ins.payload = FrameChange{num(params, p + "/params", "phase_deg")};
    else if (type == "freq_shift") ins.payload = FreqShift{num(params, p + "/params", "ghz")};
    else throw SchemaError(p + "/type", "unknown instruction type '" + type + "'");
    if (ji.contains("label")) ins.label = str(ji, p, "label");
    wrap(p, [&] {
      s.add(std::move(ins), Align::At);
      return 0;
    });
  }
  if (j.contains("duration_dt") && integer(j, ptr, "duration_dt") != s.duration())
    throw SchemaError(ptr + "/duration_dt", "does not match instructions");
  return s;
}

json backend_to_json(const BackendConfig& b) {
  json j;
  j["format_version"] = kFormatVersion;
  j["name"] = b.name;
  j["dt_ns"] = b.dt_ns;
  j["qubits"] = json::array();
  for (const auto& q : b.qubits)
    j["qubits"].push_back(
        {{"f01_ghz", q.f01_ghz}, {"alpha_ghz", q.alpha_ghz}, {"t1_us", q.t1_us}, {"t2_us", q.t2_us}});
  j["channels"]["drive"] = b.drive_channels;
  j["channels"]["control"] = json::array();
  for (const auto& c : b.control_channels)
    j["channels"]["control"].push_back(
        {{"control", c.control}, {"target", c.target}, {"channel", c.channel}});
  j["cmd_def"] = json::array();
  for (const auto& [key, sched] : b.cmd_def)
    j["cmd_def"].push_back(
        {{"gate", key.gate}, {"qubits", key.qubits}, {"schedule", schedule_to_json(sched)}});
  if (b.model) {
    json m;
    m["drive_rate_rad_per_ns"] = b.model->drive_rate;
    m["cr"] = json::array();
    for (const auto& c : b.model->cr)
      m["cr"].push_back({{"control", c.control},
                         {"target", c.target},
                         {"zx_rate_rad_per_ns", c.zx_rate},
                         {"ix_rate_rad_per_ns", c.ix_rate}});
    j["model"] = std::move(m);
  }
  return j;
}

BackendConfig backend_from_json(const json& j) {
  check_version(j, "");
  BackendConfig b;
  if (j.contains("name")) b.name = str(j, "", "name");
  b.dt_ns = num(j, "", "dt_ns");
  if (!(b.dt_ns > 0)) throw InvariantViolation("/dt_ns", "dt must be positive");

  const auto& qs = arr(j, "", "qubits");
  for (size_t i = 0; i < qs.size(); ++i) {
    const std::string p = "/qubits/" + std::to_string(i);
    QubitProps q{num(qs[i], p, "f01_ghz"), num(qs[i], p, "alpha_ghz"), num(qs[i], p, "t1_us"),
                 num(qs[i], p, "t2_us")};
    if (!(std::abs(q.alpha_ghz) > 0)) throw InvariantViolation(p + "/alpha_ghz", "|alpha| must be > 0");
    if (!(q.t1_us > 0)) throw InvariantViolation(p + "/t1_us", "T1 must be positive");
    if (!(q.t2_us > 0)) throw InvariantViolation(p + "/t2_us", "T2 must be positive");
    if (q.t2_us > 2.0 * q.t1_us) throw InvariantViolation(p + "/t2_us", "T2 exceeds 2*T1");
    b.qubits.push_back(q);
  }

  const auto& ch = field(j, "", "channels");
  const auto& drive = arr(ch, "/channels", "drive");
  if (drive.size() != qs.size())
    throw SchemaError("/channels/drive", "need one drive channel per qubit");
  for (size_t i = 0; i < drive.size(); ++i) {
    if (!drive[i].is_string())
      throw SchemaError("/channels/drive/" + std::to_string(i), "expected string");
    b.drive_channels.push_back(drive[i].get<std::string>());
  }
  const auto& ctrl = arr(ch, "/channels", "control");
  for (size_t i = 0; i < ctrl.size(); ++i) {
    const std::string p = "/channels/control/" + std::to_string(i);
    ControlChannel c{integer(ctrl[i], p, "control"), integer(ctrl[i], p, "target"),
                     str(ctrl[i], p, "channel")};
    for (int q : {c.control, c.target})
      if (q < 0 || q >= b.num_qubits()) throw SchemaError(p, "qubit index out of range");
    b.control_channels.push_back(std::move(c));
  }

  const auto& cmds = arr(j, "", "cmd_def");
  for (size_t i = 0; i < cmds.size(); ++i) {
    const std::string p = "/cmd_def/" + std::to_string(i);
    CmdKey key{str(cmds[i], p, "gate"), int_list(field(cmds[i], p, "qubits"), p + "/qubits")};
    for (int q : key.qubits)
      if (q < 0 || q >= b.num_qubits()) throw SchemaError(p + "/qubits", "qubit index out of range");
    b.cmd_def[key] = schedule_from_json(field(cmds[i], p, "schedule"), p + "/schedule");
  }
  for (int q = 0; q < b.num_qubits(); ++q)
    for (const char* g : {"rx90", "x"})
      if (!b.find_cmd(g, {q}))
        throw InvariantViolation("/cmd_def", std::string("missing ") + g + " for qubit " +
                                                 std::to_string(q));
  for (const auto& c : b.control_channels)
    if (!b.find_cmd("cnot", {c.control, c.target}))
      throw InvariantViolation("/cmd_def", "missing cnot for pair (" + std::to_string(c.control) +
                                               "," + std::to_string(c.target) + ")");

  if (j.contains("model")) {
    const auto& m = j["model"];
    ModelParams mp;
    const auto& rates = arr(m, "/model", "drive_rate_rad_per_ns");
    for (size_t i = 0; i < rates.size(); ++i) {
      if (!rates[i].is_number())
        throw SchemaError("/model/drive_rate_rad_per_ns/" + std::to_string(i), "expected number");
      mp.drive_rate.push_back(rates[i].get<double>());
    }
    if (static_cast<int>(mp.drive_rate.size()) != b.num_qubits())
      throw SchemaError("/model/drive_rate_rad_per_ns", "need one rate per qubit");
    if (m.contains("cr")) {
      const auto& crs = arr(m, "/model", "cr");
      for (size_t i = 0; i < crs.size(); ++i) {
        const std::string p = "/model/cr/" + std::to_string(i);
        mp.cr.push_back({integer(crs[i], p, "control"), integer(crs[i], p, "target"),
                         num(crs[i], p, "zx_rate_rad_per_ns"), num(crs[i], p, "ix_rate_rad_per_ns")});
      }
    }
    b.model = std::move(mp);
  }
  return b;
}

namespace {

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UserError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError("", "'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw UserError("cannot write '" + path + "'");
  out << text;
  if (!out) throw UserError("write failed for '" + path + "'");
}

}  // namespace

BackendConfig load_backend(const std::string& path) { return backend_from_json(read_json(path)); }

void save_backend(const BackendConfig& b, const std::string& path) {
  write_text(path, backend_to_json(b).dump(1) + "\n");
}

void save_schedule(const PulseSchedule& s, const std::string& path) {
  write_text(path, schedule_to_json(s).dump(1) + "\n");
}

PulseSchedule load_schedule(const std::string& path) { return schedule_from_json(read_json(path)); }

std::string bundled_backend_path() { return std::string(AUGPULSE_DATA_DIR) + "/almaden_mock.json"; }

}  // namespace augpulse
