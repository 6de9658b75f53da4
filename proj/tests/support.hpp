#pragma once

#include <fstream>
#include <random>
#include <sstream>

#include "augpulse/circuit/assembly.hpp"
#include "augpulse/pulse/backend.hpp"

namespace augpulse::fixtures {

inline const BackendConfig& mock() {
  static const BackendConfig b = load_backend(bundled_backend_path());
  return b;
}

inline const BackendConfig& line5() {
  static const BackendConfig b = load_backend(std::string(AUGPULSE_DATA_DIR) + "/line5_mock.json");
  return b;
}

inline std::string program(const std::string& name) {
  return std::string(AUGPULSE_DATA_DIR) + "/programs/" + name;
}

inline Circuit load_program(const std::string& name) {
  std::ifstream in(program(name));
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_assembly(ss.str());
}

// Random circuits over the gate kinds the lowering understands. Two-qubit
// gates land on neighbouring qubits so a line backend can lower them.
inline Circuit random_circuit(std::mt19937_64& rng, int n, int len) {
  std::uniform_int_distribution<int> pick(0, 11), qd(0, n - 1);
  std::uniform_real_distribution<double> ang(-180.0, 180.0);
  // Multiples of 45 make exact cancellations and merges likely.
  std::uniform_int_distribution<int> grid(-4, 4);
  auto angle = [&] { return (rng() & 1) ? ang(rng) : 45.0 * grid(rng); };
  Circuit c(n);
  for (int i = 0; i < len; ++i) {
    const int q = qd(rng);
    int a = q, b = q + 1;
    if (b >= n) b = q - 1;
    if (n > 1 && (rng() & 1)) std::swap(a, b);
    const int k = n == 1 ? pick(rng) % 6 : pick(rng);
    switch (k) {
      case 0: c.add(gates::x(q)); break;
      case 1: c.add(gates::h(q)); break;
      case 2: c.add(gates::rx(q, angle())); break;
      case 3: c.add(gates::ry(q, angle())); break;
      case 4: c.add(gates::rz(q, angle())); break;
      case 5: c.add(gates::u3(q, angle(), angle(), angle())); break;
      case 6:
      case 7: c.add(gates::cnot(a, b)); break;
      case 8: c.add(gates::zz(a, b, angle())); break;
      case 9: c.add(gates::cr(a, b, angle())); break;
      case 10: c.add(gates::open_cnot(a, b)); break;
      default: c.add(gates::swap(a, b)); break;
    }
  }
  return c;
}

}  // namespace augpulse::fixtures
