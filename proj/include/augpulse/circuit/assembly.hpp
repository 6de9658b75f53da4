#pragma once

#include <string>
#include <string_view>

#include "augpulse/circuit/circuit.hpp"

namespace augpulse {

// Assembly dialect, one statement per line:
//
//   program   := header { instr }
//   header    := "qubits" INT
//   instr     := NAME [ "(" NUM { "," NUM } ")" ] qref { "," qref }
//   qref      := "q[" INT "]"
//
// '#' starts a comment running to end of line; blank lines are ignored.
// Gate names are case-insensitive; "cx" is accepted for cnot. Angles are
// decimal degrees. A trailing ';' on an instruction is tolerated.
Circuit parse_assembly(std::string_view text);

// Inverse of parse_assembly. Angles are printed in shortest round-trip form.
std::string to_assembly(const Circuit& c);

std::string format_angle(double deg);

}  // namespace augpulse
