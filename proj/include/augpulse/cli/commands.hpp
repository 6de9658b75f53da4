#pragma once

#include <iosfwd>

namespace augpulse {

// Entry point of the `augpulse` tool. Returns 0 on success, 1 for bad input
// (unknown flags, unreadable files, schema or parse errors) and 2 when an
// internal check fails.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace augpulse
