#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sclab {

// Command-line front door. Returns the process exit code: 0 on success,
// 2 when an experiment ran but a statistical gate failed, 1 on any error
// (unknown subcommand, bad flags, unreadable config, runtime failure).
int dispatch(int argc, const char* const* argv);

// Same dispatcher with injectable streams, for in-process testing. args are
// the tokens after the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sclab
