#pragma once

#include <iosfwd>

namespace orlicz {

/// Exit codes of the orlicz_lab front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;  // a verdict failed or a computation was refused
inline constexpr int kExitUsage = 2;

/// Parses argv and runs the subcommand: young {eval|inverse|complement|delta2|triple},
/// norm, gauge, boyd, bm, verify. One summary line per result goes to `out`,
/// diagnostics to `err`; artifacts go to the --out path.
int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace orlicz
