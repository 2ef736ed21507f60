#pragma once

#include <iosfwd>

namespace pkt::cli {

/// Exit codes: 0 success, 1 bad arguments or inconsistent inputs (and a failed
/// gradient check), 2 I/O failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitIo = 2;

/// Entry point for the `pkt` tool: transfer, embed, eval, qmi, gradcheck.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pkt::cli
