#pragma once

#include <string_view>

namespace pkt::log {

enum class Level { Off, Info, Debug };

/// Current verbosity. Initialized from PKT_LOG (off|info|debug, default off).
Level level();
void set_level(Level level);

/// Messages go to stderr.
void info(std::string_view message);
void debug(std::string_view message);
void error(std::string_view message);

}  // namespace pkt::log
