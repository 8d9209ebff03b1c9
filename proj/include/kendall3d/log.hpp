// log.hpp — diagnostics on standard error. The level comes from the
// KENDALL3D_LOG environment variable (error, warn, info, debug; default warn).

#pragma once

#include <string_view>

namespace kendall3d::log {

enum class Level { Error, Warn, Info, Debug };

void set_level(Level level);
Level level() noexcept;
/// Re-reads KENDALL3D_LOG; unknown values leave the level unchanged.
void configure_from_env();

void error(std::string_view message);
void warn(std::string_view message);
void info(std::string_view message);
void debug(std::string_view message);

}  // namespace kendall3d::log
