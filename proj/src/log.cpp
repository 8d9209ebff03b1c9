#include "kendall3d/log.hpp"

#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include <atomic>
#include <cstdlib>
#include <optional>
#include <string>

namespace kendall3d::log {
namespace {

std::optional<Level> parse_level(const char* text) {
  if (text == nullptr) return std::nullopt;
  const std::string v(text);
  if (v == "error") return Level::Error;
  if (v == "warn") return Level::Warn;
  if (v == "info") return Level::Info;
  if (v == "debug") return Level::Debug;
  return std::nullopt;
}

spdlog::level::level_enum to_spdlog(Level l) {
  switch (l) {
    case Level::Error: return spdlog::level::err;
    case Level::Warn: return spdlog::level::warn;
    case Level::Info: return spdlog::level::info;
    case Level::Debug: return spdlog::level::debug;
  }
  return spdlog::level::warn;
}

std::atomic<Level> g_level{parse_level(std::getenv("KENDALL3D_LOG")).value_or(Level::Warn)};

spdlog::logger& sink() {
  static std::shared_ptr<spdlog::logger> logger = [] {
    auto l = std::make_shared<spdlog::logger>(
        "kendall3d", std::make_shared<spdlog::sinks::stderr_sink_mt>());
    l->set_pattern("[kendall3d %l] %v");
    l->set_level(spdlog::level::trace);
    return l;
  }();
  return *logger;
}

void emit(Level l, std::string_view message) {
  if (static_cast<int>(l) > static_cast<int>(g_level.load(std::memory_order_relaxed))) return;
  sink().log(to_spdlog(l), "{}", message);
}

}  // namespace

void set_level(Level l) { g_level.store(l, std::memory_order_relaxed); }
Level level() noexcept { return g_level.load(std::memory_order_relaxed); }

void configure_from_env() {
  if (auto l = parse_level(std::getenv("KENDALL3D_LOG"))) set_level(*l);
}

void error(std::string_view m) { emit(Level::Error, m); }
void warn(std::string_view m) { emit(Level::Warn, m); }
void info(std::string_view m) { emit(Level::Info, m); }
void debug(std::string_view m) { emit(Level::Debug, m); }

}  // namespace kendall3d::log
