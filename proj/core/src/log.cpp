#include "pkt/log.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

namespace pkt::log {

namespace {

Level level_from_env() {
  const char* env = std::getenv("PKT_LOG");
  if (env == nullptr) return Level::Off;
  const std::string v(env);
  if (v == "debug") return Level::Debug;
  if (v == "info") return Level::Info;
  return Level::Off;
}

std::atomic<Level>& current() {
  static std::atomic<Level> lvl{level_from_env()};
  return lvl;
}

spdlog::logger& sink() {
  static auto logger = [] {
    auto l = spdlog::stderr_logger_mt("pkt");
    l->set_pattern("[pkt %l] %v");
    l->set_level(spdlog::level::trace);
    return l;
  }();
  return *logger;
}

}  // namespace

Level level() { return current().load(); }
void set_level(Level lvl) { current().store(lvl); }

void info(std::string_view message) {
  if (level() != Level::Off) sink().info(message);
}

void debug(std::string_view message) {
  if (level() == Level::Debug) sink().debug(message);
}

void error(std::string_view message) { sink().error(message); }

}  // namespace pkt::log
