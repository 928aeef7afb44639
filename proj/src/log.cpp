#include "lasertherm/log.hpp"

#include <iostream>
#include <stdexcept>
#include <string>

namespace lts::log {

namespace {
Level g_level = Level::Info;

std::string_view tag(Level level) {
  switch (level) {
    case Level::Debug: return "debug";
    case Level::Info: return "info";
    case Level::Warn: return "warn";
    case Level::Error: return "error";
    default: return "";
  }
}
}  // namespace

void set_level(Level level) { g_level = level; }

Level level() { return g_level; }

Level level_from_name(std::string_view name) {
  if (name == "debug") return Level::Debug;
  if (name == "info") return Level::Info;
  if (name == "warn") return Level::Warn;
  if (name == "error") return Level::Error;
  if (name == "off") return Level::Off;
  throw std::invalid_argument("unknown log level '" + std::string(name) +
                              "' (expected debug, info, warn, error, off)");
}

void write(Level level, std::string_view message) {
  if (level < g_level || g_level == Level::Off) return;
  std::cerr << "[" << tag(level) << "] " << message << "\n";
}

}  // namespace lts::log
