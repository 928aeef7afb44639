#pragma once

#include <sstream>
#include <string_view>

namespace lts::log {

enum class Level { Debug = 0, Info = 1, Warn = 2, Error = 3, Off = 4 };

void set_level(Level level);
Level level();
Level level_from_name(std::string_view name);

/// Writes one line to standard error if `level` passes the global filter.
void write(Level level, std::string_view message);

namespace detail {
template <class... Args>
std::string concat(Args&&... args) {
  std::ostringstream out;
  (out << ... << args);
  return out.str();
}
}  // namespace detail

template <class... Args>
void debug(Args&&... args) {
  write(Level::Debug, detail::concat(std::forward<Args>(args)...));
}
template <class... Args>
void info(Args&&... args) {
  write(Level::Info, detail::concat(std::forward<Args>(args)...));
}
template <class... Args>
void warn(Args&&... args) {
  write(Level::Warn, detail::concat(std::forward<Args>(args)...));
}
template <class... Args>
void error(Args&&... args) {
  write(Level::Error, detail::concat(std::forward<Args>(args)...));
}

}  // namespace lts::log
