#pragma once

#include <sstream>
#include <string>

namespace almfast {

enum class LogLevel { off = 0, error = 1, info = 2, debug = 3 };

/// Level parsed once from the ALMFAST_LOG environment variable
/// (off|error|info|debug, default error).
LogLevel log_level();

void log_message(LogLevel level, const std::string& message);

template <class... Args>
void log_info(const Args&... args) {
  if (log_level() < LogLevel::info) return;
  std::ostringstream os;
  (os << ... << args);
  log_message(LogLevel::info, os.str());
}

template <class... Args>
void log_debug(const Args&... args) {
  if (log_level() < LogLevel::debug) return;
  std::ostringstream os;
  (os << ... << args);
  log_message(LogLevel::debug, os.str());
}

template <class... Args>
void log_error(const Args&... args) {
  if (log_level() < LogLevel::error) return;
  std::ostringstream os;
  (os << ... << args);
  log_message(LogLevel::error, os.str());
}

}  // namespace almfast
