#include "almfast/logging.hpp"

#include <cstdlib>
#include <iostream>
#include <mutex>

namespace almfast {

namespace {

LogLevel parse_level() {
  const char* env = std::getenv("ALMFAST_LOG");
  if (env == nullptr) return LogLevel::error;
  const std::string value(env);
  if (value == "off") return LogLevel::off;
  if (value == "error") return LogLevel::error;
  if (value == "info") return LogLevel::info;
  if (value == "debug") return LogLevel::debug;
  return LogLevel::error;
}

std::mutex& log_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

LogLevel log_level() {
  static const LogLevel level = parse_level();
  return level;
}

void log_message(LogLevel level, const std::string& message) {
  static const char* names[] = {"off", "error", "info", "debug"};
  std::lock_guard<std::mutex> guard(log_mutex());
  std::cerr << "[almfast/" << names[static_cast<int>(level)] << "] "
            << message << "\n";
}

}  // namespace almfast
