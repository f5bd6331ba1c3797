#include "stoptime/config.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

#include "stoptime/errors.hpp"

namespace stoptime {
namespace {

std::size_t initial_depth_max() {
  const char* env = std::getenv("STOPTIME_DEPTH_MAX");
  if (env == nullptr || *env == '\0') return kDefaultDepthMax;
  char* end = nullptr;
  const unsigned long v = std::strtoul(env, &end, 10);
  if (*end != '\0' || v == 0 || v > 62) {
    throw ConfigError(std::string("STOPTIME_DEPTH_MAX must be in 1..62, got ") + env);
  }
  return v;
}

std::atomic<std::size_t>& bound() {
  static std::atomic<std::size_t> value{initial_depth_max()};
  return value;
}

}  // namespace

std::size_t depth_max() { return bound().load(); }

void set_depth_max(std::size_t b) {
  if (b == 0 || b > 62) throw ConfigError("depth bound must be in 1..62");
  bound().store(b);
}

void check_depth_bound(std::size_t depth) {
  if (depth > depth_max()) {
    throw DepthExceeded("depth " + std::to_string(depth) + " exceeds bound " +
                        std::to_string(depth_max()));
  }
}

void check_vertex(const BitString& v, std::size_t depth) {
  check_depth_bound(depth);
  if (v.size() > depth) {
    throw DepthExceeded("vertex \"" + v.str() + "\" is deeper than " + std::to_string(depth));
  }
}

}  // namespace stoptime
