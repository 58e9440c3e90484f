#include "negabeta/config.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

namespace negabeta {

long step_budget(long fallback) {
  const char* env = std::getenv("NEGABETA_STEP_BUDGET");
  if (env == nullptr) return fallback;
  long value = 0;
  const char* end = env + std::strlen(env);
  auto [ptr, ec] = std::from_chars(env, end, value);
  if (ec != std::errc() || ptr != end || value <= 0) return fallback;
  return value;
}

}  // namespace negabeta
