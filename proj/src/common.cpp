#include "robustflow/common.hpp"

#include <cstdlib>
#include <cstring>
#include <iostream>

namespace robustflow {

std::int64_t binomial_capped(int n, int k, std::int64_t cap) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long double c = 1.0L;
  for (int i = 1; i <= k; ++i) {
    c = c * static_cast<long double>(n - k + i) / static_cast<long double>(i);
    if (c > static_cast<long double>(cap)) return cap;
  }
  return static_cast<std::int64_t>(c + 0.5L);
}

int log_level() {
  static const int level = [] {
    const char* env = std::getenv("ROBUSTFLOW_LOG");
    if (env == nullptr || *env == '\0') return 0;
    if (std::strcmp(env, "debug") == 0 || std::strcmp(env, "2") == 0) return 2;
    if (std::strcmp(env, "info") == 0 || std::strcmp(env, "1") == 0) return 1;
    return 0;
  }();
  return level;
}

void log_info(const std::string& msg) {
  if (log_level() >= 1) std::cerr << "[robustflow] " << msg << '\n';
}

void log_debug(const std::string& msg) {
  if (log_level() >= 2) std::cerr << "[robustflow] " << msg << '\n';
}

}  // namespace robustflow
