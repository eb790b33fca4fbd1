#pragma once

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>

namespace plane_chroma {

/// Number of worker threads for parallel scans: hardware concurrency, capped
/// by PLANE_CHROMA_THREADS when set to a positive integer.
inline unsigned worker_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("PLANE_CHROMA_THREADS")) {
    try {
      const long cap = std::stol(env);
      if (cap > 0) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
    } catch (...) {
    }
  }
  return n;
}

}  // namespace plane_chroma
