#include <atomic>
#include <cstdlib>
#include <cstring>

#include "llg/core/error.hpp"
#include "llg/simd/kernels.hpp"

namespace llg::simd {
namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Level initial_level() {
  Level level = best_supported_level();
  if (const char* env = std::getenv("LLG_SIMD")) {
    if (std::strcmp(env, "scalar") == 0) level = Level::scalar;
    // "avx2" only takes effect when the CPU has it.
  }
  return level;
}

std::atomic<Level>& current() {
  static std::atomic<Level> level{initial_level()};
  return level;
}

}  // namespace

bool supported(Level level) {
  switch (level) {
    case Level::scalar:
      return true;
    case Level::avx2:
      return cpu_has_avx2();
  }
  return false;
}

Level best_supported_level() { return supported(Level::avx2) ? Level::avx2 : Level::scalar; }

Level active_level() { return current().load(std::memory_order_relaxed); }

void set_active_level(Level level) {
  if (!supported(level)) throw ConfigError(std::string("SIMD level not supported: ") + level_name(level));
  current().store(level, std::memory_order_relaxed);
}

const char* level_name(Level level) {
  switch (level) {
    case Level::scalar:
      return "scalar";
    case Level::avx2:
      return "avx2";
  }
  return "unknown";
}

const KernelTable& kernels(Level level) {
#if defined(__x86_64__) || defined(__i386__)
  if (level == Level::avx2) return detail::avx2_table;
#endif
  (void)level;
  return detail::scalar_table;
}

const KernelTable& kernels() { return kernels(active_level()); }

}  // namespace llg::simd
