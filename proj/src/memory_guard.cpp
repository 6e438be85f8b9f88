#include "cubemix/memory_guard.hpp"

#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

namespace cubemix {
namespace {

std::atomic<bool> g_dense_active{false};

std::string megabytes(std::uint64_t bytes) { return std::to_string(bytes >> 20) + " MB"; }

}  // namespace

std::uint64_t available_memory_bytes() {
  std::uint64_t avail = std::numeric_limits<std::uint64_t>::max();
  std::ifstream meminfo("/proc/meminfo");
  std::string line;
  while (std::getline(meminfo, line)) {
    if (line.rfind("MemAvailable:", 0) == 0) {
      std::istringstream in(line.substr(13));
      std::uint64_t kb = 0;
      if (in >> kb) avail = kb * 1024;
      break;
    }
  }
  if (const char* limit = std::getenv("CUBEMIX_MEMORY_LIMIT_MB")) {
    const std::uint64_t cap = std::strtoull(limit, nullptr, 10) << 20;
    if (cap < avail) avail = cap;
  }
  return avail;
}

void require_memory(std::uint64_t bytes, std::string_view what) {
  const std::uint64_t avail = available_memory_bytes();
  if (bytes > avail)
    throw MemoryGuardError(std::string(what) + " needs " + megabytes(bytes) + " but only " + megabytes(avail) +
                           " is available");
}

DenseEvolutionLease::DenseEvolutionLease(std::uint64_t bytes) {
  bool expected = false;
  if (!g_dense_active.compare_exchange_strong(expected, true))
    throw MemoryGuardError("a dense distribution evolution is already running in this process");
  try {
    require_memory(bytes, "dense distribution evolution");
  } catch (...) {
    g_dense_active.store(false);
    throw;
  }
}

DenseEvolutionLease::~DenseEvolutionLease() { g_dense_active.store(false); }

}  // namespace cubemix
