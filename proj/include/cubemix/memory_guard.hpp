// Refusals for allocations that would not fit, and the one-dense-evolution-
// per-process rule.
#pragma once

#include <atomic>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cubemix {

class MemoryGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bytes the process may still allocate: MemAvailable from /proc/meminfo,
/// capped by CUBEMIX_MEMORY_LIMIT_MB when set.
std::uint64_t available_memory_bytes();

/// Throws MemoryGuardError naming `what` when `bytes` exceeds the budget above.
void require_memory(std::uint64_t bytes, std::string_view what);

/// Held for the lifetime of a dense distribution evolution; a second
/// concurrent lease in the same process throws MemoryGuardError.
class DenseEvolutionLease {
 public:
  explicit DenseEvolutionLease(std::uint64_t bytes);
  ~DenseEvolutionLease();
  DenseEvolutionLease(const DenseEvolutionLease&) = delete;
  DenseEvolutionLease& operator=(const DenseEvolutionLease&) = delete;
};

}  // namespace cubemix
