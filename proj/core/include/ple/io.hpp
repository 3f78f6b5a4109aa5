#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace ple {

/// Shortest round-trip decimal representation (std::to_chars), platform
/// independent; the one float format used by every CSV/JSON artifact.
std::string format_double(double x);

/// Join formatted fields with commas and a trailing newline.
std::string csv_row(const std::vector<std::string>& fields);

inline constexpr const char* kToolVersion = "0.1.0";

/// Run fn(i) for i in [0,n) on up to `threads` workers; results must be
/// written into caller-owned slots so output order is deterministic.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace ple
