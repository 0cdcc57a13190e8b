// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The affwave Authors

#pragma once

#include <cstddef>
#include <functional>

namespace affwave {

/// Environment variable consulted when no explicit thread count is given.
inline constexpr const char* kThreadsEnvVar = "AFFWAVE_THREADS";

/// Resolves a requested worker count: a positive request wins, otherwise
/// AFFWAVE_THREADS, otherwise std::thread::hardware_concurrency().
unsigned resolve_threads(unsigned requested);

/// Runs body(i) for i in [0, n) on up to `threads` workers using static
/// contiguous chunks. body must only write state owned by index i.
/// The first exception raised by any worker is rethrown on the caller.
void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace affwave
