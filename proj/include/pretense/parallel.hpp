#pragma once

#include <cstddef>
#include <functional>

namespace pretense {

/// Worker threads used inside module operations. Defaults to the
/// PRETENSE_THREADS environment variable, else the hardware concurrency.
unsigned worker_threads();

/// Overrides the worker count for the whole process; 0 restores the default.
void set_worker_threads(unsigned threads);

/// Runs body(chunk) for chunk in [0, chunks). Chunks are handed out to at most
/// worker_threads() threads; callers must make each chunk's output independent
/// of which thread runs it. The first exception thrown is rethrown here.
void parallel_for(std::size_t chunks, const std::function<void(std::size_t)>& body);

} // namespace pretense
