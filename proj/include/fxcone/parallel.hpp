#pragma once

// Deterministic chunked parallel loops. The chunk partition depends only on
// the problem size, never on the worker count, so per-chunk partial results
// merged in chunk order give identical output for any number of workers.

#include <cstddef>
#include <functional>

namespace fxcone {

// Worker count from FXCONE_WORKERS, else std::thread::hardware_concurrency().
unsigned worker_count();
// Overrides the environment for the current process (0 restores the default).
void set_worker_count(unsigned workers);

// Runs body(chunk, begin, end) for chunks of [0, n). Calls made from inside a
// worker run serially on that worker.
void parallel_chunks(std::size_t n, std::size_t chunks,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& body);

}  // namespace fxcone
