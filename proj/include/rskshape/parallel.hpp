#pragma once

#include <functional>

namespace rsk::parallel {

// Number of worker threads actually used when `requested` is 0.
int thread_count(int requested = 0);

// Splits [0, total) into fixed-size chunks and processes them on a small
// worker pool. The chunk grid depends only on (total, chunk), never on the
// thread count, so per-chunk accumulators combined in chunk order give
// results independent of scheduling. fn(begin, end, chunk_index).
void for_chunks(long long total, long long chunk, int threads,
                const std::function<void(long long, long long, long long)>& fn);

}  // namespace rsk::parallel
