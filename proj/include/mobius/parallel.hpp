#pragma once

#include <cstdint>
#include <functional>

namespace mobius::parallel {

// 0 selects std::thread::hardware_concurrency().
void set_thread_count(unsigned threads);
unsigned thread_count();

// Splits [0, count) into contiguous chunks and runs body(chunk, begin, end)
// on each, one worker per chunk. Chunk boundaries depend only on count and
// the configured thread count; callers merge per-chunk partials in chunk
// order so results are identical for any worker count.
unsigned chunk_count(std::uint64_t count, std::uint64_t min_grain = 1 << 14);
void for_chunks(std::uint64_t count,
                const std::function<void(unsigned, std::uint64_t, std::uint64_t)>& body,
                std::uint64_t min_grain = 1 << 14);

}  // namespace mobius::parallel
