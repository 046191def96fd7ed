#include "mobius/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace mobius::parallel {

namespace {
std::atomic<unsigned> g_threads{0};
}

void set_thread_count(unsigned threads) { g_threads = threads; }

unsigned thread_count() {
  unsigned t = g_threads;
  if (t == 0) t = std::max(1u, std::thread::hardware_concurrency());
  return t;
}

unsigned chunk_count(std::uint64_t count, std::uint64_t min_grain) {
  if (count == 0) return 0;
  const std::uint64_t by_grain = std::max<std::uint64_t>(1, count / std::max<std::uint64_t>(1, min_grain));
  return static_cast<unsigned>(std::min<std::uint64_t>(thread_count(), by_grain));
}

void for_chunks(std::uint64_t count,
                const std::function<void(unsigned, std::uint64_t, std::uint64_t)>& body,
                std::uint64_t min_grain) {
  const unsigned chunks = chunk_count(count, min_grain);
  if (chunks == 0) return;
  auto bounds = [&](unsigned c) { return count * c / chunks; };
  if (chunks == 1) {
    body(0, 0, count);
    return;
  }
  std::vector<std::exception_ptr> errors(chunks);
  {
    std::vector<std::jthread> workers;
    workers.reserve(chunks - 1);
    for (unsigned c = 1; c < chunks; ++c) {
      workers.emplace_back([&, c] {
        try {
          body(c, bounds(c), bounds(c + 1));
        } catch (...) {
          errors[c] = std::current_exception();
        }
      });
    }
    try {
      body(0, 0, bounds(1));
    } catch (...) {
      errors[0] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace mobius::parallel
