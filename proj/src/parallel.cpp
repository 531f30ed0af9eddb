#include "rskshape/parallel.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace rsk::parallel {

int thread_count(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void for_chunks(long long total, long long chunk, int threads,
                const std::function<void(long long, long long, long long)>& fn) {
  if (total <= 0) return;
  if (chunk < 1) chunk = 1;
  const long long nchunks = (total + chunk - 1) / chunk;
  const int workers = static_cast<int>(
      std::min<long long>(thread_count(threads), nchunks));

  if (workers <= 1) {
    for (long long ci = 0; ci < nchunks; ++ci)
      fn(ci * chunk, std::min(total, (ci + 1) * chunk), ci);
    return;
  }

  std::atomic<long long> next{0};
  std::mutex err_mu;
  std::exception_ptr err;
  auto work = [&] {
    while (true) {
      const long long ci = next.fetch_add(1);
      if (ci >= nchunks) break;
      try {
        fn(ci * chunk, std::min(total, (ci + 1) * chunk), ci);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (!err) err = std::current_exception();
        break;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers) - 1);
  for (int i = 1; i < workers; ++i) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace rsk::parallel
