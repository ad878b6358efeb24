#include "qcost/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace qcost {

int worker_count(int requested) {
  int n = requested;
  if (n <= 0) {
    n = static_cast<int>(std::thread::hardware_concurrency());
    if (n <= 0) n = 1;
  }
  if (const char* env = std::getenv("QCOST_THREADS")) {
    try {
      const int cap = std::stoi(env);
      if (cap >= 1 && cap < n) n = cap;
    } catch (...) {
      // Unparseable value: ignore and keep the computed count.
    }
  }
  return n < 1 ? 1 : n;
}

void parallel_chunks(std::size_t n_chunks, const std::function<void(std::size_t)>& work,
                     int threads) {
  if (n_chunks == 0) return;
  const std::size_t n_workers =
      std::min<std::size_t>(static_cast<std::size_t>(worker_count(threads)), n_chunks);

  if (n_workers == 1) {
    for (std::size_t c = 0; c < n_chunks; ++c) work(c);
    return;
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t c = next.fetch_add(1);
      if (c >= n_chunks) return;
      work(c);
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(n_workers - 1);
  for (std::size_t i = 1; i < n_workers; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
}

}  // namespace qcost
