#pragma once

#include <condition_variable>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace oscenv {

/// Fixed-size pool of worker threads for data-parallel loops.
///
/// parallel_for splits [0, n) into one contiguous chunk per worker. Results
/// of a loop body that writes disjoint outputs are therefore independent of
/// the worker count; reductions must be done by the caller in a fixed order.
class WorkerPool {
 public:
  explicit WorkerPool(unsigned threads = 1);
  ~WorkerPool();

  WorkerPool(const WorkerPool&) = delete;
  WorkerPool& operator=(const WorkerPool&) = delete;

  [[nodiscard]] unsigned size() const { return static_cast<unsigned>(workers_.size()) + 1; }

  /// Rethrows the first exception raised by any chunk after all chunks finish.
  void parallel_for(std::size_t n,
                    const std::function<void(std::size_t, std::size_t)>& body) const;

  /// Thread count from the OSCENV_THREADS environment variable, else 1.
  static unsigned default_thread_count();

 private:
  void worker_loop(unsigned index);

  std::vector<std::thread> workers_;
  mutable std::mutex mutex_;
  mutable std::condition_variable start_cv_;
  mutable std::condition_variable done_cv_;
  mutable const std::function<void(std::size_t, std::size_t)>* body_ = nullptr;
  mutable std::size_t n_ = 0;
  mutable std::size_t generation_ = 0;
  mutable std::size_t pending_ = 0;
  mutable std::exception_ptr error_;
  bool stop_ = false;
};

/// Runs body over [0, n) on `pool`, or serially when pool is null.
void for_each_chunk(const WorkerPool* pool, std::size_t n,
                    const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace oscenv
