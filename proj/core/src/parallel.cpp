#include "oscenv/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <string>
#include <utility>

namespace oscenv {

namespace {

std::pair<std::size_t, std::size_t> chunk_bounds(std::size_t n, unsigned parts,
                                                 unsigned index) {
  const std::size_t base = n / parts;
  const std::size_t extra = n % parts;
  const std::size_t begin = index * base + std::min<std::size_t>(index, extra);
  const std::size_t len = base + (index < extra ? 1 : 0);
  return {begin, begin + len};
}

}  // namespace

WorkerPool::WorkerPool(unsigned threads) {
  const unsigned n = std::max(1u, threads);
  workers_.reserve(n - 1);
  for (unsigned i = 1; i < n; ++i) {
    workers_.emplace_back([this, i] { worker_loop(i); });
  }
}

WorkerPool::~WorkerPool() {
  {
    std::lock_guard lock(mutex_);
    stop_ = true;
  }
  start_cv_.notify_all();
  for (auto& w : workers_) w.join();
}

void WorkerPool::worker_loop(unsigned index) {
  std::size_t seen = 0;
  for (;;) {
    const std::function<void(std::size_t, std::size_t)>* body = nullptr;
    std::size_t n = 0;
    {
      std::unique_lock lock(mutex_);
      start_cv_.wait(lock, [&] { return stop_ || generation_ != seen; });
      if (stop_) return;
      seen = generation_;
      body = body_;
      n = n_;
    }
    const auto [b, e] = chunk_bounds(n, size(), index);
    std::exception_ptr failure;
    try {
      if (b < e) (*body)(b, e);
    } catch (...) {
      failure = std::current_exception();
    }
    {
      std::lock_guard lock(mutex_);
      if (failure && !error_) error_ = failure;
      if (--pending_ == 0) done_cv_.notify_one();
    }
  }
}

void WorkerPool::parallel_for(
    std::size_t n, const std::function<void(std::size_t, std::size_t)>& body) const {
  if (n == 0) return;
  if (workers_.empty()) {
    body(0, n);
    return;
  }
  {
    std::lock_guard lock(mutex_);
    body_ = &body;
    n_ = n;
    pending_ = workers_.size();
    ++generation_;
  }
  start_cv_.notify_all();
  const auto [b, e] = chunk_bounds(n, size(), 0);
  std::exception_ptr failure;
  try {
    if (b < e) body(b, e);
  } catch (...) {
    failure = std::current_exception();
  }
  std::unique_lock lock(mutex_);
  done_cv_.wait(lock, [&] { return pending_ == 0; });
  body_ = nullptr;
  if (!failure) failure = std::exchange(error_, nullptr);
  error_ = nullptr;
  if (failure) std::rethrow_exception(failure);
}

unsigned WorkerPool::default_thread_count() {
  if (const char* env = std::getenv("OSCENV_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1 && v <= 1024) return static_cast<unsigned>(v);
    } catch (...) {
    }
  }
  return 1;
}

void for_each_chunk(const WorkerPool* pool, std::size_t n,
                    const std::function<void(std::size_t, std::size_t)>& body) {
  if (pool) {
    pool->parallel_for(n, body);
  } else if (n > 0) {
    body(0, n);
  }
}

}  // namespace oscenv
