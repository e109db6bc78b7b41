#include <doctest.h>

#include <atomic>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "oscenv/parallel.hpp"

using namespace oscenv;

TEST_SUITE("parallel") {

TEST_CASE("chunks cover the range exactly once") {
  for (unsigned threads : {1u, 2u, 5u}) {
    const WorkerPool pool(threads);
    CHECK(pool.size() == threads);
    for (std::size_t n : {0ul, 1ul, 7ul, 1000ul}) {
      std::vector<int> hits(n, 0);
      pool.parallel_for(n, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) ++hits[i];
      });
      CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
    }
  }
}

TEST_CASE("serial fallback") {
  std::vector<int> v(10, 0);
  for_each_chunk(nullptr, v.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) v[i] = static_cast<int>(i);
  });
  CHECK(std::accumulate(v.begin(), v.end(), 0) == 45);
}

TEST_CASE("pool is reusable") {
  const WorkerPool pool(3);
  std::atomic<long> total{0};
  for (int r = 0; r < 200; ++r) {
    pool.parallel_for(64, [&](std::size_t b, std::size_t e) { total += static_cast<long>(e - b); });
  }
  CHECK(total == 200 * 64);
}

TEST_CASE("exceptions propagate to the caller") {
  const WorkerPool pool(2);
  CHECK_THROWS_AS(pool.parallel_for(100, [](std::size_t b, std::size_t) {
    if (b > 0) throw std::runtime_error("boom");
  }),
                  std::runtime_error);
  std::atomic<int> after{0};
  pool.parallel_for(10, [&](std::size_t b, std::size_t e) { after += static_cast<int>(e - b); });
  CHECK(after == 10);
}

}
