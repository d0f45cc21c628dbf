#include <doctest.h>

#include <algorithm>
#include <set>

#include "topicscope/rng.hpp"

using namespace topicscope;

TEST_CASE("rng determinism and ranges") {
  Rng a(123), b(123);
  for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());

  Rng c(7);
  for (int i = 0; i < 10000; ++i) {
    CHECK(c.next_below(13) < 13);
    double d = c.next_double();
    CHECK(d >= 0.0);
    CHECK(d < 1.0);
  }
}

TEST_CASE("next_below hits every residue") {
  Rng r(42);
  std::set<uint64_t> seen;
  for (int i = 0; i < 5000; ++i) seen.insert(r.next_below(7));
  CHECK(seen == std::set<uint64_t>{0, 1, 2, 3, 4, 5, 6});
}

TEST_CASE("shuffle is a permutation and seed-stable") {
  std::vector<int> v{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  std::vector<int> w = v;
  Rng a(99), b(99);
  a.shuffle(v);
  b.shuffle(w);
  CHECK(v == w);
  std::vector<int> sorted_v = v;
  std::sort(sorted_v.begin(), sorted_v.end());
  CHECK(sorted_v == std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
}

TEST_CASE("sample_indices draws k distinct values in range") {
  Rng r(5);
  auto s = r.sample_indices(100, 30);
  CHECK(s.size() == 30);
  std::set<size_t> uniq(s.begin(), s.end());
  CHECK(uniq.size() == 30);
  for (size_t x : s) CHECK(x < 100);

  auto all = Rng(5).sample_indices(10, 10);
  std::set<size_t> u2(all.begin(), all.end());
  CHECK(u2.size() == 10);
}
