#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace topicscope {

// Deterministic cross-platform RNG. std::mt19937_64 output is fixed by the
// standard, but the standard distributions are not, so this class implements
// its own uniform draws:
//   next_below(n): rejection sampling on the top of the 64-bit range
//   next_double(): 53-bit mantissa in [0,1)
//   shuffle():     Fisher-Yates from the back
// Every consumer documents its draw order, so identical seeds give identical
// results on any compiler/platform.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  uint64_t next_u64() { return eng_(); }

  // Uniform in [0, n); n must be > 0.
  uint64_t next_below(uint64_t n) {
    const uint64_t limit = UINT64_MAX - (UINT64_MAX % n);
    uint64_t x = eng_();
    while (x >= limit) x = eng_();
    return x % n;
  }

  size_t next_index(size_t n) { return static_cast<size_t>(next_below(n)); }

  // Uniform in [0, 1), 53 random mantissa bits.
  double next_double() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = next_index(i);
      std::swap(v[i - 1], v[j]);
    }
  }

  // k distinct indices drawn without replacement from [0, n), in draw order.
  std::vector<size_t> sample_indices(size_t n, size_t k) {
    std::vector<size_t> pool(n);
    for (size_t i = 0; i < n; ++i) pool[i] = i;
    if (k > n) k = n;
    std::vector<size_t> out;
    out.reserve(k);
    size_t remaining = n;
    for (size_t i = 0; i < k; ++i) {
      size_t j = next_index(remaining);
      out.push_back(pool[j]);
      pool[j] = pool[remaining - 1];
      --remaining;
    }
    return out;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace topicscope
