#pragma once

#include <cstdint>
#include <vector>

namespace suppvar {

bool is_prime(std::uint64_t p);
void require_prime(std::uint64_t p);

inline std::uint32_t mod_mul(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p);
}
std::uint32_t mod_pow(std::uint32_t a, std::uint64_t e, std::uint32_t p);
std::uint32_t mod_inv(std::uint32_t a, std::uint32_t p);
inline std::uint32_t mod_neg(std::uint32_t a, std::uint32_t p) { return a ? p - a : 0; }
inline std::uint32_t mod_from_signed(long long v, std::uint32_t p) {
  long long r = v % static_cast<long long>(p);
  return static_cast<std::uint32_t>(r < 0 ? r + p : r);
}

// Rank over F_p of a dense row-major matrix; the buffer is destroyed. Entries must be < p.
int dense_rank_mod_p(std::vector<std::uint64_t>& a, int rows, int cols, std::uint32_t p);

// Deterministic SplitMix64 stream; reproducible across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : s_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (s_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  // Uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x;
    do x = next();
    while (x >= limit);
    return x % bound;
  }

 private:
  std::uint64_t s_;
};

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  Rng r(a * 0x100000001B3ULL ^ (b + 0x632BE59BD9B4E019ULL));
  r.next();
  return r.next();
}

}  // namespace suppvar
