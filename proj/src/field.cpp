#include "suppvar/field.hpp"

#include <string>
#include <utility>

#include "suppvar/core.hpp"

namespace suppvar {

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

void require_prime(std::uint64_t p) {
  if (p >= (std::uint64_t{1} << 32) || !is_prime(p))
    throw Error(Errc::NotPrime, std::to_string(p) + " is not a prime below 2^32");
}

std::uint32_t mod_pow(std::uint32_t a, std::uint64_t e, std::uint32_t p) {
  std::uint32_t r = 1 % p, b = a % p;
  while (e) {
    if (e & 1) r = mod_mul(r, b, p);
    b = mod_mul(b, b, p);
    e >>= 1;
  }
  return r;
}

std::uint32_t mod_inv(std::uint32_t a, std::uint32_t p) {
  if (a % p == 0) throw Error(Errc::BadInput, "inverse of zero");
  return mod_pow(a, p - 2, p);
}

int dense_rank_mod_p(std::vector<std::uint64_t>& a, int rows, int cols, std::uint32_t p) {
  if (rows == 0 || cols == 0) return 0;
  const std::uint64_t step = static_cast<std::uint64_t>(p - 1) * (p - 1);
  std::uint64_t bound = p - 1;
  std::vector<std::uint32_t> prow(cols);
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int piv = -1;
    for (int r = rank; r < rows; ++r) {
      std::uint64_t& x = a[static_cast<std::size_t>(r) * cols + c];
      x %= p;
      if (x && piv < 0) piv = r;
    }
    if (piv < 0) continue;
    std::uint64_t* pr = &a[static_cast<std::size_t>(piv) * cols];
    if (piv != rank) {
      std::uint64_t* rr = &a[static_cast<std::size_t>(rank) * cols];
      for (int k = c; k < cols; ++k) std::swap(pr[k], rr[k]);
      pr = rr;
    }
    std::uint32_t inv = mod_inv(static_cast<std::uint32_t>(pr[c] % p), p);
    for (int k = c; k < cols; ++k) prow[k] = mod_mul(static_cast<std::uint32_t>(pr[k] % p), inv, p);
    if (bound > ~std::uint64_t{0} - step) {
      for (int r = rank + 1; r < rows; ++r) {
        std::uint64_t* row = &a[static_cast<std::size_t>(r) * cols];
        for (int k = c; k < cols; ++k) row[k] %= p;
      }
      bound = p - 1;
    }
    bound += step;
    for (int r = rank + 1; r < rows; ++r) {
      std::uint64_t* row = &a[static_cast<std::size_t>(r) * cols];
      std::uint32_t f = static_cast<std::uint32_t>(row[c]);
      if (!f) continue;
      f = p - f;
      const std::uint32_t* src = prow.data();
      for (int k = c; k < cols; ++k) row[k] += static_cast<std::uint64_t>(f) * src[k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace suppvar
