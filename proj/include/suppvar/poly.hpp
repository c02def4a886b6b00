#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "suppvar/core.hpp"

namespace suppvar {

using Exponents = std::vector<std::uint32_t>;  // length n, entry k-1 is the exponent of chi_k

// Sparse polynomial in chi_1..chi_n with int64 coefficients; arithmetic throws CoefficientOverflow.
class Poly {
 public:
  explicit Poly(int n = 0) : n_(n) {}
  static Poly constant(int n, long long c);
  static Poly variable(int n, int i);
  static Poly monomial(int n, const Exponents& e, long long c = 1);

  int n() const { return n_; }
  const std::map<Exponents, long long>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const;
  bool operator==(const Poly& o) const { return n_ == o.n_ && terms_ == o.terms_; }

  // Value at a point over F_p.
  std::uint32_t eval(const std::vector<std::uint32_t>& a, std::uint32_t p) const;

  // e.g. "x1*x3*x5 + x2*x4*x6", "-2*x2^4".
  std::string to_string() const;

  void add_term(const Exponents& e, long long c);

 private:
  int n_;
  std::map<Exponents, long long> terms_;
};

std::string monomial_string(const Exponents& e);
Mask exponent_support(const Exponents& e);

// u + sign*v with u = chi^first, v = chi^second square-free and coprime.
struct Binomial {
  Mask first = 0;
  Mask second = 0;
  int sign = 1;
  bool operator==(const Binomial&) const = default;
  auto operator<=>(const Binomial&) const = default;
};

// Canonical orientation: first < second, with the sign fixed so the set of zeros is unchanged.
Binomial canonical(Binomial b);
std::string binomial_string(const Binomial& b);

// Determinant shape: coeff * monomial * binomial^power (power 0 means pure monomial).
struct SupportPolynomial {
  enum class Kind { Monomial, ScaledPower, GeneralSum };
  Kind kind = Kind::GeneralSum;
  long long coeff = 0;
  Exponents monomial;
  Binomial binomial;
  int power = 0;
  Poly full;

  // Support of the monomial factor.
  Mask monomial_support() const { return exponent_support(monomial); }
  std::string to_string() const;
};

SupportPolynomial classify_poly(const Poly& P);

}  // namespace suppvar
