#include "suppvar/poly.hpp"

#include <algorithm>
#include <cstdlib>

#include "suppvar/field.hpp"

namespace suppvar {

namespace {

long long checked_add(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(Errc::CoefficientOverflow, "polynomial coefficient overflow");
  return r;
}

long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(Errc::CoefficientOverflow, "polynomial coefficient overflow");
  return r;
}

Exponents mask_exponents(int n, Mask m) {
  Exponents e(n, 0);
  for (int i : members(m)) e[i - 1] = 1;
  return e;
}

}  // namespace

Poly Poly::constant(int n, long long c) {
  Poly P(n);
  P.add_term(Exponents(n, 0), c);
  return P;
}

Poly Poly::variable(int n, int i) {
  Exponents e(n, 0);
  e.at(i - 1) = 1;
  return monomial(n, e, 1);
}

Poly Poly::monomial(int n, const Exponents& e, long long c) {
  if (static_cast<int>(e.size()) != n) throw Error(Errc::DimensionMismatch, "exponent vector length");
  Poly P(n);
  P.add_term(e, c);
  return P;
}

void Poly::add_term(const Exponents& e, long long c) {
  if (c == 0) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
    return;
  }
  it->second = checked_add(it->second, c);
  if (it->second == 0) terms_.erase(it);
}

Poly Poly::operator+(const Poly& o) const {
  if (n_ != o.n_) throw Error(Errc::DimensionMismatch, "polynomials over different n");
  Poly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

Poly Poly::operator-() const {
  Poly r(n_);
  for (const auto& [e, c] : terms_) r.add_term(e, checked_mul(c, -1));
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  if (n_ != o.n_) throw Error(Errc::DimensionMismatch, "polynomials over different n");
  Poly r(n_);
  Exponents e(n_);
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) {
      for (int k = 0; k < n_; ++k) e[k] = e1[k] + e2[k];
      r.add_term(e, checked_mul(c1, c2));
    }
  return r;
}

std::uint32_t Poly::eval(const std::vector<std::uint32_t>& a, std::uint32_t p) const {
  if (static_cast<int>(a.size()) != n_) throw Error(Errc::DimensionMismatch, "point length differs from n");
  std::uint64_t sum = 0;
  for (const auto& [e, c] : terms_) {
    std::uint32_t t = mod_from_signed(c, p);
    for (int k = 0; k < n_ && t; ++k)
      if (e[k]) t = mod_mul(t, mod_pow(a[k] % p, e[k], p), p);
    sum = (sum + t) % p;
  }
  return static_cast<std::uint32_t>(sum);
}

std::string monomial_string(const Exponents& e) {
  std::string s;
  for (std::size_t k = 0; k < e.size(); ++k) {
    if (!e[k]) continue;
    if (!s.empty()) s += "*";
    s += "x" + std::to_string(k + 1);
    if (e[k] > 1) s += "^" + std::to_string(e[k]);
  }
  return s.empty() ? "1" : s;
}

Mask exponent_support(const Exponents& e) {
  Mask m = 0;
  for (std::size_t k = 0; k < e.size(); ++k)
    if (e[k]) m |= bit(static_cast<int>(k) + 1);
  return m;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  // Highest-degree terms first, lexicographically descending within a degree.
  std::vector<std::pair<Exponents, long long>> v(terms_.begin(), terms_.end());
  std::stable_sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  for (const auto& [e, c] : v) {
    bool unit = std::all_of(e.begin(), e.end(), [](auto x) { return x == 0; });
    long long mag = c < 0 ? -c : c;
    if (s.empty()) s += c < 0 ? "-" : "";
    else s += c < 0 ? " - " : " + ";
    if (unit) s += std::to_string(mag);
    else {
      if (mag != 1) s += std::to_string(mag) + "*";
      s += monomial_string(e);
    }
  }
  return s;
}

Binomial canonical(Binomial b) {
  if (b.first > b.second) std::swap(b.first, b.second);
  return b;
}

std::string binomial_string(const Binomial& b) {
  auto mono = [](Mask m) {
    std::string s;
    for (int i : members(m)) s += (s.empty() ? "x" : "*x") + std::to_string(i);
    return s.empty() ? std::string("1") : s;
  };
  return mono(b.first) + (b.sign < 0 ? " - " : " + ") + mono(b.second);
}

std::string SupportPolynomial::to_string() const {
  switch (kind) {
    case Kind::Monomial: return (coeff < 0 ? "-" : "") + (std::llabs(coeff) != 1 ? std::to_string(std::llabs(coeff)) + "*" : "") + monomial_string(monomial);
    case Kind::ScaledPower: {
      std::string s = coeff < 0 ? "-" : "";
      if (std::llabs(coeff) != 1) s += std::to_string(std::llabs(coeff)) + "*";
      if (exponent_support(monomial)) s += monomial_string(monomial) + "*";
      s += "(" + binomial_string(binomial) + ")";
      if (power > 1) s += "^" + std::to_string(power);
      return s;
    }
    case Kind::GeneralSum: return full.to_string();
  }
  return full.to_string();
}

SupportPolynomial classify_poly(const Poly& P) {
  SupportPolynomial S;
  S.full = P;
  const int n = P.n();
  if (P.is_zero()) return S;

  Exponents g = P.terms().begin()->first;
  for (const auto& [e, c] : P.terms())
    for (int k = 0; k < n; ++k) g[k] = std::min(g[k], e[k]);
  std::vector<std::pair<Exponents, long long>> rest;
  for (const auto& [e, c] : P.terms()) {
    Exponents r(n);
    for (int k = 0; k < n; ++k) r[k] = e[k] - g[k];
    rest.emplace_back(r, c);
  }
  S.monomial = g;
  if (rest.size() == 1) {
    S.kind = SupportPolynomial::Kind::Monomial;
    S.coeff = rest[0].second;
    return S;
  }

  const int k = static_cast<int>(rest.size()) - 1;
  auto root = [&](const Exponents& e) -> std::optional<Mask> {
    Mask m = 0;
    for (int j = 0; j < n; ++j) {
      if (e[j] % k) return std::nullopt;
      if (e[j] / k > 1) return std::nullopt;
      if (e[j]) m |= bit(j + 1);
    }
    return m;
  };
  for (std::size_t x = 0; x < rest.size(); ++x)
    for (std::size_t y = x + 1; y < rest.size(); ++y) {
      auto u = root(rest[x].first), v = root(rest[y].first);
      if (!u || !v || (*u & *v) || !*u || !*v) continue;
      long long c = rest[x].second;
      for (int sign : {1, -1}) {
        // c * (u + sign v)^k
        Poly base = Poly::monomial(n, mask_exponents(n, *u)) +
                    Poly::monomial(n, mask_exponents(n, *v), sign);
        Poly pw = Poly::constant(n, c);
        try {
          for (int t = 0; t < k; ++t) pw = pw * base;
        } catch (const Error&) {
          continue;
        }
        Poly target(n);
        for (const auto& [e, cc] : rest) target.add_term(e, cc);
        if (pw == target) {
          S.kind = SupportPolynomial::Kind::ScaledPower;
          S.coeff = c;
          S.binomial = canonical({*u, *v, sign});
          S.power = k;
          return S;
        }
      }
    }
  return S;
}

}  // namespace suppvar
