#include "suppvar/ideal_enum.hpp"

#include <algorithm>

namespace suppvar {

namespace {

// Square-free monomial over the faces of K_G, one bit per face index.
struct FaceSet {
  std::vector<std::uint64_t> w;
  explicit FaceSet(std::size_t words = 0) : w(words, 0) {}
  void set(std::size_t k) { w[k >> 6] |= std::uint64_t{1} << (k & 63); }
  bool test(std::size_t k) const { return (w[k >> 6] >> (k & 63)) & 1u; }
  FaceSet operator|(const FaceSet& o) const {
    FaceSet r(w.size());
    for (std::size_t k = 0; k < w.size(); ++k) r.w[k] = w[k] | o.w[k];
    return r;
  }
  bool subset_of(const FaceSet& o) const {
    for (std::size_t k = 0; k < w.size(); ++k)
      if (w[k] & ~o.w[k]) return false;
    return true;
  }
  int count() const {
    int c = 0;
    for (auto x : w) c += std::popcount(x);
    return c;
  }
  bool operator==(const FaceSet&) const = default;
  bool operator<(const FaceSet& o) const { return w < o.w; }
};

std::vector<FaceSet> minimalize(std::vector<FaceSet> v) {
  std::sort(v.begin(), v.end(), [](const FaceSet& a, const FaceSet& b) {
    int ca = a.count(), cb = b.count();
    return ca != cb ? ca < cb : a < b;
  });
  std::vector<FaceSet> out;
  for (auto& s : v) {
    bool dominated = false;
    for (const auto& t : out)
      if (t.subset_of(s)) {
        dominated = true;
        break;
      }
    if (!dominated) out.push_back(std::move(s));
  }
  return out;
}

// Generators of a product-free intersection: lcm of one generator from each variable prime.
std::vector<FaceSet> intersect(const std::vector<FaceSet>& a, const std::vector<FaceSet>& b) {
  std::vector<FaceSet> out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) out.push_back(x | y);
  return minimalize(std::move(out));
}

std::vector<FaceSet> variable_prime(const std::vector<std::size_t>& idx, std::size_t words) {
  std::vector<FaceSet> out;
  for (auto k : idx) {
    FaceSet f(words);
    f.set(k);
    out.push_back(f);
  }
  return out;
}

}  // namespace

FiberDescription jg_minimal_generators(const GcdGraph& G, std::size_t face_cap) {
  FiberDescription F;
  F.universe = clique_complex(G, face_cap);
  const auto& faces = F.universe.faces;
  std::size_t words = (faces.size() + 63) / 64;

  std::vector<FaceSet> J;
  bool started = false;
  auto meet = [&](const std::vector<FaceSet>& P) {
    J = started ? intersect(J, P) : minimalize(P);
    started = true;
  };

  for (auto [i, j] : G.edges()) {
    std::vector<std::size_t> both, only_i, only_j;
    for (std::size_t k = 0; k < faces.size(); ++k) {
      bool hi = has(faces[k], i), hj = has(faces[k], j);
      if (hi && hj) both.push_back(k);
      else if (hi) only_i.push_back(k);
      else if (hj) only_j.push_back(k);
    }
    meet(variable_prime(both, words));
    meet(variable_prime(only_i, words));
    meet(variable_prime(only_j, words));
  }
  // An isolated vertex can only be generated by its singleton variable.
  for (int l = 1; l <= G.n; ++l)
    if (G.degree(l) == 0) {
      auto k = static_cast<std::size_t>(std::lower_bound(faces.begin(), faces.end(), bit(l)) - faces.begin());
      meet(variable_prime({k}, words));
    }

  for (const auto& s : J) {
    std::vector<Mask> supp;
    for (std::size_t k = 0; k < faces.size(); ++k)
      if (s.test(k)) supp.push_back(faces[k]);
    F.minimal_supports.push_back(supp);
  }
  std::sort(F.minimal_supports.begin(), F.minimal_supports.end());
  return F;
}

FiberStats enumerate_fiber(const GcdGraph& G, std::uint64_t cap,
                           const std::function<bool(const SquareFreeIdeal&)>& visit) {
  if (cap < 1) throw Error(Errc::BadParameters, "fiber cap must be positive");
  FiberDescription F = jg_minimal_generators(G);
  const auto& faces = F.universe.faces;
  const std::size_t nf = faces.size();
  std::size_t words = (nf + 63) / 64;

  std::vector<FaceSet> supports;
  for (const auto& s : F.minimal_supports) {
    FaceSet f(words);
    for (Mask m : s) f.set(static_cast<std::size_t>(std::lower_bound(faces.begin(), faces.end(), m) - faces.begin()));
    supports.push_back(f);
  }

  FiberStats stats;
  bool stop = false;
  FaceSet prefix(words);
  std::vector<Mask> chosen;

  // S restricted to face indices < bound must already lie in the prefix.
  auto extendable = [&](std::size_t bound) {
    for (const auto& S : supports) {
      bool ok = true;
      for (std::size_t k = 0; k < bound && ok; ++k)
        if (S.test(k) && !prefix.test(k)) ok = false;
      if (ok) return true;
    }
    return false;
  };
  auto complete = [&]() {
    for (const auto& S : supports)
      if (S.subset_of(prefix)) return true;
    return false;
  };

  std::function<void(std::size_t)> dfs = [&](std::size_t next) {
    if (stop) return;
    if (complete()) {
      if (stats.emitted >= cap) {
        stats.truncated = true;
        stop = true;
        return;
      }
      ++stats.emitted;
      if (!visit(validate_types(G.n, chosen))) {
        stop = true;
        return;
      }
    }
    for (std::size_t k = next; k < nf && !stop; ++k) {
      prefix.set(k);
      chosen.push_back(faces[k]);
      if (extendable(k + 1)) dfs(k + 1);
      chosen.pop_back();
      prefix.w[k >> 6] &= ~(std::uint64_t{1} << (k & 63));
    }
  };
  if (!supports.empty()) dfs(0);
  return stats;
}

std::vector<SquareFreeIdeal> enumerate_fiber(const GcdGraph& G, std::uint64_t cap, bool* truncated) {
  std::vector<SquareFreeIdeal> out;
  auto st = enumerate_fiber(G, cap, [&](const SquareFreeIdeal& I) {
    out.push_back(I);
    return true;
  });
  if (truncated) *truncated = st.truncated;
  return out;
}

std::uint64_t fiber_count_inclusion_exclusion(const FiberDescription& F) {
  const auto& faces = F.universe.faces;
  const std::size_t m = F.minimal_supports.size();
  if (m > kInclusionExclusionMaxSupports) throw Error(Errc::BadParameters, "too many minimal supports for inclusion-exclusion");
  if (faces.size() > 62) throw Error(Errc::BadParameters, "universe too large for 64-bit count");
  std::vector<std::vector<bool>> in(m, std::vector<bool>(faces.size(), false));
  for (std::size_t s = 0; s < m; ++s)
    for (Mask f : F.minimal_supports[s])
      in[s][std::lower_bound(faces.begin(), faces.end(), f) - faces.begin()] = true;
  long long total = 0;
  for (std::uint64_t A = 1; A < (std::uint64_t{1} << m); ++A) {
    std::size_t u = 0;
    for (std::size_t k = 0; k < faces.size(); ++k) {
      bool any = false;
      for (std::size_t s = 0; s < m && !any; ++s)
        if (((A >> s) & 1u) && in[s][k]) any = true;
      u += any;
    }
    long long term = 1LL << (faces.size() - u);
    total += (std::popcount(A) & 1) ? term : -term;
  }
  return static_cast<std::uint64_t>(total);
}

}  // namespace suppvar
