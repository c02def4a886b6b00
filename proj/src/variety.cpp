#include "suppvar/variety.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "suppvar/families.hpp"

namespace suppvar {

namespace {

Binomial make_binomial(Mask u, Mask v, int sign) { return canonical({u, v, sign}); }

std::vector<Atom> split_atom(Atom a) {
  for (auto& B : a.binomials) B = canonical(B);
  std::sort(a.binomials.begin(), a.binomials.end());
  a.binomials.erase(std::unique(a.binomials.begin(), a.binomials.end()), a.binomials.end());
  for (std::size_t k = 0; k < a.binomials.size(); ++k) {
    const Binomial B = a.binomials[k];
    bool hf = (a.zeros & B.first) != 0, hs = (a.zeros & B.second) != 0;
    if (!hf && !hs) continue;
    Atom rest = a;
    rest.binomials.erase(rest.binomials.begin() + static_cast<long>(k));
    if (hf && hs) return split_atom(rest);
    // One side vanishes, so the other side's monomial must vanish too.
    std::vector<Atom> out;
    for (int j : members(hf ? B.second : B.first)) {
      Atom b = rest;
      b.zeros |= bit(j);
      for (auto& x : split_atom(b)) out.push_back(x);
    }
    return out;
  }
  return {a};
}

// Minimal hitting sets of the given sets.
std::vector<Mask> minimal_transversals(const std::vector<Mask>& sets, std::size_t cap) {
  std::vector<Mask> T{0};
  for (Mask s : sets) {
    std::vector<Mask> next;
    for (Mask t : T) {
      if (t & s) next.push_back(t);
      else
        for (int i : members(s)) next.push_back(t | bit(i));
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    std::vector<Mask> minimal;
    for (Mask t : next) {
      bool redundant = false;
      for (Mask u : next)
        if (u != t && subset(u, t)) {
          redundant = true;
          break;
        }
      if (!redundant) minimal.push_back(t);
    }
    if (minimal.size() > cap) throw Error(Errc::BadInput, "too many minimal transversals");
    T = std::move(minimal);
  }
  std::sort(T.begin(), T.end(), [](Mask a, Mask b) {
    if (popcount(a) != popcount(b)) return popcount(a) < popcount(b);
    return members(a) < members(b);
  });
  return T;
}

std::string mono_string(Mask m) {
  std::string s;
  for (int i : members(m)) s += (s.empty() ? "x" : "*x") + std::to_string(i);
  return s;
}

Mask map_mask(Mask m, const std::vector<int>& emb) {
  Mask r = 0;
  for (int i : members(m)) r |= bit(emb.at(i - 1));
  return r;
}

std::uint32_t mono_value(Mask m, const Point& a, std::uint32_t p) {
  std::uint32_t v = 1 % p;
  for (int i : members(m)) v = mod_mul(v, a[i - 1] % p, p);
  return v;
}

bool atom_holds(const Atom& at, const Point& a, std::uint32_t p) {
  for (int i : members(at.zeros))
    if (a[i - 1] % p) return false;
  for (const auto& B : at.binomials) {
    std::uint32_t u = mono_value(B.first, a, p), v = mono_value(B.second, a, p);
    std::uint32_t s = B.sign < 0 ? mod_neg(v, p) : v;
    if ((u + s) % p) return false;
  }
  return true;
}

}  // namespace

bool atom_subset(const Atom& a, const Atom& b) {
  if (!subset(b.zeros, a.zeros)) return false;
  for (const auto& B : b.binomials) {
    if (std::find(a.binomials.begin(), a.binomials.end(), B) != a.binomials.end()) continue;
    if ((a.zeros & B.first) && (a.zeros & B.second)) continue;
    return false;
  }
  return true;
}

std::vector<Atom> normalize_atoms(const std::vector<Atom>& atoms) {
  std::vector<Atom> all;
  for (const auto& a : atoms)
    for (auto& x : split_atom(a)) all.push_back(std::move(x));
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  std::vector<Atom> out;
  for (std::size_t k = 0; k < all.size(); ++k) {
    bool redundant = false;
    for (std::size_t j = 0; j < all.size() && !redundant; ++j)
      if (j != k && atom_subset(all[k], all[j])) redundant = true;
    if (!redundant) out.push_back(all[k]);
  }
  return out;
}

VarietyExpr VarietyExpr::full(int n) {
  VarietyExpr e;
  e.kind = Kind::Full;
  e.n = n;
  return e;
}

VarietyExpr VarietyExpr::subspace(int n, Mask zeros) {
  VarietyExpr e;
  e.kind = Kind::CoordinateSubspace;
  e.n = n;
  e.set = zeros;
  return e;
}

VarietyExpr VarietyExpr::hypersurface(int n, Mask factors) {
  VarietyExpr e;
  e.kind = Kind::MonomialHypersurface;
  e.n = n;
  e.set = factors;
  return e;
}

VarietyExpr VarietyExpr::binomial(int n, Mask odd, Mask even, int sign) {
  VarietyExpr e;
  e.kind = Kind::AlternatingBinomial;
  e.n = n;
  e.odd = odd;
  e.even = even;
  e.sign = sign;
  return e;
}

VarietyExpr VarietyExpr::union_of(int n, std::vector<VarietyExpr> parts) {
  VarietyExpr e;
  e.kind = Kind::Union;
  e.n = n;
  e.parts = std::move(parts);
  return e;
}

VarietyExpr VarietyExpr::product(int n, std::vector<VarietyExpr> parts, std::vector<std::vector<int>> splits) {
  VarietyExpr e;
  e.kind = Kind::Product;
  e.n = n;
  e.parts = std::move(parts);
  e.splits = std::move(splits);
  return e;
}

namespace {

VarietyExpr atom_expr(int n, const Atom& a) {
  if (a.binomials.empty()) return a.zeros ? VarietyExpr::subspace(n, a.zeros) : VarietyExpr::full(n);
  std::vector<VarietyExpr> parts;
  std::vector<std::vector<int>> splits;
  Mask used = 0;
  if (a.zeros) {
    splits.push_back(members(a.zeros));
    parts.push_back(VarietyExpr::subspace(popcount(a.zeros), full_mask(popcount(a.zeros))));
    used |= a.zeros;
  }
  for (const auto& B : a.binomials) {
    Mask supp = B.first | B.second;
    std::vector<int> idx = members(supp);
    std::vector<int> local(n + 1, 0);
    for (std::size_t k = 0; k < idx.size(); ++k) local[idx[k]] = static_cast<int>(k) + 1;
    Mask u = 0, v = 0;
    for (int i : members(B.first)) u |= bit(local[i]);
    for (int i : members(B.second)) v |= bit(local[i]);
    splits.push_back(idx);
    parts.push_back(VarietyExpr::binomial(static_cast<int>(idx.size()), u, v, B.sign));
    used |= supp;
  }
  Mask rest = full_mask(n) & ~used;
  if (rest) {
    splits.push_back(members(rest));
    parts.push_back(VarietyExpr::full(popcount(rest)));
  }
  return VarietyExpr::product(n, std::move(parts), std::move(splits));
}

}  // namespace

VarietyExpr VarietyExpr::from_atoms(int n, const std::vector<Atom>& atoms) {
  auto A = normalize_atoms(atoms);
  if (A.empty()) throw Error(Errc::BadInput, "empty variety");
  if (A.size() == 1) return atom_expr(n, A[0]);
  bool hyper = std::all_of(A.begin(), A.end(), [](const Atom& a) { return a.binomials.empty() && popcount(a.zeros) == 1; });
  if (hyper) {
    Mask s = 0;
    for (const auto& a : A) s |= a.zeros;
    return hypersurface(n, s);
  }
  std::vector<VarietyExpr> parts;
  for (const auto& a : A) parts.push_back(atom_expr(n, a));
  return union_of(n, std::move(parts));
}

void validate_expr(const VarietyExpr& e) {
  using K = VarietyExpr::Kind;
  if (e.n < 1 || e.n > kMaxStructuralN) throw Error(Errc::BadInput, "variety ambient dimension out of range");
  const Mask all = full_mask(e.n);
  switch (e.kind) {
    case K::Full: return;
    case K::CoordinateSubspace:
      if (!subset(e.set, all)) throw Error(Errc::IndexOutOfRange, "subspace index outside [n]");
      return;
    case K::MonomialHypersurface:
      if (!e.set || !subset(e.set, all)) throw Error(Errc::IndexOutOfRange, "hypersurface indices must be a nonempty subset of [n]");
      return;
    case K::AlternatingBinomial:
      if (!e.odd || !e.even || (e.odd & e.even) || !subset(e.odd | e.even, all) || (e.sign != 1 && e.sign != -1))
        throw Error(Errc::BadInput, "binomial needs disjoint nonempty index sets inside [n]");
      return;
    case K::Union:
      if (e.parts.empty()) throw Error(Errc::BadInput, "empty union");
      for (const auto& p : e.parts) {
        if (p.n != e.n) throw Error(Errc::DimensionMismatch, "union member in another ambient space");
        validate_expr(p);
      }
      return;
    case K::Product: {
      if (e.parts.size() != e.splits.size() || e.parts.empty()) throw Error(Errc::BadInput, "product needs one split per factor");
      Mask seen = 0;
      for (std::size_t k = 0; k < e.parts.size(); ++k) {
        if (static_cast<int>(e.splits[k].size()) != e.parts[k].n) throw Error(Errc::DimensionMismatch, "split size differs from factor dimension");
        for (int i : e.splits[k]) {
          if (i < 1 || i > e.n || has(seen, i)) throw Error(Errc::BadInput, "product splits must partition [n]");
          seen |= bit(i);
        }
        validate_expr(e.parts[k]);
      }
      if (seen != all) throw Error(Errc::BadInput, "product splits must partition [n]");
      return;
    }
  }
}

std::vector<Atom> components(const VarietyExpr& e) {
  using K = VarietyExpr::Kind;
  std::vector<Atom> out;
  switch (e.kind) {
    case K::Full: out.push_back({}); break;
    case K::CoordinateSubspace: out.push_back({e.set, {}}); break;
    case K::MonomialHypersurface:
      for (int i : members(e.set)) out.push_back({bit(i), {}});
      break;
    case K::AlternatingBinomial: out.push_back({0, {make_binomial(e.odd, e.even, e.sign)}}); break;
    case K::Union:
      for (const auto& p : e.parts)
        for (auto& a : components(p)) out.push_back(std::move(a));
      break;
    case K::Product: {
      std::vector<Atom> acc{Atom{}};
      for (std::size_t k = 0; k < e.parts.size(); ++k) {
        std::vector<Atom> next;
        for (const auto& local : components(e.parts[k]))
          for (const auto& a : acc) {
            Atom b = a;
            b.zeros |= map_mask(local.zeros, e.splits[k]);
            for (const auto& B : local.binomials)
              b.binomials.push_back(make_binomial(map_mask(B.first, e.splits[k]), map_mask(B.second, e.splits[k]), B.sign));
            next.push_back(std::move(b));
          }
        acc = std::move(next);
      }
      out = std::move(acc);
      break;
    }
  }
  return normalize_atoms(out);
}

bool expr_subset(const VarietyExpr& a, const VarietyExpr& b) {
  auto A = components(a), B = components(b);
  return std::all_of(A.begin(), A.end(), [&](const Atom& x) {
    return std::any_of(B.begin(), B.end(), [&](const Atom& y) { return atom_subset(x, y); });
  });
}

bool same_variety(const VarietyExpr& a, const VarietyExpr& b) { return a.n == b.n && components(a) == components(b); }

int dimension(const VarietyExpr& e) {
  int d = 0;
  for (const auto& a : components(e)) d = std::max(d, e.n - popcount(a.zeros) - static_cast<int>(a.binomials.size()));
  return d;
}

std::string render_atom(const Atom& a, int n) {
  if (!a.zeros && a.binomials.empty()) return "A^" + std::to_string(n);
  std::string s;
  for (int i : members(a.zeros)) s += (s.empty() ? "x" : ",x") + std::to_string(i);
  for (const auto& B : a.binomials) s += (s.empty() ? "" : ",") + binomial_string(B);
  return "V(" + s + ")";
}

std::string render(const VarietyExpr& e) {
  auto A = components(e);
  if (A.size() == 1) {
    if (!A[0].zeros && A[0].binomials.empty()) return "A^" + std::to_string(e.n);
  }
  bool coordinate = std::all_of(A.begin(), A.end(), [](const Atom& a) { return a.binomials.empty(); });
  if (coordinate) {
    std::vector<Mask> sets;
    for (const auto& a : A) sets.push_back(a.zeros);
    std::string s;
    for (Mask t : minimal_transversals(sets, std::size_t{1} << 20)) s += (s.empty() ? "" : ",") + mono_string(t);
    return "V(" + s + ")";
  }
  std::string s;
  for (const auto& a : A) s += (s.empty() ? "" : " union ") + render_atom(a, e.n);
  return s;
}

nlohmann::ordered_json expr_to_json(const VarietyExpr& e) {
  nlohmann::ordered_json j;
  j["variety"] = render(e);
  j["dimension"] = dimension(e);
  auto comps = nlohmann::ordered_json::array();
  for (const auto& a : components(e)) comps.push_back(render_atom(a, e.n));
  j["union"] = comps;
  return j;
}

VarietyExpr relabel(const VarietyExpr& e, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != e.n) throw Error(Errc::DimensionMismatch, "permutation length differs from n");
  std::vector<int> check = perm;
  std::sort(check.begin(), check.end());
  for (int k = 0; k < e.n; ++k)
    if (check[k] != k + 1) throw Error(Errc::BadInput, "not a permutation of [n]");
  VarietyExpr r = e;
  r.set = map_mask(e.set, perm);
  r.odd = map_mask(e.odd, perm);
  r.even = map_mask(e.even, perm);
  if (e.kind == VarietyExpr::Kind::Union)
    for (auto& p : r.parts) p = relabel(p, perm);
  if (e.kind == VarietyExpr::Kind::Product)
    for (auto& s : r.splits)
      for (int& i : s) i = perm[i - 1];
  return r;
}

bool on_variety(const VarietyExpr& e, const Point& a, std::uint32_t p) {
  if (static_cast<int>(a.size()) != e.n) throw Error(Errc::DimensionMismatch, "point length differs from n");
  for (const auto& at : components(e))
    if (atom_holds(at, a, p)) return true;
  return false;
}

PointSample sample_on_variety(const VarietyExpr& e, int n, std::uint32_t p, int count, Rng& rng) {
  require_prime(p);
  if (n != e.n) throw Error(Errc::DimensionMismatch, "sampler dimension differs from the expression");
  auto A = components(e);
  PointSample S;
  S.prime = p;
  S.on_variety = e;
  for (int c = 0; c < count; ++c) {
    const Atom& at = A[rng.below(A.size())];
    bool done = false;
    for (int attempt = 0; attempt < 1000 && !done; ++attempt) {
      Point a(n);
      for (auto& x : a) x = static_cast<std::uint32_t>(rng.below(p));
      for (int i : members(at.zeros)) a[i - 1] = 0;
      bool ok = true;
      for (const auto& B : at.binomials) {
        std::vector<int> supp = members(B.first | B.second);
        int k = supp[rng.below(supp.size())];
        bool in_first = has(B.first, k);
        Mask same = (in_first ? B.first : B.second) & ~bit(k);
        Mask other = in_first ? B.second : B.first;
        std::uint32_t den = mono_value(same, a, p);
        if (!den) {
          ok = false;
          break;
        }
        // first + sign*second = 0 gives a_k = -sign * other / same on either side.
        std::uint32_t val = mod_mul(mono_value(other, a, p), mod_inv(den, p), p);
        a[k - 1] = B.sign > 0 ? mod_neg(val, p) : val;
      }
      if (ok && atom_holds(at, a, p)) {
        S.points.push_back(std::move(a));
        done = true;
      }
    }
    if (!done) throw Error(Errc::UnsatisfiableOverField, "could not sample a point on " + render_atom(at, n) + " over F_" + std::to_string(p));
  }
  return S;
}

std::vector<Point> sample_off_variety(const VarietyExpr& e, int n, std::uint32_t p, int count, Rng& rng) {
  require_prime(p);
  std::vector<Point> out;
  auto A = components(e);
  if (A.size() == 1 && !A[0].zeros && A[0].binomials.empty()) return out;
  const long long limit = 1000LL * count + 1000;
  for (long long t = 0; t < limit && static_cast<int>(out.size()) < count; ++t) {
    Point a(n);
    for (auto& x : a) x = static_cast<std::uint32_t>(rng.below(p));
    bool on = false;
    for (const auto& at : A)
      if (atom_holds(at, a, p)) {
        on = true;
        break;
      }
    if (!on) out.push_back(std::move(a));
  }
  return out;
}

bool membership(const TaylorGraph& T, const Point& a, std::uint32_t p, int rank_cap_n) {
  if (static_cast<int>(a.size()) != T.n()) throw Error(Errc::DimensionMismatch, "point length differs from n");
  return evaluate_rank(T, a, p, rank_cap_n) < (1 << (T.n() - 1));
}

bool membership(const SquareFreeIdeal& I, const Point& a, std::uint32_t p, int rank_cap_n) {
  if (I.n() > rank_cap_n) throw Error(Errc::MatrixTooLarge, "n exceeds the rank cap", I.n(), rank_cap_n);
  return membership(build_taylor(I), a, p, rank_cap_n);
}

std::vector<Factor> product_decompose(const SquareFreeIdeal& I) {
  GcdGraph G = build_gcd_graph(I);
  std::vector<Factor> out;
  for (Mask comp : connected_components(G)) {
    Factor F;
    F.embedding = members(comp);
    std::vector<int> local(I.n() + 1, 0);
    for (std::size_t k = 0; k < F.embedding.size(); ++k) local[F.embedding[k]] = static_cast<int>(k) + 1;
    std::vector<VariableType> ts;
    for (const auto& t : I.types()) {
      if (!subset(t.mask, comp)) continue;
      Mask m = 0;
      for (int i : members(t.mask)) m |= bit(local[i]);
      ts.push_back({m, t.degree});
    }
    F.ideal = validate_types(static_cast<int>(F.embedding.size()), ts);
    out.push_back(std::move(F));
  }
  return out;
}

std::vector<BlockCertificate> block_certificates(const TaylorGraph& T, int max_side) {
  const int n = T.n();
  std::vector<BlockCertificate> out;
  for (const auto& comp : T.components()) {
    if (comp.size() < 2 || comp.size() % 2) continue;
    BlockCertificate C;
    bool ok = true;
    for (Mask v : comp) {
      if (T.in_degree(v) == 0 && T.out_degree(v) > 0) C.sources.push_back(v);
      else if (T.out_degree(v) == 0 && T.in_degree(v) > 0) C.sinks.push_back(v);
      else {
        ok = false;
        break;
      }
    }
    if (!ok || C.sources.size() != C.sinks.size() || static_cast<int>(C.sources.size()) > max_side) continue;
    std::sort(C.sources.begin(), C.sources.end());
    std::sort(C.sinks.begin(), C.sinks.end());
    const int L = static_cast<int>(C.sources.size());
    std::map<Mask, int> col;
    for (int k = 0; k < L; ++k) col[C.sources[k]] = k;
    std::vector<std::vector<std::pair<int, Poly>>> rows(L);
    for (int r = 0; r < L; ++r)
      for (std::uint32_t id : T.in_edge_ids(C.sinks[r])) {
        const EdgeRef& e = T.edges()[id];
        rows[r].emplace_back(col.at(e.source), matched_weight(n, e));
      }
    // Leibniz expansion row by row over the set of used columns.
    std::map<std::uint32_t, Poly> layer{{0u, Poly::constant(n, 1)}};
    for (int r = 0; r < L; ++r) {
      std::map<std::uint32_t, Poly> next;
      for (const auto& [used, val] : layer)
        for (const auto& [c, w] : rows[r]) {
          if ((used >> c) & 1u) continue;
          int above = std::popcount(used >> (c + 1));
          Poly t = val * w;
          if (above & 1) t = -t;
          auto it = next.find(used | (1u << c));
          if (it == next.end()) next.emplace(used | (1u << c), t);
          else it->second = it->second + t;
        }
      layer = std::move(next);
    }
    auto it = layer.find(L == 32 ? ~0u : (1u << L) - 1);
    C.det = it == layer.end() ? Poly(n) : it->second;
    out.push_back(std::move(C));
  }
  return out;
}

int VarietyReport::disagreements() const {
  int d = 0;
  for (const auto& s : sampling) d += s.disagreements;
  return d;
}

const char* verdict_name(VarietyReport::Verdict v) {
  switch (v) {
    case VarietyReport::Verdict::Exact: return "exact";
    case VarietyReport::Verdict::Bounded: return "bounded";
    case VarietyReport::Verdict::SampledOnly: return "sampled_only";
  }
  return "?";
}

namespace {

using json = nlohmann::ordered_json;

// The zero set of coeff * chi^mono * binomial^k, with a unit coefficient.
struct ZeroSet {
  Mask mono = 0;
  std::optional<Binomial> bin;
};

std::optional<ZeroSet> unit_zero_set(const Poly& P) {
  if (P.is_zero()) return std::nullopt;
  SupportPolynomial S = classify_poly(P);
  if (S.kind == SupportPolynomial::Kind::GeneralSum) return std::nullopt;
  if (S.coeff != 1 && S.coeff != -1) return std::nullopt;
  ZeroSet z;
  z.mono = S.monomial_support();
  if (S.kind == SupportPolynomial::Kind::ScaledPower) z.bin = S.binomial;
  return z;
}

bool vanishes_on(const ZeroSet& z, const Atom& a) {
  if (z.mono & a.zeros) return true;
  if (!z.bin) return false;
  const Binomial& B = *z.bin;
  if (std::find(a.binomials.begin(), a.binomials.end(), B) != a.binomials.end()) return true;
  return (a.zeros & B.first) && (a.zeros & B.second);
}

// Every component of the intersection of the zero sets lies in some candidate atom.
bool intersection_inside(const std::vector<ZeroSet>& Z, const std::vector<Atom>& cand, std::size_t node_cap,
                         Atom* witness) {
  std::size_t nodes = 0;
  std::function<bool(std::size_t, const Atom&)> rec = [&](std::size_t j, const Atom& a) -> bool {
    if (++nodes > node_cap) return false;
    for (const auto& c : cand)
      if (atom_subset(a, c)) return true;
    if (j == Z.size()) {
      if (witness) *witness = a;
      return false;
    }
    if (vanishes_on(Z[j], a)) return rec(j + 1, a);
    std::vector<Atom> choices;
    for (int i : members(Z[j].mono)) {
      Atom b = a;
      b.zeros |= bit(i);
      choices.push_back(b);
    }
    if (Z[j].bin) {
      Atom b = a;
      b.binomials.push_back(*Z[j].bin);
      choices.push_back(b);
    }
    for (const auto& c : choices)
      for (const auto& piece : split_atom(c))
        if (!rec(j + 1, piece)) return false;
    return true;
  };
  return rec(0, Atom{});
}

json poly_json(const Poly& P) {
  json j;
  j["polynomial"] = P.to_string();
  j["factored"] = classify_poly(P).to_string();
  return j;
}

Poly matching_diagonal(int n, const Matching& M) {
  Poly d = Poly::constant(n, 1);
  for (const auto& e : M.edges) d = d * matched_weight(n, e);
  return d;
}

struct FactorOutcome {
  VarietyReport::Verdict verdict = VarietyReport::Verdict::SampledOnly;
  std::vector<Atom> lower;  // candidate atoms (local labels)
  std::vector<Poly> upper;  // polynomials in I_f
  bool exact_full = false;
  json certificates = json::array();
};

FactorOutcome classify_factor(const SquareFreeIdeal& I, const std::vector<Matching>& hints, const ClassifyConfig& cfg) {
  const int n = I.n();
  FactorOutcome out;
  TaylorGraph T = build_taylor(I);
  const GcdGraph& G = T.gcd();

  auto witnesses = detect_full(T, G, cfg.caps);
  if (!witnesses.empty()) {
    out.verdict = VarietyReport::Verdict::Exact;
    out.exact_full = true;
    out.lower = {Atom{}};
    json c;
    c["kind"] = "full_support";
    c["witness"] = witness_to_json(witnesses.front(), n);
    out.certificates.push_back(c);
    return out;
  }

  // Lower bounds.
  std::vector<Atom> lower{Atom{full_mask(n), {}}};
  bool nontrivial = false;
  for (const auto& cc : find_homotopy_sources_sinks(T, G)) {
    if (!check_containment(T, G, cc)) continue;
    lower.push_back({cc.indices, {}});
    json c;
    c["kind"] = "containment";
    c["certificate"] = containment_to_json(cc, n);
    out.certificates.push_back(c);
    nontrivial = true;
  }
  for (const auto& B : block_certificates(T)) {
    // Single-edge blocks duplicate the source/sink certificates.
    if (B.sources.size() == 1 && !B.det.is_zero()) continue;
    std::vector<Atom> atoms;
    if (B.det.is_zero()) atoms.push_back(Atom{});
    else if (auto z = unit_zero_set(B.det)) {
      for (int i : members(z->mono)) atoms.push_back({bit(i), {}});
      if (z->bin) atoms.push_back({0, {*z->bin}});
    }
    if (atoms.empty()) continue;
    json c;
    c["kind"] = "block";
    auto src = json::array(), snk = json::array();
    for (Mask v : B.sources) src.push_back(to_bstring(v, n));
    for (Mask v : B.sinks) snk.push_back(to_bstring(v, n));
    c["sources"] = src;
    c["sinks"] = snk;
    c["det"] = poly_json(B.det);
    out.certificates.push_back(c);
    for (auto& a : atoms) lower.push_back(a);
    nontrivial = true;
  }
  out.lower = normalize_atoms(lower);
  if (out.lower.size() == 1 && !out.lower[0].zeros && out.lower[0].binomials.empty()) {
    out.verdict = VarietyReport::Verdict::Exact;
    out.exact_full = true;
    return out;
  }

  // Upper bounds.
  std::vector<ZeroSet> zero_sets;
  auto add_upper = [&](const Poly& P, json c) {
    auto z = unit_zero_set(P);
    if (!z) return;
    c["det"] = poly_json(P);
    out.certificates.push_back(c);
    out.upper.push_back(P);
    zero_sets.push_back(*z);
  };
  auto covered = [&]() {
    std::vector<ZeroSet> sorted = zero_sets;
    std::stable_sort(sorted.begin(), sorted.end(), [](const ZeroSet& a, const ZeroSet& b) {
      return popcount(a.mono) + (a.bin ? 1 : 0) < popcount(b.mono) + (b.bin ? 1 : 0);
    });
    return intersection_inside(sorted, out.lower, 1000000, nullptr);
  };

  for (const auto& H : hints) {
    if (!zero_sets.empty() && covered()) break;
    Matching M = H;
    try {
      verify_matching(T, M);
      for (auto& e : M.edges) e = *T.find_edge(e.source, e.target);
      auto tri = triangularity(build_auxiliary(T, M), cfg.cycle_cap);
      json c;
      c["kind"] = tri.triangular ? "triangular" : "determinant";
      c["matching"] = matching_to_json(M, n);
      if (!tri.triangular) c["cycles"] = tri.census.cycles.size();
      add_upper(tri.triangular ? matching_diagonal(n, M) : determinant_via_cycles(T, M, cfg.cycle_cap), c);
    } catch (const Error&) {
      continue;
    }
  }

  std::vector<Mask> coordinate_sets;
  for (const auto& a : out.lower)
    if (a.binomials.empty()) coordinate_sets.push_back(a.zeros);
  std::vector<Mask> sigmas;
  if (!coordinate_sets.empty()) {
    try {
      sigmas = minimal_transversals(coordinate_sets, cfg.transversal_cap);
    } catch (const Error&) {
      sigmas.clear();
    }
  }
  for (Mask sigma : sigmas) {
    if (!zero_sets.empty() && covered()) break;
    auto M = search_triangular_matching(T, sigma, cfg.search_budget);
    if (!M) continue;
    auto tri = triangularity(build_auxiliary(T, *M), cfg.cycle_cap);
    if (!tri.triangular) continue;
    json c;
    c["kind"] = "triangular";
    c["matching"] = matching_to_json(*M, n);
    add_upper(matching_diagonal(n, *M), c);
  }

  if (!zero_sets.empty() && covered()) out.verdict = VarietyReport::Verdict::Exact;
  else if (nontrivial || !zero_sets.empty()) out.verdict = VarietyReport::Verdict::Bounded;
  else out.verdict = VarietyReport::Verdict::SampledOnly;
  return out;
}

// Lifts factor atoms into global labels and forms all products.
std::vector<Atom> product_atoms(const std::vector<std::vector<Atom>>& per_factor, const std::vector<Factor>& factors) {
  std::vector<Atom> acc{Atom{}};
  for (std::size_t k = 0; k < factors.size(); ++k) {
    std::vector<Atom> next;
    for (const auto& local : per_factor[k])
      for (const auto& a : acc) {
        Atom b = a;
        b.zeros |= map_mask(local.zeros, factors[k].embedding);
        for (const auto& B : local.binomials)
          b.binomials.push_back(make_binomial(map_mask(B.first, factors[k].embedding), map_mask(B.second, factors[k].embedding), B.sign));
        next.push_back(b);
      }
    acc = std::move(next);
  }
  return normalize_atoms(acc);
}

VarietyExpr factor_expr(int n, const std::vector<Atom>& atoms) { return VarietyExpr::from_atoms(n, atoms); }

}  // namespace

VarietyReport classify(const SquareFreeIdeal& I, const ClassifyConfig& cfg) {
  const int n = I.n();
  if (n > cfg.rank_cap_n) throw Error(Errc::MatrixTooLarge, "n exceeds the rank cap", n, cfg.rank_cap_n);
  for (auto p : cfg.primes) require_prime(p);
  if (cfg.samples < 1) throw Error(Errc::BadInput, "samples must be positive");

  VarietyReport R;
  R.n = n;
  R.config = cfg;
  auto factors = product_decompose(I);

  std::vector<VarietyExpr> parts;
  std::vector<std::vector<int>> splits;
  std::vector<std::vector<Atom>> lower_atoms;
  std::vector<std::vector<Atom>> exact_atoms;
  bool all_exact = true, any_cert = false;
  for (std::size_t k = 0; k < factors.size(); ++k) {
    const auto& F = factors[k];
    std::vector<Matching> hints;
    if (factors.size() == 1) hints = cfg.hints;
    if (cfg.structural_hints) {
      auto extra = cycle_hints(F.ideal, build_taylor(F.ideal));
      hints.insert(hints.end(), extra.begin(), extra.end());
    }
    FactorOutcome o = classify_factor(F.ideal, hints, cfg);
    for (auto& c : o.certificates) {
      json wrapped;
      wrapped["factor"] = F.embedding;
      for (auto it = c.begin(); it != c.end(); ++it) wrapped[it.key()] = it.value();
      R.certificates.push_back(wrapped);
    }
    if (o.verdict != VarietyReport::Verdict::SampledOnly) any_cert = true;
    if (o.verdict != VarietyReport::Verdict::Exact) all_exact = false;
    lower_atoms.push_back(o.lower);
    parts.push_back(factor_expr(F.ideal.n(), o.lower));
    splits.push_back(F.embedding);
    for (const auto& P : o.upper) {
      auto z = unit_zero_set(P);
      std::vector<Atom> atoms;
      for (int i : members(z->mono)) atoms.push_back({bit(i), {}});
      if (z->bin) atoms.push_back({0, {*z->bin}});
      // Lift V(P) from the factor to A^n.
      std::vector<Atom> lifted;
      for (const auto& a : atoms) {
        Atom b;
        b.zeros = map_mask(a.zeros, F.embedding);
        for (const auto& B : a.binomials)
          b.binomials.push_back(make_binomial(map_mask(B.first, F.embedding), map_mask(B.second, F.embedding), B.sign));
        lifted.push_back(b);
      }
      R.upper.push_back(VarietyExpr::from_atoms(n, lifted));
    }
  }

  auto global_lower = product_atoms(lower_atoms, factors);
  VarietyExpr lower_expr = factors.size() == 1 ? VarietyExpr::from_atoms(n, global_lower)
                                               : VarietyExpr::product(n, parts, splits);
  R.lower.push_back(lower_expr);
  if (all_exact) {
    R.verdict = VarietyReport::Verdict::Exact;
    R.expr = lower_expr;
  } else {
    R.verdict = any_cert ? VarietyReport::Verdict::Bounded : VarietyReport::Verdict::SampledOnly;
  }

  if (cfg.sample) {
    TaylorGraph T = build_taylor(I);
    for (std::uint32_t p : cfg.primes) {
      Rng rng(mix_seed(cfg.seed, p));
      PrimeStats st;
      st.prime = p;
      auto on = sample_on_variety(lower_expr, n, p, cfg.samples, rng);
      for (const auto& a : on.points) {
        ++st.on_tested;
        if (membership(T, a, p, cfg.rank_cap_n)) ++st.on_members;
        else ++st.disagreements;
      }
      // Small fields have thin complements for binomial varieties; off-variety checks need p > 3.
      if (p > 3) {
        for (const auto& a : sample_off_variety(lower_expr, n, p, cfg.samples, rng)) {
          ++st.off_tested;
          bool member = membership(T, a, p, cfg.rank_cap_n);
          if (!member) ++st.off_nonmembers;
          else if (R.verdict == VarietyReport::Verdict::Exact) ++st.disagreements;
        }
      }
      R.sampling.push_back(st);
    }
  }
  return R;
}

nlohmann::ordered_json report_to_json(const VarietyReport& r) {
  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["n"] = r.n;
  j["verdict"] = verdict_name(r.verdict);
  if (r.verdict == VarietyReport::Verdict::Exact) {
    auto e = expr_to_json(r.expr);
    j["variety"] = e["variety"];
    j["dimension"] = e["dimension"];
    j["union"] = e["union"];
  } else {
    j["variety"] = nullptr;
  }
  auto lo = json::array(), up = json::array();
  for (const auto& e : r.lower) lo.push_back(render(e));
  for (const auto& e : r.upper) up.push_back(render(e));
  j["lower"] = lo;
  j["upper"] = up;
  j["certificates"] = r.certificates;
  j["primes"] = r.config.primes;
  json samples = json::array();
  for (const auto& s : r.sampling) {
    json x;
    x["prime"] = s.prime;
    x["on_tested"] = s.on_tested;
    x["on_members"] = s.on_members;
    x["off_tested"] = s.off_tested;
    x["off_nonmembers"] = s.off_nonmembers;
    x["disagreements"] = s.disagreements;
    samples.push_back(x);
  }
  j["samples"] = {{"per_prime", samples}, {"per_prime_requested", r.config.samples}, {"disagreements", r.disagreements()}};
  j["seed"] = r.config.seed;
  j["caps"] = {{"rank_cap_n", r.config.rank_cap_n}, {"cycle_cap", r.config.cycle_cap}, {"search_budget", r.config.search_budget}};
  return j;
}

}  // namespace suppvar
