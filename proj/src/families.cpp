#include "suppvar/families.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace suppvar {

namespace {

using K = FamilySpec::Kind;

void check_params(const FamilySpec& s) {
  switch (s.kind) {
    case K::CycleEdgeIdeal:
    case K::CycleFiber:
      if (s.n < 3 || s.n > kMaxStructuralN) throw Error(Errc::BadParameters, "cycle length must be in [3, 24]");
      if (!subset(s.singletons, full_mask(s.n))) throw Error(Errc::BadParameters, "singleton outside the cycle");
      return;
    case K::DoubleBroom:
    case K::WhiskeredTriangle:
      if (s.a < 1 || s.b < 1 || s.a + s.b + 3 > kMaxStructuralN) throw Error(Errc::BadParameters, "broom sizes must be >= 1");
      return;
    case K::DeltaN:
      if (s.n < 3 || 2 * s.n > kMaxStructuralN) throw Error(Errc::BadParameters, "DeltaN needs 3 <= n <= 12");
      return;
    case K::TypeB: {
      if (s.graph < 27 || s.graph > 35) throw Error(Errc::BadParameters, "type B graphs are 27..35");
      const auto& d = catalog_entry(s.graph).dashed;
      for (Mask m : s.present)
        if (std::find(d.begin(), d.end(), m) == d.end()) throw Error(Errc::BadParameters, type_label(m) + " is not dashed");
      return;
    }
  }
}

Mask odd_mask(int n) {
  Mask m = 0;
  for (int i = 1; i <= n; i += 2) m |= bit(i);
  return m;
}

Mask even_mask(int n) { return full_mask(n) & ~odd_mask(n); }

std::vector<std::pair<int, int>> broom_edges(int a, int b, bool triangle) {
  std::vector<std::pair<int, int>> e{{1, 2}, {2, 3}};
  if (triangle) e.push_back({1, 3});
  for (int i = 1; i <= a; ++i) e.push_back({1, 3 + i});
  for (int j = 1; j <= b; ++j) e.push_back({3, 3 + a + j});
  return e;
}

GcdGraph delta_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) e.push_back({i, j});
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (i != j) e.push_back({std::min(j, n + i), std::max(j, n + i)});
  return graph_from_edges(2 * n, e);
}

SquareFreeIdeal clique_ideal_without(const GcdGraph& G, const std::set<Mask>& omit) {
  std::vector<Mask> ms;
  for (Mask f : clique_complex(G).faces)
    if (!omit.count(f)) ms.push_back(f);
  return validate_types(G.n, ms);
}

void add_cube(std::set<EdgeRef>& out, const EdgeRef& e, Mask lambda) {
  for (const auto& x : hypercube(e, lambda)) out.insert(x);
}

Matching from_set(Mask sigma, const std::set<EdgeRef>& s) {
  Matching M;
  M.sigma = sigma;
  M.edges.assign(s.begin(), s.end());
  return M;
}

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    try {
      std::size_t pos = 0;
      int v = std::stoi(tok, &pos);
      if (pos != tok.size()) throw Error(Errc::BadInput, "bad integer '" + tok + "'");
      out.push_back(v);
    } catch (const std::logic_error&) {
      throw Error(Errc::BadInput, "bad integer '" + tok + "'");
    }
  }
  return out;
}

// "15" -> {1,5}; labels are single digits for six-generator graphs.
Mask digits_mask(const std::string& s) {
  Mask m = 0;
  for (char c : s) {
    if (c < '1' || c > '9') throw Error(Errc::BadInput, "bad variable label '" + s + "'");
    m |= bit(c - '0');
  }
  return m;
}

}  // namespace

Matching cycle_matching(int n) {
  if (n < 6 || n % 4 != 2) throw Error(Errc::NoHandConstruction, "cycle matching needs n = 4m+2 >= 6");
  const Mask E = even_mask(n);
  const int half = n / 2;  // odd positions 1,3,..,n-1
  std::set<EdgeRef> s;
  for (Mask bb = 0; bb < (Mask{1} << half); ++bb) {
    auto b = [&](int j) { return (bb >> ((j - 1) / 2)) & 1u; };
    int i = -1;
    for (int j = 1; j + 2 <= n - 1; j += 2)
      if (b(j) == b(j + 2)) {
        i = j;
        break;
      }
    if (i < 0) i = n - 1;
    Mask sigma = 0;
    for (int j = 1; j <= n - 1; j += 2)
      if (b(j)) sigma |= bit(j);
    EdgeRef e = b(i) == 0 ? make_homotopy(sigma, i + 1) : make_differential(sigma, i + 1);
    add_cube(s, e, E & ~bit(i + 1));
  }
  return from_set(E, s);
}

Matching relabel_matching(const Matching& M, const std::vector<int>& perm) {
  auto map = [&](Mask m) {
    Mask r = 0;
    for (int i : members(m)) r |= bit(perm.at(i - 1));
    return r;
  };
  Matching R;
  R.sigma = map(M.sigma);
  for (const auto& e : M.edges) {
    Mask low = map(e.lower());
    int idx = perm.at(e.index - 1);
    R.edges.push_back(e.is_homotopy() ? make_homotopy(low, idx) : make_differential(low, idx));
  }
  std::sort(R.edges.begin(), R.edges.end());
  return R;
}

std::vector<Matching> cycle_hints(const SquareFreeIdeal& I, const TaylorGraph& T) {
  const int n = I.n();
  std::vector<Matching> out;
  if (n < 6 || n % 4 != 2) return out;
  const GcdGraph& G = T.gcd();
  for (int i = 1; i <= n; ++i)
    if (G.degree(i) != 2) return out;
  std::vector<int> order{1};
  int prev = 0, cur = 1;
  while (true) {
    int next = 0;
    for (int j : members(G.neighbors(cur)))
      if (j != prev) {
        next = j;
        break;
      }
    if (next == 1) break;
    order.push_back(next);
    prev = cur;
    cur = next;
    if (static_cast<int>(order.size()) > n) return out;
  }
  if (static_cast<int>(order.size()) != n) return out;  // several cycles

  const Matching base = cycle_matching(n);
  std::set<std::vector<EdgeRef>> seen;
  for (int r = 0; r < n; ++r)
    for (int dir : {1, -1}) {
      std::vector<int> perm(n);
      for (int p = 1; p <= n; ++p) perm[p - 1] = order[((r + dir * (p - 1)) % n + n) % n];
      Matching M = relabel_matching(base, perm);
      try {
        verify_matching(T, M);
      } catch (const Error&) {
        continue;
      }
      for (auto& e : M.edges) e = *T.find_edge(e.source, e.target);
      if (seen.insert(M.edges).second) out.push_back(std::move(M));
    }
  return out;
}

GcdGraph family_graph(const FamilySpec& s) {
  check_params(s);
  switch (s.kind) {
    case K::CycleEdgeIdeal:
    case K::CycleFiber: {
      std::vector<std::pair<int, int>> e;
      for (int i = 1; i <= s.n; ++i) e.push_back({std::min(i, i % s.n + 1), std::max(i, i % s.n + 1)});
      return graph_from_edges(s.n, e);
    }
    case K::DoubleBroom: return graph_from_edges(s.a + s.b + 3, broom_edges(s.a, s.b, false));
    case K::WhiskeredTriangle: return graph_from_edges(s.a + s.b + 3, broom_edges(s.a, s.b, true));
    case K::DeltaN: return delta_graph(s.n);
    case K::TypeB: return graph_from_edges(6, catalog_entry(s.graph).edges);
  }
  throw Error(Errc::BadParameters, "unknown family");
}

SquareFreeIdeal make_family(const FamilySpec& s) {
  check_params(s);
  switch (s.kind) {
    case K::CycleEdgeIdeal:
    case K::CycleFiber: {
      std::vector<Mask> ms;
      for (int i = 1; i <= s.n; ++i) ms.push_back(bit(i) | bit(i % s.n + 1));
      if (s.kind == K::CycleFiber)
        for (int i : members(s.singletons)) ms.push_back(bit(i));
      return validate_types(s.n, ms);
    }
    case K::DoubleBroom:
    case K::WhiskeredTriangle: {
      std::set<Mask> omit;
      if (!s.with_f2) omit.insert(bit(2));
      return clique_ideal_without(family_graph(s), omit);
    }
    case K::DeltaN: {
      const int n = s.n;
      auto f = [](int i) { return bit(i); };
      auto g = [n](int i) { return bit(n + i); };
      std::set<Mask> omit;
      // {g_k} with subsets of [f] avoiding f_1..f_k, of size at most n-3.
      for (int k = 1; k <= 3; ++k) {
        Mask avail = 0;
        for (int i = k + 1; i <= n; ++i) avail |= f(i);
        for (Mask sub = avail;; sub = (sub - 1) & avail) {
          if (popcount(sub) <= n - 3) omit.insert(g(k) | sub);
          if (!sub) break;
        }
      }
      GcdGraph G = delta_graph(n);
      SquareFreeIdeal I = clique_ideal_without(G, omit);
      if (!(build_gcd_graph(I) == G)) throw Error(Errc::BadParameters, "DeltaN construction does not realize its graph");
      return I;
    }
    case K::TypeB: return catalog_representative(s.graph, s.present);
  }
  throw Error(Errc::BadParameters, "unknown family");
}

VarietyExpr cycle_fiber_expected(int n, Mask singletons) {
  if (n % 4 != 2) return VarietyExpr::full(n);
  const Mask O = odd_mask(n), E = even_mask(n);
  if (!singletons) return VarietyExpr::binomial(n, O, E);
  if (subset(singletons, O)) return VarietyExpr::hypersurface(n, E);
  if (subset(singletons, E)) return VarietyExpr::hypersurface(n, O);
  return VarietyExpr::full(n);
}

VarietyExpr expected_variety(const FamilySpec& s) {
  check_params(s);
  switch (s.kind) {
    case K::CycleEdgeIdeal: return cycle_fiber_expected(s.n, 0);
    case K::CycleFiber: return cycle_fiber_expected(s.n, s.singletons);
    case K::DoubleBroom:
    case K::WhiskeredTriangle: {
      const int n = s.a + s.b + 3;
      if (s.with_f2) return VarietyExpr::full(n);
      Mask gs = 0, hs = 0;
      for (int i = 1; i <= s.a; ++i) gs |= bit(3 + i);
      for (int j = 1; j <= s.b; ++j) hs |= bit(3 + s.a + j);
      return VarietyExpr::from_atoms(n, {Atom{gs, {}}, Atom{hs, {}}});
    }
    case K::DeltaN: {
      Mask gs = 0;
      for (int i = 1; i <= s.n; ++i) gs |= bit(s.n + i);
      return VarietyExpr::hypersurface(2 * s.n, gs);
    }
    case K::TypeB: return catalog_expected(s.graph, s.present);
  }
  throw Error(Errc::BadParameters, "unknown family");
}

Matching family_matching(const FamilySpec& s) {
  check_params(s);
  switch (s.kind) {
    case K::CycleEdgeIdeal: return cycle_matching(s.n);
    case K::CycleFiber:
      if (s.singletons && !subset(s.singletons, odd_mask(s.n)))
        throw Error(Errc::NoHandConstruction, "the cycle matching needs the added singletons to be odd");
      return cycle_matching(s.n);
    case K::DoubleBroom:
    case K::WhiskeredTriangle: {
      if (s.with_f2) throw Error(Errc::NoHandConstruction, "no matching when x_{f2} is present");
      const int n = s.a + s.b + 3;
      const int g1 = 4, h1 = 4 + s.a;
      Mask ab = 0;
      for (int k = 4; k <= n; ++k) ab |= bit(k);
      const Mask all = full_mask(n);
      std::set<EdgeRef> M;
      add_cube(M, make_differential(bit(1) | bit(3), 2), ab);
      add_cube(M, make_homotopy(0, g1), all & ~(bit(1) | bit(g1)));
      add_cube(M, make_homotopy(bit(1), h1), all & ~(bit(1) | bit(3) | bit(h1)));
      return from_set(bit(g1) | bit(h1), M);
    }
    case K::DeltaN: {
      const int n = s.n;
      auto f = [](int i) { return i; };
      auto g = [n](int i) { return n + i; };
      Mask G = 0, F = 0;
      for (int i = 1; i <= n; ++i) G |= bit(g(i)), F |= bit(f(i));
      const Mask all = F | G;
      std::set<EdgeRef> M;
      add_cube(M, make_homotopy(0, g(1)), (G & ~bit(g(1))) | bit(f(1)));
      for (int i = 2; i <= n; ++i) add_cube(M, make_homotopy(bit(f(i)), g(i)), G & ~bit(g(i)));
      for (int i = 2; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
          add_cube(M, make_differential(bit(f(i)) | bit(f(j)), g(1)), all & ~(bit(f(i)) | bit(f(j)) | bit(g(1))));
      for (int i = 3; i <= n; ++i) add_cube(M, make_differential(bit(f(1)) | bit(f(i)), g(2)), G & ~bit(g(2)));
      add_cube(M, make_differential(bit(f(1)) | bit(f(2)), g(3)), G & ~bit(g(3)));
      return from_set(G, M);
    }
    case K::TypeB: {
      if (!s.present.empty()) throw Error(Errc::NoHandConstruction, "no matching when a dashed variable is present");
      std::set<EdgeRef> M;
      if (s.graph <= 29) {
        add_cube(M, make_differential(bit(2) | bit(3), 1), bit(4) | bit(5) | bit(6));
        add_cube(M, make_differential(bit(3) | bit(5), 1), bit(4) | bit(6));
        add_cube(M, make_homotopy(bit(3), 4), bit(1) | bit(6));
        add_cube(M, make_homotopy(0, 6), bit(1) | bit(2) | bit(4) | bit(5));
      } else {
        add_cube(M, make_differential(bit(2) | bit(3), 1), bit(4) | bit(5) | bit(6));
        add_cube(M, make_homotopy(bit(3), 4), bit(1) | bit(5) | bit(6));
        add_cube(M, make_homotopy(0, 6), bit(1) | bit(2) | bit(4) | bit(5));
      }
      return from_set(bit(4) | bit(6), M);
    }
  }
  throw Error(Errc::BadParameters, "unknown family");
}

Mask family_theta(const FamilySpec& s) {
  check_params(s);
  switch (s.kind) {
    case K::CycleEdgeIdeal:
    case K::CycleFiber: return odd_mask(s.n);
    case K::DoubleBroom:
    case K::WhiskeredTriangle: return bit(1) | bit(3);
    case K::DeltaN: return full_mask(s.n);
    case K::TypeB: return s.graph <= 29 ? 0 : bit(2) | bit(3);
  }
  return 0;
}

std::string family_name(const FamilySpec& s) {
  auto list = [](const std::vector<int>& v) {
    std::string r;
    for (int x : v) r += (r.empty() ? "" : ",") + std::to_string(x);
    return r;
  };
  switch (s.kind) {
    case K::CycleEdgeIdeal: return "cycle:" + std::to_string(s.n);
    case K::CycleFiber: return "cyclefiber:" + std::to_string(s.n) + (s.singletons ? ":" + list(members(s.singletons)) : "");
    case K::DoubleBroom:
    case K::WhiskeredTriangle:
      return std::string(s.kind == K::DoubleBroom ? "db:" : "wt:") + std::to_string(s.a) + "," + std::to_string(s.b) +
             (s.with_f2 ? ":f2" : "");
    case K::DeltaN: return "delta:" + std::to_string(s.n);
    case K::TypeB: {
      std::string r = "typeb:" + std::to_string(s.graph);
      if (!s.present.empty()) {
        r += ":";
        for (std::size_t k = 0; k < s.present.size(); ++k) r += (k ? "," : "") + type_label(s.present[k]).substr(1);
      }
      return r;
    }
  }
  return "?";
}

FamilySpec parse_family(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ':')) parts.push_back(tok);
  if (parts.size() < 2 || parts.size() > 3) throw Error(Errc::BadInput, "family spec must look like kind:params[:extra]");
  FamilySpec s;
  const std::string& kind = parts[0];
  auto ints = parse_ints(parts[1]);
  auto need = [&](std::size_t k) {
    if (ints.size() != k) throw Error(Errc::BadInput, "wrong number of parameters in '" + text + "'");
  };
  if (kind == "cycle" || kind == "cyclefiber") {
    need(1);
    s.kind = kind == "cycle" ? K::CycleEdgeIdeal : K::CycleFiber;
    s.n = ints[0];
    if (parts.size() == 3) {
      if (s.kind == K::CycleEdgeIdeal) throw Error(Errc::BadInput, "cycle takes no extra part; use cyclefiber");
      for (int i : parse_ints(parts[2])) {
        if (i < 1 || i > kMaxStructuralN) throw Error(Errc::BadParameters, "singleton index out of range");
        s.singletons |= bit(i);
      }
    }
  } else if (kind == "db" || kind == "wt") {
    need(2);
    s.kind = kind == "db" ? K::DoubleBroom : K::WhiskeredTriangle;
    s.a = ints[0];
    s.b = ints[1];
    if (parts.size() == 3) {
      if (parts[2] != "f2") throw Error(Errc::BadInput, "broom extra part must be 'f2'");
      s.with_f2 = true;
    }
  } else if (kind == "delta") {
    need(1);
    s.kind = K::DeltaN;
    s.n = ints[0];
    if (parts.size() == 3) throw Error(Errc::BadInput, "delta takes no extra part");
  } else if (kind == "typeb") {
    need(1);
    s.kind = K::TypeB;
    s.graph = ints[0];
    if (parts.size() == 3) {
      std::stringstream ps(parts[2]);
      while (std::getline(ps, tok, ','))
        if (!tok.empty()) s.present.push_back(digits_mask(tok));
    }
  } else {
    throw Error(Errc::BadInput, "unknown family kind '" + kind + "'");
  }
  check_params(s);
  return s;
}

const std::vector<CatalogEntry>& graph_catalog() {
  static const std::vector<CatalogEntry> cat = [] {
    using E = std::vector<std::pair<int, int>>;
    const std::vector<E> edges = {
        {{1, 4}, {2, 3}, {3, 5}, {4, 5}, {5, 6}},
        {{1, 4}, {2, 3}, {3, 4}, {3, 5}, {4, 5}, {5, 6}},
        {{1, 2}, {1, 4}, {2, 3}, {3, 5}, {4, 5}, {5, 6}},
        {{1, 2}, {1, 4}, {2, 3}, {3, 4}, {3, 5}, {4, 5}, {5, 6}},
        {{1, 2}, {1, 4}, {2, 3}, {3, 4}, {3, 5}, {5, 6}},
        {{1, 4}, {1, 6}, {2, 3}, {2, 6}, {3, 4}, {4, 5}, {5, 6}},
        {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}},
        {{1, 2}, {1, 3}, {2, 3}, {3, 4}, {4, 5}, {5, 6}},
        {{1, 5}, {2, 3}, {2, 4}, {3, 4}, {3, 5}, {4, 5}, {5, 6}},
        {{1, 4}, {1, 5}, {2, 4}, {2, 5}, {3, 4}, {3, 5}, {3, 6}, {4, 5}},
        {{1, 2}, {1, 3}, {1, 4}, {2, 4}, {2, 5}, {3, 4}, {3, 5}, {4, 5}, {5, 6}},
        {{1, 2}, {1, 3}, {2, 4}, {2, 5}, {3, 4}, {3, 5}, {4, 5}, {4, 6}, {5, 6}},
        {{1, 2}, {1, 3}, {1, 5}, {2, 3}, {2, 4}, {3, 4}, {3, 5}, {4, 5}, {4, 6}, {5, 6}},
        {{1, 2}, {1, 4}, {1, 5}, {2, 4}, {2, 5}, {3, 4}, {3, 5}, {3, 6}, {4, 5}},
        {{1, 2}, {1, 5}, {2, 4}, {2, 5}, {3, 4}, {3, 5}, {3, 6}, {4, 5}, {4, 6}},
        {{1, 2}, {1, 4}, {1, 5}, {2, 4}, {2, 5}, {3, 4}, {3, 5}, {3, 6}, {4, 6}, {5, 6}},
        {{1, 2}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}, {3, 4}, {3, 5}, {3, 6}, {4, 6}, {5, 6}},
        {{1, 2}, {1, 3}, {1, 4}, {1, 5}, {2, 4}, {2, 5}, {2, 6}, {3, 4}, {3, 5}, {3, 6}, {4, 6}, {5, 6}},
        {{1, 5}, {1, 6}, {2, 3}, {2, 4}, {3, 4}, {3, 5}, {4, 5}, {5, 6}},
        {{1, 4}, {1, 5}, {2, 3}, {2, 4}, {3, 4}, {3, 5}, {4, 5}, {5, 6}},
        {{1, 3}, {1, 4}, {2, 3}, {2, 4}, {2, 5}, {3, 5}, {4, 5}, {5, 6}},
        {{1, 2}, {1, 5}, {2, 5}, {3, 4}, {3, 5}, {4, 5}, {4, 6}},
        {{1, 2}, {1, 3}, {2, 3}, {2, 4}, {2, 5}, {3, 4}, {3, 5}, {4, 5}, {4, 6}, {5, 6}},
        {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {2, 5}, {3, 4}, {3, 5}, {4, 5}, {5, 6}},
        {{1, 2}, {1, 4}, {1, 5}, {2, 3}, {2, 5}, {3, 5}, {3, 6}, {4, 5}, {4, 6}},
        {{1, 4}, {1, 6}, {2, 3}, {2, 4}, {2, 5}, {3, 4}, {3, 5}, {5, 6}},
        {{1, 2}, {1, 3}, {1, 5}, {2, 3}, {2, 4}, {2, 5}, {3, 5}, {3, 6}, {4, 5}},
        {{1, 2}, {1, 3}, {1, 5}, {2, 4}, {2, 5}, {3, 5}, {3, 6}, {4, 5}},
        {{1, 2}, {1, 3}, {1, 5}, {2, 4}, {2, 5}, {3, 6}, {4, 5}},
        {{1, 2}, {1, 3}, {1, 5}, {2, 3}, {2, 4}, {2, 5}, {3, 5}, {3, 6}},
        {{1, 2}, {1, 3}, {1, 5}, {2, 4}, {2, 5}, {3, 5}, {3, 6}},
        {{1, 2}, {1, 3}, {2, 3}, {2, 4}, {2, 5}, {3, 5}, {3, 6}},
        {{1, 2}, {1, 3}, {2, 4}, {2, 5}, {3, 5}, {3, 6}},
        {{1, 2}, {1, 3}, {1, 5}, {2, 3}, {2, 4}, {2, 5}, {3, 6}},
        {{1, 2}, {1, 3}, {1, 5}, {2, 4}, {2, 5}, {3, 6}},
        {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {3, 5}, {3, 6}},
        {{1, 2}, {1, 4}, {2, 3}, {3, 5}, {3, 6}},
        {{1, 2}, {1, 3}, {1, 5}, {1, 6}, {2, 3}, {3, 4}, {3, 5}, {4, 5}, {5, 6}},
        {{1, 2}, {1, 3}, {1, 6}, {2, 3}, {3, 4}, {3, 5}, {4, 5}, {5, 6}},
        {{1, 2}, {1, 6}, {2, 3}, {3, 4}, {3, 5}, {4, 5}, {5, 6}},
        {{1, 2}, {1, 6}, {2, 3}, {3, 4}, {4, 5}, {5, 6}},
    };
    std::vector<CatalogEntry> c;
    for (int id = 1; id <= 41; ++id) {
      CatalogEntry e;
      e.id = id;
      e.edges = edges[id - 1];
      if (id <= 6) e.type = "F1";
      else if (id <= 8) e.type = "F2";
      else if (id <= 19) e.type = "F3";
      else if (id <= 26) e.type = "F4";
      else if (id <= 35) e.type = "B";
      else if (id <= 37) e.type = "A";
      else e.type = "C";
      if (id >= 27 && id <= 29) e.dashed = {bit(1), bit(1) | bit(2), bit(1) | bit(5)};
      else if (id == 30 || id == 31 || id == 34 || id == 35) e.dashed = {bit(1), bit(1) | bit(5)};
      else if (id == 32 || id == 33) e.dashed = {bit(1)};
      else if (id == 36 || id == 37) e.dashed = {bit(2)};
      else if (id >= 38) e.dashed = {bit(2), bit(4), bit(6)};
      c.push_back(std::move(e));
    }
    return c;
  }();
  return cat;
}

const CatalogEntry& catalog_entry(int id) {
  if (id < 1 || id > 41) throw Error(Errc::BadParameters, "catalog graphs are numbered 1..41");
  return graph_catalog()[id - 1];
}

SquareFreeIdeal catalog_representative(int id, const std::vector<Mask>& present) {
  const auto& e = catalog_entry(id);
  std::set<Mask> omit(e.dashed.begin(), e.dashed.end());
  for (Mask m : present) {
    if (!omit.count(m)) throw Error(Errc::BadParameters, type_label(m) + " is not a dashed variable of graph " + std::to_string(id));
    omit.erase(m);
  }
  GcdGraph G = graph_from_edges(6, e.edges);
  SquareFreeIdeal I = clique_ideal_without(G, omit);
  if (!(build_gcd_graph(I) == G)) throw Error(Errc::BadParameters, "representative does not realize graph " + std::to_string(id));
  return I;
}

VarietyExpr catalog_expected(int id, const std::vector<Mask>& present) {
  const auto& e = catalog_entry(id);
  if (e.type[0] == 'F' || !present.empty()) return VarietyExpr::full(6);
  if (e.type == "A") return VarietyExpr::from_atoms(6, {Atom{bit(4), {}}, Atom{bit(5) | bit(6), {}}});
  if (e.type == "B") return VarietyExpr::hypersurface(6, bit(4) | bit(6));
  return VarietyExpr::hypersurface(6, bit(2) | bit(4) | bit(6));
}

std::vector<std::pair<int, std::vector<Mask>>> typeb_present_cases() {
  const Mask x1 = bit(1), x12 = bit(1) | bit(2), x15 = bit(1) | bit(5);
  // x5 is already present in every representative, so "x1 and x5" adds x1 alone.
  return {{27, {x1}},  {27, {x15}}, {28, {x1}},  {28, {x12}}, {28, {x15}}, {29, {x1}},
          {29, {x15}}, {30, {x1}},  {30, {x15}}, {31, {x1}},  {31, {x15}}, {32, {x1}},
          {33, {x1}},  {34, {x1}},  {34, {x15}}, {35, {x1}},  {35, {x15}}};
}

std::vector<std::vector<int>> graph_automorphisms(const GcdGraph& G) {
  const int n = G.n;
  std::vector<int> perm(n);
  for (int k = 0; k < n; ++k) perm[k] = k + 1;
  std::vector<std::vector<int>> out;
  do {
    bool ok = true;
    for (int u = 1; u <= n && ok; ++u)
      for (int v = u + 1; v <= n && ok; ++v)
        if (G.has_edge(u, v) != G.has_edge(perm[u - 1], perm[v - 1])) ok = false;
    if (ok) out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

VarietyExpr fiber_expected(int id, const SquareFreeIdeal& I) {
  const auto& e = catalog_entry(id);
  GcdGraph G = graph_from_edges(6, e.edges);
  if (!(build_gcd_graph(I) == G)) throw Error(Errc::BadInput, "ideal is not in the fiber of graph " + std::to_string(id));
  if (e.type[0] == 'F') return VarietyExpr::full(6);
  if (id == 41) {
    Mask singles = 0;
    for (const auto& t : I.types())
      if (popcount(t.mask) == 1) singles |= t.mask;
    return cycle_fiber_expected(6, singles);
  }
  const VarietyExpr base = catalog_expected(id);
  for (const auto& perm : graph_automorphisms(G)) {
    bool clear = true;
    for (const auto& t : I.types()) {
      Mask img = 0;
      for (int k = 1; k <= 6; ++k)
        if (t.mask & bit(k)) img |= bit(perm[k - 1]);
      if (std::find(e.dashed.begin(), e.dashed.end(), img) != e.dashed.end()) clear = false;
    }
    if (!clear) continue;
    std::vector<int> inv(6);
    for (int k = 1; k <= 6; ++k) inv[perm[k - 1] - 1] = k;
    return relabel(base, inv);
  }
  return VarietyExpr::full(6);
}

}  // namespace suppvar
