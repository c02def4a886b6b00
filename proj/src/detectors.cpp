#include "suppvar/detectors.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace suppvar {

const char* witness_name(FullSupportWitness::Kind k) {
  using K = FullSupportWitness::Kind;
  switch (k) {
    case K::IsolatedVertex: return "IsolatedVertex";
    case K::SourcesVsNeighbors: return "SourcesVsNeighbors";
    case K::SinksVsSources: return "SinksVsSources";
    case K::OddAlternatingWalk: return "OddAlternatingWalk";
    case K::Degree3Isolated: return "Degree3Isolated";
    case K::EdgePairFamily: return "EdgePairFamily";
    case K::EdgesVsTriangles: return "EdgesVsTriangles";
    case K::HighDegreeVertex: return "HighDegreeVertex";
    case K::ComponentImbalance: return "ComponentImbalance";
  }
  return "Unknown";
}

namespace {

std::vector<Mask> in_neighbors(const TaylorGraph& T, Mask v) {
  std::vector<Mask> out;
  for (auto id : T.in_edge_ids(v)) out.push_back(T.edges()[id].source);
  return out;
}

std::vector<Mask> out_neighbors(const TaylorGraph& T, Mask v) {
  std::vector<Mask> out;
  for (const auto& e : T.out_edges(v)) out.push_back(e.target);
  return out;
}

bool differentially_isolated(const TaylorGraph& T, Mask v) {
  for (const auto& e : T.out_edges(v))
    if (!e.is_homotopy()) return false;
  for (auto id : T.in_edge_ids(v))
    if (!T.edges()[id].is_homotopy()) return false;
  return true;
}

// Largest-deficiency Hall violators: maximum matching from `left` into their neighbors, then the
// alternating-reachable set from each unmatched left vertex.
std::vector<std::pair<std::vector<Mask>, std::vector<Mask>>> hall_violators(
    const std::vector<Mask>& left, const std::function<std::vector<Mask>(Mask)>& nbrs, int limit) {
  std::vector<std::vector<Mask>> adj(left.size());
  for (std::size_t k = 0; k < left.size(); ++k) {
    adj[k] = nbrs(left[k]);
    std::sort(adj[k].begin(), adj[k].end());
  }
  std::map<Mask, int> match_r;  // right vertex -> left index
  std::vector<int> match_l(left.size(), -1);
  std::vector<char> seen;
  std::map<Mask, int> stamp;
  int round = 0;
  std::function<bool(int)> augment = [&](int u) -> bool {
    for (Mask r : adj[u]) {
      if (stamp[r] == round) continue;
      stamp[r] = round;
      auto it = match_r.find(r);
      if (it == match_r.end() || augment(it->second)) {
        match_r[r] = u;
        match_l[u] = static_cast<int>(r);
        return true;
      }
    }
    return false;
  };
  std::vector<char> matched(left.size(), 0);
  for (std::size_t u = 0; u < left.size(); ++u) {
    ++round;
    matched[u] = augment(static_cast<int>(u));
  }
  std::vector<std::pair<std::vector<Mask>, std::vector<Mask>>> out;
  for (std::size_t u = 0; u < left.size() && static_cast<int>(out.size()) < limit; ++u) {
    if (matched[u]) continue;
    std::set<int> S{static_cast<int>(u)};
    std::set<Mask> N;
    std::vector<int> stack{static_cast<int>(u)};
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (Mask r : adj[x]) {
        if (!N.insert(r).second) continue;
        auto it = match_r.find(r);
        if (it != match_r.end() && S.insert(it->second).second) stack.push_back(it->second);
      }
    }
    std::vector<Mask> sv;
    for (int k : S) sv.push_back(left[k]);
    std::sort(sv.begin(), sv.end());
    out.emplace_back(sv, std::vector<Mask>(N.begin(), N.end()));
  }
  return out;
}

std::vector<Mask> graph_edges_as_masks(const GcdGraph& G) {
  std::vector<Mask> out;
  for (auto [i, j] : G.edges()) out.push_back(bit(i) | bit(j));
  return out;
}

std::vector<Mask> graph_triangles(const GcdGraph& G) {
  std::vector<Mask> out;
  for (auto [i, j] : G.edges())
    for (int k : members(G.adj[i - 1] & G.adj[j - 1]))
      if (k > j) out.push_back(bit(i) | bit(j) | bit(k));
  return out;
}

bool degree3_condition(const GcdGraph& G, Mask sigma) {
  const Mask full = full_mask(G.n);
  if (sigma == 0 || neighborhood(G, sigma) != full) return false;
  for (int i : members(sigma))
    if ((G.adj[i - 1] & ~sigma) == 0) return false;
  for (int j : members(full & ~sigma))
    if (popcount(G.adj[j - 1] & sigma) != 1) return false;
  return true;
}

bool edge_pair_condition(const GcdGraph& G, const std::vector<Mask>& sig) {
  if (sig.size() < 2) return false;
  Mask theta = 0;
  for (Mask s : sig) {
    if (popcount(s) != 2) return false;
    auto ij = members(s);
    if (!G.has_edge(ij[0], ij[1])) return false;
    theta |= s;
  }
  if (neighborhood(G, theta) != full_mask(G.n)) return false;
  for (std::size_t x = 0; x < sig.size(); ++x)
    for (std::size_t y = x + 1; y < sig.size(); ++y)
      if (neighborhood(G, sig[x]) & neighborhood(G, sig[y])) return false;
  for (Mask s : sig) {
    Mask ns = neighborhood(G, s);
    for (int l : members(ns & ~s))
      if (subset(G.adj[l - 1], ns)) return false;
  }
  return true;
}

// Edge lookups that bypass the adjacency lists, for re-verification.
struct Probe {
  const TaylorGraph& T;
  int n;
  std::vector<EdgeRef> out(Mask v) const {
    std::vector<EdgeRef> r;
    for (int i = 1; i <= n; ++i)
      if (auto e = T.find_edge(v, v ^ bit(i))) r.push_back(*e);
    return r;
  }
  std::vector<EdgeRef> in(Mask v) const {
    std::vector<EdgeRef> r;
    for (int i = 1; i <= n; ++i)
      if (auto e = T.find_edge(v ^ bit(i), v)) r.push_back(*e);
    return r;
  }
};

}  // namespace

std::vector<Mask> find_isolated(const TaylorGraph& T) {
  std::vector<Mask> out;
  for (Mask v = 0; v < T.vertex_count(); ++v)
    if (T.degree(v) == 0) out.push_back(v);
  return out;
}

std::vector<ContainmentCertificate> find_homotopy_sources_sinks(const TaylorGraph& T, const GcdGraph& G) {
  std::vector<ContainmentCertificate> out;
  const Mask full = full_mask(T.n());
  for (Mask v = 0; v < T.vertex_count(); ++v) {
    if (!differentially_isolated(T, v)) continue;
    Mask nb = neighborhood(G, v);
    bool sink = (v | nb) == full;
    bool source = subset(v, nb);
    if (!sink && !source) continue;
    Mask idx = 0;
    for (const auto& e : T.out_edges(v)) idx |= bit(e.index);
    for (auto id : T.in_edge_ids(v)) idx |= bit(T.edges()[id].index);
    out.push_back({v, sink ? ContainmentCertificate::Kind::Sink : ContainmentCertificate::Kind::Source, idx});
  }
  return out;
}

std::vector<FullSupportWitness> counting_detectors(const TaylorGraph& T, const GcdGraph& G, const DetectorCaps& caps) {
  using K = FullSupportWitness::Kind;
  std::vector<FullSupportWitness> out;
  const Mask full = full_mask(T.n());

  std::vector<Mask> sinks, sources;
  for (Mask v = 0; v < T.vertex_count(); ++v) {
    if (T.out_degree(v) == 0 && T.in_degree(v) > 0) sinks.push_back(v);
    if (T.in_degree(v) == 0 && T.out_degree(v) > 0) sources.push_back(v);
  }
  for (auto& [S, N] : hall_violators(sinks, [&](Mask v) { return in_neighbors(T, v); }, caps.max_per_kind))
    out.push_back({K::SinksVsSources, S, N, 0, 0});
  for (auto& [S, N] : hall_violators(sources, [&](Mask v) { return out_neighbors(T, v); }, caps.max_per_kind))
    out.push_back({K::SourcesVsNeighbors, S, N, 0, 0});

  std::vector<Mask> E, Tr;
  for (Mask e : graph_edges_as_masks(G))
    if (neighborhood(G, e) == full) E.push_back(e);
  for (Mask t : graph_triangles(G))
    if (neighborhood(G, t) == full) Tr.push_back(t);
  if (E.size() > Tr.size()) out.push_back({K::EdgesVsTriangles, E, Tr, 0, 0});

  int found = 0;
  const int n = T.n();
  for (Mask s = 1; s <= full && found < caps.max_per_kind; ++s)
    if (popcount(s) <= caps.degree3_max && degree3_condition(G, s)) {
      out.push_back({K::Degree3Isolated, {s}, {}, 0, 0});
      ++found;
    }

  auto edges = graph_edges_as_masks(G);
  found = 0;
  std::vector<Mask> pick;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (found >= caps.max_per_kind) return;
    if (pick.size() >= 2 && edge_pair_condition(G, pick)) {
      out.push_back({K::EdgePairFamily, pick, {}, 0, 0});
      ++found;
    }
    if (static_cast<int>(pick.size()) >= caps.edge_pair_max) return;
    for (std::size_t k = start; k < edges.size(); ++k) {
      bool disjoint = true;
      for (Mask q : pick)
        if (neighborhood(G, q) & neighborhood(G, edges[k])) disjoint = false;
      if (!disjoint) continue;
      pick.push_back(edges[k]);
      rec(k + 1);
      pick.pop_back();
    }
  };
  rec(0);

  if (n >= 2)
    for (int i = 1; i <= n; ++i)
      if (G.degree(i) == n - 1) {
        out.push_back({K::HighDegreeVertex, {}, {}, i, 0});
        break;
      }
  return out;
}

std::optional<FullSupportWitness> find_odd_alternating_walk(const TaylorGraph& T, int max_len) {
  if (max_len <= 0) max_len = 2 * T.n() + 1;
  for (int dir = 0; dir < 2; ++dir) {
    // dir 0: sinks joined through common in-neighbors; dir 1: sources through common out-neighbors.
    auto back = [&](Mask v) { return dir == 0 ? in_neighbors(T, v) : out_neighbors(T, v); };
    auto fwd = [&](Mask v) { return dir == 0 ? out_neighbors(T, v) : in_neighbors(T, v); };
    auto end_ok = [&](Mask v) {
      return dir == 0 ? (T.out_degree(v) == 0 && T.in_degree(v) == 1) : (T.in_degree(v) == 0 && T.out_degree(v) == 1);
    };
    auto back_deg = [&](Mask v) { return dir == 0 ? T.in_degree(v) : T.out_degree(v); };

    std::vector<Mask> walk;
    std::set<Mask> used;
    std::optional<FullSupportWitness> result;
    std::function<bool(Mask)> extend = [&](Mask hub) -> bool {
      // walk ends at `hub` (even position); try each next odd vertex.
      for (Mask odd : fwd(hub)) {
        if (used.count(odd)) continue;
        if (static_cast<int>(walk.size()) + 1 > max_len) return false;
        if (end_ok(odd) && walk.size() >= 2) {
          walk.push_back(odd);
          result = FullSupportWitness{FullSupportWitness::Kind::OddAlternatingWalk, walk, {}, 0, dir};
          return true;
        }
        if (back_deg(odd) != 2 || static_cast<int>(walk.size()) + 3 > max_len) continue;
        auto bn = back(odd);
        Mask next = bn[0] == hub ? bn[1] : bn[0];
        if (used.count(next)) continue;
        walk.push_back(odd);
        walk.push_back(next);
        used.insert(odd);
        used.insert(next);
        if (extend(next)) return true;
        used.erase(odd);
        used.erase(next);
        walk.pop_back();
        walk.pop_back();
      }
      return false;
    };
    for (Mask v = 0; v < T.vertex_count(); ++v) {
      if (!end_ok(v)) continue;
      Mask hub = back(v)[0];
      walk = {v, hub};
      used = {v, hub};
      if (extend(hub)) return result;
    }
  }
  return std::nullopt;
}

std::vector<FullSupportWitness> component_imbalances(const TaylorGraph& T, int limit) {
  std::vector<FullSupportWitness> out;
  for (const auto& comp : T.components()) {
    if (comp.size() < 2) continue;
    std::vector<Mask> even, odd;
    for (Mask v : comp) (popcount(v) & 1 ? odd : even).push_back(v);
    if (even.size() != odd.size()) {
      out.push_back({FullSupportWitness::Kind::ComponentImbalance, even, odd, 0, 0});
      if (static_cast<int>(out.size()) >= limit) break;
    }
  }
  return out;
}

std::vector<FullSupportWitness> detect_full(const TaylorGraph& T, const GcdGraph& G, const DetectorCaps& caps) {
  std::vector<FullSupportWitness> all;
  int k = 0;
  for (Mask v : find_isolated(T)) {
    if (k++ >= caps.max_per_kind) break;
    all.push_back({FullSupportWitness::Kind::IsolatedVertex, {v}, {}, 0, 0});
  }
  for (auto& w : counting_detectors(T, G, caps)) all.push_back(std::move(w));
  if (auto w = find_odd_alternating_walk(T, caps.walk_max_len)) all.push_back(*w);
  for (auto& w : component_imbalances(T, caps.max_per_kind)) all.push_back(std::move(w));
  std::vector<FullSupportWitness> checked;
  for (auto& w : all)
    if (check_witness(T, G, w)) checked.push_back(std::move(w));
  return checked;
}

bool check_containment(const TaylorGraph& T, const GcdGraph& G, const ContainmentCertificate& c) {
  const int n = T.n();
  Probe pr{T, n};
  auto outs = pr.out(c.vertex), ins = pr.in(c.vertex);
  for (const auto* list : {&outs, &ins})
    for (const auto& e : *list) {
      if (!e.is_homotopy()) return false;
      if (!has(c.indices, e.index)) return false;
    }
  Mask nb = 0;
  for (int i : members(c.vertex)) nb |= G.adj[i - 1];
  if (c.kind == ContainmentCertificate::Kind::Sink) return (c.vertex | nb) == full_mask(n) && outs.empty();
  return subset(c.vertex, nb) && ins.empty();
}

bool check_witness(const TaylorGraph& T, const GcdGraph& G, const FullSupportWitness& w) {
  using K = FullSupportWitness::Kind;
  const int n = T.n();
  const Mask full = full_mask(n);
  Probe pr{T, n};
  auto as_set = [](std::vector<Mask> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  };
  switch (w.kind) {
    case K::IsolatedVertex:
      return w.a.size() == 1 && w.a[0] <= full && pr.out(w.a[0]).empty() && pr.in(w.a[0]).empty();
    case K::SinksVsSources:
    case K::SourcesVsNeighbors: {
      bool sinks = w.kind == K::SinksVsSources;
      auto S = as_set(w.a);
      if (S.size() != w.a.size() || S.empty()) return false;
      std::vector<Mask> N;
      for (Mask s : S) {
        auto away = sinks ? pr.out(s) : pr.in(s);
        if (!away.empty()) return false;
        for (const auto& e : sinks ? pr.in(s) : pr.out(s)) N.push_back(sinks ? e.source : e.target);
      }
      N = as_set(N);
      return N == as_set(w.b) && S.size() > N.size();
    }
    case K::OddAlternatingWalk: {
      const auto& v = w.a;
      std::size_t s = v.size();
      if (s < 3 || s % 2 == 0 || as_set(v).size() != s) return false;
      bool sinkv = w.direction == 0;
      auto edge = [&](Mask from, Mask to) { return T.find_edge(from, to).has_value(); };
      for (std::size_t k = 1; k < s; k += 2) {
        // even positions (0-based odd k) are hubs joined to both odd neighbors.
        if (sinkv ? !(edge(v[k], v[k - 1]) && edge(v[k], v[k + 1])) : !(edge(v[k - 1], v[k]) && edge(v[k + 1], v[k])))
          return false;
      }
      for (std::size_t k = 0; k < s; k += 2) {
        int want = (k == 0 || k == s - 1) ? 1 : 2;
        int deg = static_cast<int>(sinkv ? pr.in(v[k]).size() : pr.out(v[k]).size());
        if (deg != want) return false;
      }
      for (Mask end : {v.front(), v.back()})
        if (!(sinkv ? pr.out(end).empty() : pr.in(end).empty())) return false;
      return true;
    }
    case K::Degree3Isolated:
      return w.a.size() == 1 && degree3_condition(G, w.a[0]);
    case K::EdgePairFamily:
      return edge_pair_condition(G, w.a);
    case K::EdgesVsTriangles: {
      std::vector<Mask> E, Tr;
      for (auto [i, j] : G.edges()) {
        Mask e = bit(i) | bit(j);
        if (neighborhood(G, e) == full) E.push_back(e);
        for (int k = j + 1; k <= n; ++k) {
          Mask t = e | bit(k);
          if (G.has_edge(i, k) && G.has_edge(j, k) && neighborhood(G, t) == full) Tr.push_back(t);
        }
      }
      return as_set(E) == as_set(w.a) && as_set(Tr) == as_set(w.b) && E.size() > Tr.size();
    }
    case K::HighDegreeVertex:
      return n >= 2 && w.vertex >= 1 && w.vertex <= n && G.degree(w.vertex) == n - 1;
    case K::ComponentImbalance: {
      auto all = as_set([&] {
        auto x = w.a;
        x.insert(x.end(), w.b.begin(), w.b.end());
        return x;
      }());
      if (all.size() != w.a.size() + w.b.size() || all.empty()) return false;
      for (Mask v : w.a)
        if (popcount(v) & 1) return false;
      for (Mask v : w.b)
        if (!(popcount(v) & 1)) return false;
      std::set<Mask> inside(all.begin(), all.end()), reached{all[0]};
      std::vector<Mask> stack{all[0]};
      while (!stack.empty()) {
        Mask x = stack.back();
        stack.pop_back();
        auto nb = pr.out(x);
        auto ni = pr.in(x);
        nb.insert(nb.end(), ni.begin(), ni.end());
        for (const auto& e : nb) {
          Mask y = e.source == x ? e.target : e.source;
          if (!inside.count(y)) return false;
          if (reached.insert(y).second) stack.push_back(y);
        }
      }
      return reached.size() == all.size() && w.a.size() != w.b.size();
    }
  }
  return false;
}

nlohmann::ordered_json witness_to_json(const FullSupportWitness& w, int n) {
  using K = FullSupportWitness::Kind;
  nlohmann::ordered_json j;
  j["lemma"] = witness_name(w.kind);
  auto strs = [&](const std::vector<Mask>& v) {
    auto arr = nlohmann::ordered_json::array();
    for (Mask m : v) arr.push_back(to_bstring(m, n));
    return arr;
  };
  switch (w.kind) {
    case K::IsolatedVertex: j["vertex"] = to_bstring(w.a.at(0), n); break;
    case K::SourcesVsNeighbors:
    case K::SinksVsSources:
      j["S"] = strs(w.a);
      j["N"] = strs(w.b);
      break;
    case K::OddAlternatingWalk:
      j["direction"] = w.direction == 0 ? "sink" : "source";
      j["walk"] = strs(w.a);
      break;
    case K::Degree3Isolated: j["sigma"] = to_bstring(w.a.at(0), n); break;
    case K::EdgePairFamily: j["edges"] = strs(w.a); break;
    case K::EdgesVsTriangles:
      j["E"] = strs(w.a);
      j["T"] = strs(w.b);
      break;
    case K::HighDegreeVertex: j["vertex"] = w.vertex; break;
    case K::ComponentImbalance:
      j["even"] = w.a.size();
      j["odd"] = w.b.size();
      j["representative"] = to_bstring(std::min(w.a.empty() ? ~Mask{0} : w.a[0], w.b.empty() ? ~Mask{0} : w.b[0]), n);
      break;
  }
  return j;
}

nlohmann::ordered_json containment_to_json(const ContainmentCertificate& c, int n) {
  nlohmann::ordered_json j;
  j["kind"] = c.kind == ContainmentCertificate::Kind::Sink ? "sink" : "source";
  j["vertex"] = to_bstring(c.vertex, n);
  j["indices"] = members(c.indices);
  return j;
}

}  // namespace suppvar
