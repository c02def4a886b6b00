#include "suppvar/matchings.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <sstream>

namespace suppvar {

void verify_matching(const TaylorGraph& T, const Matching& M) {
  const std::size_t want = std::size_t{1} << (T.n() - 1);
  if (M.edges.size() != want)
    throw Error(Errc::WrongCardinality,
                "matching has " + std::to_string(M.edges.size()) + " edges, expected " + std::to_string(want),
                static_cast<int>(M.edges.size()), static_cast<int>(want));
  std::vector<char> used(T.vertex_count(), 0);
  for (const auto& e : M.edges) {
    if (!T.contains(e)) throw Error(Errc::MissingEdge, edge_label(e, T.n()) + " is not an edge", e.index);
    if (e.is_homotopy() && !has(M.sigma, e.index))
      throw Error(Errc::ForbiddenHomotopyIndex, "homotopy index " + std::to_string(e.index) + " outside sigma", e.index);
    for (Mask v : {e.source, e.target}) {
      if (used[v]) throw Error(Errc::SharedVertex, to_bstring(v, T.n()) + " used twice", static_cast<int>(v));
      used[v] = 1;
    }
  }
}

AuxiliaryGraph build_auxiliary(const TaylorGraph& T, const Matching& M) {
  try {
    verify_matching(T, M);
  } catch (const Error& e) {
    throw Error(Errc::UnverifiedMatching, e.what());
  }
  AuxiliaryGraph A;
  A.n = T.n();
  A.matched = M.edges;
  const int N = static_cast<int>(M.edges.size());
  std::vector<int> row_of(T.vertex_count(), -1);
  for (int k = 0; k < N; ++k) row_of[M.edges[k].target] = k;
  A.out.assign(N, {});
  for (int k = 0; k < N; ++k)
    for (const auto& e : T.out_edges(M.edges[k].source)) {
      int j = row_of[e.target];
      if (j < 0 || j == k) continue;
      A.out[k].push_back(static_cast<int>(A.edges.size()));
      A.edges.push_back({k, j, e});
    }
  return A;
}

namespace {

// Tarjan SCCs of the subgraph induced by vertices >= lo.
std::vector<int> scc_ids(const AuxiliaryGraph& A, int lo) {
  const int N = static_cast<int>(A.out.size());
  std::vector<int> idx(N, -1), low(N, 0), comp(N, -1), stack;
  std::vector<char> on(N, 0);
  int counter = 0, ncomp = 0;
  // Iterative DFS to keep deep auxiliary graphs off the call stack.
  for (int s = lo; s < N; ++s) {
    if (idx[s] >= 0) continue;
    std::vector<std::pair<int, std::size_t>> work{{s, 0}};
    idx[s] = low[s] = counter++;
    stack.push_back(s);
    on[s] = 1;
    while (!work.empty()) {
      auto& [v, pos] = work.back();
      if (pos < A.out[v].size()) {
        int w = A.edges[A.out[v][pos++]].to;
        if (w < lo) continue;
        if (idx[w] < 0) {
          idx[w] = low[w] = counter++;
          stack.push_back(w);
          on[w] = 1;
          work.emplace_back(w, 0);
        } else if (on[w]) {
          low[v] = std::min(low[v], idx[w]);
        }
      } else {
        int done = v;
        work.pop_back();
        if (!work.empty()) low[work.back().first] = std::min(low[work.back().first], low[done]);
        if (low[done] == idx[done]) {
          int w;
          do {
            w = stack.back();
            stack.pop_back();
            on[w] = 0;
            comp[w] = ncomp;
          } while (w != done);
          ++ncomp;
        }
      }
    }
  }
  return comp;
}

}  // namespace

CycleCensus enumerate_cycles(const AuxiliaryGraph& A, std::size_t cap) {
  CycleCensus C;
  const int N = static_cast<int>(A.out.size());
  std::vector<char> blocked(N, 0);
  std::vector<std::vector<int>> B(N);
  std::vector<int> path;
  std::vector<int> comp;
  int s = 0;

  std::function<void(int)> unblock = [&](int u) {
    blocked[u] = 0;
    while (!B[u].empty()) {
      int w = B[u].back();
      B[u].pop_back();
      if (blocked[w]) unblock(w);
    }
  };
  std::function<bool(int)> circuit = [&](int v) -> bool {
    bool found = false;
    path.push_back(v);
    blocked[v] = 1;
    for (int id : A.out[v]) {
      int w = A.edges[id].to;
      if (w < s || comp[w] != comp[s]) continue;
      if (w == s) {
        C.cycles.push_back(path);
        if (C.cycles.size() > cap)
          throw Error(Errc::CycleCapExceeded, "more than " + std::to_string(cap) + " simple cycles");
        found = true;
      } else if (!blocked[w] && circuit(w)) {
        found = true;
      }
    }
    if (found) {
      unblock(v);
    } else {
      for (int id : A.out[v]) {
        int w = A.edges[id].to;
        if (w < s || comp[w] != comp[s]) continue;
        if (std::find(B[w].begin(), B[w].end(), v) == B[w].end()) B[w].push_back(v);
      }
    }
    path.pop_back();
    return found;
  };

  while (s < N) {
    comp = scc_ids(A, s);
    // least vertex lying in a nontrivial component
    std::vector<int> size(N + 1, 0);
    for (int v = s; v < N; ++v) ++size[comp[v]];
    int least = -1;
    for (int v = s; v < N && least < 0; ++v)
      if (size[comp[v]] > 1) least = v;
    if (least < 0) break;
    s = least;
    for (int v = s; v < N; ++v)
      if (comp[v] == comp[s]) {
        blocked[v] = 0;
        B[v].clear();
      }
    circuit(s);
    ++s;
  }

  std::vector<int> hits(N, 0);
  for (const auto& cyc : C.cycles)
    for (int v : cyc)
      if (++hits[v] > 1) C.disjoint = false;
  return C;
}

TriangularityResult triangularity(const AuxiliaryGraph& A, std::size_t cycle_cap) {
  TriangularityResult R;
  const int N = static_cast<int>(A.out.size());
  for (const auto& e : A.matched)
    if (e.is_homotopy()) R.used_indices |= bit(e.index);
  std::vector<int> indeg(N, 0);
  for (const auto& e : A.edges) ++indeg[e.to];
  std::deque<int> q;
  for (int v = 0; v < N; ++v)
    if (!indeg[v]) q.push_back(v);
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    R.order.push_back(v);
    for (int id : A.out[v])
      if (--indeg[A.edges[id].to] == 0) q.push_back(A.edges[id].to);
  }
  R.triangular = static_cast<int>(R.order.size()) == N;
  if (!R.triangular) {
    R.order.clear();
    R.census = enumerate_cycles(A, cycle_cap);
  }
  return R;
}

TypeColor type_color(const EdgeRef& e) { return {e.is_homotopy(), e.index}; }

std::string color_name(const TypeColor& c) { return (c.homotopy ? "H" : "D") + std::to_string(c.index); }

ThetaDetermination theta_determined(const Matching& M, Mask theta) {
  ThetaDetermination R;
  for (const auto& e : M.edges)
    if (has(theta, e.index))
      throw Error(Errc::ThetaTouchedByMatching, "matched edge uses index " + std::to_string(e.index), e.index);
  for (const auto& e : M.edges) {
    auto& v = R.classes[e.source & theta];
    auto c = type_color(e);
    if (std::find(v.begin(), v.end(), c) == v.end()) v.push_back(c);
  }
  R.determined = true;
  for (auto& [phi, v] : R.classes) {
    std::sort(v.begin(), v.end());
    if (v.size() != 1) R.determined = false;
  }
  R.triangular_by_lemma = R.determined && popcount(theta) == 2;
  return R;
}

Poly matched_weight(int n, const EdgeRef& e) {
  if (e.is_homotopy()) {
    Poly x = Poly::variable(n, e.index);
    return e.sign < 0 ? -x : x;
  }
  return Poly::constant(n, e.sign);
}

Poly determinant_via_cycles(const TaylorGraph& T, const Matching& M, std::size_t cycle_cap, std::size_t family_cap) {
  const int n = T.n();
  AuxiliaryGraph A = build_auxiliary(T, M);
  CycleCensus C = enumerate_cycles(A, cycle_cap);
  const int N = static_cast<int>(A.matched.size());
  std::vector<Poly> diag;
  for (const auto& e : A.matched) diag.push_back(matched_weight(n, e));

  std::map<std::pair<int, int>, EdgeRef> by_pair;
  for (const auto& e : A.edges) by_pair.emplace(std::pair(e.from, e.to), e.traversed);
  std::vector<Poly> term;
  for (const auto& cyc : C.cycles) {
    Poly t = Poly::constant(n, (cyc.size() % 2) ? 1 : -1);  // (-1)^{L-1}
    for (std::size_t k = 0; k < cyc.size(); ++k)
      t = t * matched_weight(n, by_pair.at({cyc[k], cyc[(k + 1) % cyc.size()]}));
    term.push_back(t);
  }

  std::vector<char> covered(N, 0);
  for (const auto& cyc : C.cycles)
    for (int v : cyc) covered[v] = 1;
  Poly det = Poly::constant(n, 1);
  for (int k = 0; k < N; ++k)
    if (!covered[k]) det = det * diag[k];

  if (C.disjoint) {
    for (std::size_t c = 0; c < C.cycles.size(); ++c) {
      Poly d = Poly::constant(n, 1);
      for (int v : C.cycles[c]) d = d * diag[v];
      det = det * (d + term[c]);
    }
    return det;
  }

  // Families of pairwise disjoint cycles among the covered vertices.
  std::vector<int> cov;
  for (int k = 0; k < N; ++k)
    if (covered[k]) cov.push_back(k);
  std::vector<char> taken(N, 0);
  std::size_t families = 0;
  Poly sum(n);
  std::function<void(std::size_t, const Poly&)> rec = [&](std::size_t start, const Poly& acc) {
    if (++families > family_cap)
      throw Error(Errc::OverlappingCyclesUnsupported, "more than " + std::to_string(family_cap) + " cycle families");
    Poly closed = acc;
    for (int v : cov)
      if (!taken[v]) closed = closed * diag[v];
    sum = sum + closed;
    for (std::size_t c = start; c < C.cycles.size(); ++c) {
      bool ok = true;
      for (int v : C.cycles[c])
        if (taken[v]) ok = false;
      if (!ok) continue;
      for (int v : C.cycles[c]) taken[v] = 1;
      rec(c + 1, acc * term[c]);
      for (int v : C.cycles[c]) taken[v] = 0;
    }
  };
  rec(0, Poly::constant(n, 1));
  return det * sum;
}

std::optional<Matching> search_matching(const TaylorGraph& T, Mask sigma) {
  const int n = T.n();
  if (n < 1) return std::nullopt;
  const std::uint32_t V = T.vertex_count();
  auto allowed = [&](const EdgeRef& e) { return !e.is_homotopy() || has(sigma, e.index); };

  // Left side: even vertices. Adjacency sorted by the odd endpoint.
  std::vector<std::vector<std::pair<Mask, EdgeRef>>> adj(V);
  for (const auto& e : T.edges()) {
    if (!allowed(e)) continue;
    Mask even = (popcount(e.source) & 1) ? e.target : e.source;
    Mask odd = even == e.source ? e.target : e.source;
    adj[even].emplace_back(odd, e);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end(), [](const auto& x, const auto& y) { return x.first < y.first; });

  const int INF = std::numeric_limits<int>::max();
  std::vector<int> match_l(V, -1), match_r(V, -1), dist(V, 0);
  std::vector<Mask> left;
  for (Mask v = 0; v < V; ++v)
    if (!(popcount(v) & 1)) left.push_back(v);

  auto bfs = [&]() {
    std::deque<Mask> q;
    bool found = false;
    for (Mask u : left) {
      if (match_l[u] < 0) {
        dist[u] = 0;
        q.push_back(u);
      } else {
        dist[u] = INF;
      }
    }
    while (!q.empty()) {
      Mask u = q.front();
      q.pop_front();
      for (const auto& [r, e] : adj[u]) {
        int w = match_r[r];
        if (w < 0) found = true;
        else if (dist[w] == INF) {
          dist[w] = dist[u] + 1;
          q.push_back(static_cast<Mask>(w));
        }
      }
    }
    return found;
  };
  std::function<bool(Mask)> dfs = [&](Mask u) -> bool {
    for (const auto& [r, e] : adj[u]) {
      int w = match_r[r];
      if (w < 0 || (dist[w] == dist[u] + 1 && dfs(static_cast<Mask>(w)))) {
        match_l[u] = static_cast<int>(r);
        match_r[r] = static_cast<int>(u);
        return true;
      }
    }
    dist[u] = INF;
    return false;
  };
  std::size_t size = 0;
  while (bfs())
    for (Mask u : left)
      if (match_l[u] < 0 && dfs(u)) ++size;
  if (size != left.size()) return std::nullopt;

  Matching M;
  M.sigma = sigma;
  for (Mask u : left) {
    Mask r = static_cast<Mask>(match_l[u]);
    M.edges.push_back(T.find_edge(u, r) ? *T.find_edge(u, r) : *T.find_edge(r, u));
  }
  std::sort(M.edges.begin(), M.edges.end());
  return M;
}

namespace {

struct LocalEdge {
  int u = 0, v = 0;  // column u, row v
  EdgeRef e;
  bool allowed = false;
};

// Matching search over one component; a pair is rejected as soon as it closes a cycle among the
// auxiliary edges of the pairs already chosen.
std::optional<std::vector<EdgeRef>> triangular_component(const TaylorGraph& T, const std::vector<Mask>& comp,
                                                         Mask sigma, std::uint64_t& budget) {
  const int K = static_cast<int>(comp.size());
  if (K % 2) return std::nullopt;
  std::map<Mask, int> local;
  for (int k = 0; k < K; ++k) local[comp[k]] = k;
  std::vector<LocalEdge> edges;
  for (Mask c : comp)
    for (const auto& e : T.out_edges(c)) {
      LocalEdge le;
      le.u = local.at(e.source);
      le.v = local.at(e.target);
      le.e = e;
      le.allowed = !e.is_homotopy() || has(sigma, e.index);
      edges.push_back(le);
    }
  std::vector<std::vector<int>> out(K), in(K);
  for (int id = 0; id < static_cast<int>(edges.size()); ++id) {
    out[edges[id].u].push_back(id);
    in[edges[id].v].push_back(id);
  }
  for (auto& o : out)
    std::sort(o.begin(), o.end(), [&](int a, int b) { return comp[edges[a].v] < comp[edges[b].v]; });
  for (auto& i : in)
    std::sort(i.begin(), i.end(), [&](int a, int b) { return comp[edges[a].u] < comp[edges[b].u]; });

  std::vector<int> status(K, 0);  // 0 free, 1 column, 2 row
  std::vector<int> partner(K, -1);
  std::vector<EdgeRef> chosen;
  int free_count = K;

  auto options = [&](int x, std::vector<int>* list) {
    int cnt = 0;
    for (int id : out[x])
      if (edges[id].allowed && status[edges[id].v] == 0) {
        ++cnt;
        if (list) list->push_back(id);
      }
    for (int id : in[x])
      if (edges[id].allowed && status[edges[id].u] == 0) {
        ++cnt;
        if (list) list->push_back(id);
      }
    return cnt;
  };

  // Pair p = (c, r) is identified by its column. Auxiliary edge p -> q iff c_p -> r_q, q != p.
  std::vector<int> seen(K, 0);
  int stamp = 0;
  auto closes_cycle = [&](int c, int r) {
    std::vector<char> pred(K, 0);
    bool any_pred = false;
    for (int id : in[r]) {
      int u = edges[id].u;
      if (status[u] == 1) pred[u] = 1, any_pred = true;
    }
    if (!any_pred) return false;
    ++stamp;
    std::vector<int> stack;
    for (int id : out[c]) {
      int w = edges[id].v;
      if (status[w] == 2) {
        int q = partner[w];
        if (seen[q] != stamp) seen[q] = stamp, stack.push_back(q);
      }
    }
    while (!stack.empty()) {
      int q = stack.back();
      stack.pop_back();
      if (pred[q]) return true;
      for (int id : out[q]) {
        int w = edges[id].v;
        if (status[w] != 2 || w == partner[q]) continue;
        int s = partner[w];
        if (seen[s] != stamp) seen[s] = stamp, stack.push_back(s);
      }
    }
    return false;
  };

  std::function<bool()> rec = [&]() -> bool {
    if (free_count == 0) return true;
    if (budget == 0) return false;
    --budget;
    int best = -1, best_cnt = std::numeric_limits<int>::max();
    for (int x = 0; x < K; ++x) {
      if (status[x]) continue;
      int cnt = options(x, nullptr);
      if (cnt == 0) return false;
      if (cnt < best_cnt) best_cnt = cnt, best = x;
    }
    std::vector<int> opts;
    options(best, &opts);
    for (int id : opts) {
      const auto& le = edges[id];
      if (closes_cycle(le.u, le.v)) continue;
      status[le.u] = 1;
      status[le.v] = 2;
      partner[le.u] = le.v;
      partner[le.v] = le.u;
      free_count -= 2;
      chosen.push_back(le.e);
      if (rec()) return true;
      chosen.pop_back();
      status[le.u] = status[le.v] = 0;
      partner[le.u] = partner[le.v] = -1;
      free_count += 2;
      if (budget == 0) return false;
    }
    return false;
  };
  if (!rec()) return std::nullopt;
  return chosen;
}

}  // namespace

std::optional<Matching> search_triangular_matching(const TaylorGraph& T, Mask sigma, std::uint64_t budget) {
  if (T.n() < 1) return std::nullopt;
  Matching M;
  M.sigma = sigma;
  for (const auto& comp : T.components()) {
    std::uint64_t b = budget;
    auto part = triangular_component(T, comp, sigma, b);
    if (!part) return std::nullopt;
    M.edges.insert(M.edges.end(), part->begin(), part->end());
  }
  std::sort(M.edges.begin(), M.edges.end());
  return M;
}

nlohmann::ordered_json matching_to_json(const Matching& M, int n) {
  nlohmann::ordered_json j;
  j["sigma"] = members(M.sigma);
  auto arr = nlohmann::ordered_json::array();
  for (const auto& e : M.edges) arr.push_back(edge_to_json(e, n));
  j["edges"] = arr;
  return j;
}

Matching matching_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("sigma") || !j.contains("edges"))
    throw Error(Errc::BadInput, "matching JSON needs sigma and edges");
  Matching M;
  for (int i : j["sigma"].get<std::vector<int>>()) {
    if (i < 1 || i > kMaxStructuralN) throw Error(Errc::IndexOutOfRange, "sigma index", i);
    M.sigma |= bit(i);
  }
  for (const auto& e : j["edges"]) M.edges.push_back(edge_from_json(e));
  return M;
}

std::string auxiliary_to_dot(const AuxiliaryGraph& A) {
  std::ostringstream os;
  auto tok = [](const EdgeRef& e) { return std::string(e.is_homotopy() ? "h" : "d") + std::to_string(e.index); };
  os << "digraph A {\n";
  for (const auto& e : A.matched)
    os << "  \"" << to_bstring(e.source, A.n) << "\" [label=\"" << to_bstring(e.source, A.n) << " " << tok(e)
       << "\"];\n";
  for (const auto& e : A.edges)
    os << "  \"" << to_bstring(A.matched[e.from].source, A.n) << "\" -> \"" << to_bstring(A.matched[e.to].source, A.n)
       << "\" [label=\"" << tok(A.matched[e.to]) << "^-1 " << tok(e.traversed) << "\"];\n";
  os << "}\n";
  return os.str();
}

std::vector<EdgeRef> hypercube(const EdgeRef& e, Mask lambda) {
  Mask lower = e.lower();
  if (lambda & (lower | bit(e.index))) throw Error(Errc::BadParameters, "hypercube directions overlap the edge");
  std::vector<EdgeRef> out;
  Mask s = 0;
  do {
    out.push_back(e.is_homotopy() ? make_homotopy(lower | s, e.index) : make_differential(lower | s, e.index));
    s = (s - lambda) & lambda;
  } while (s);
  return out;
}

}  // namespace suppvar
