#include "suppvar/gcd_graph.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

namespace suppvar {

std::vector<std::pair<int, int>> GcdGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (has_edge(i, j)) out.emplace_back(i, j);
  return out;
}

GcdGraph build_gcd_graph(const SquareFreeIdeal& I) {
  GcdGraph G;
  G.n = I.n();
  G.adj.assign(G.n, 0);
  for (const auto& t : I.types())
    for (int i : members(t.mask)) G.adj[i - 1] |= t.mask & ~bit(i);
  return G;
}

GcdGraph graph_from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  if (n < 1 || n > kMaxStructuralN) throw Error(Errc::BadParameters, "vertex count out of range");
  GcdGraph G;
  G.n = n;
  G.adj.assign(n, 0);
  for (auto [i, j] : edges) {
    if (i < 1 || j < 1 || i > n || j > n) throw Error(Errc::IndexOutOfRange, "edge endpoint", i, j);
    if (i == j) throw Error(Errc::BadInput, "self-loop at " + std::to_string(i), i);
    G.adj[i - 1] |= bit(j);
    G.adj[j - 1] |= bit(i);
  }
  return G;
}

Mask neighborhood(const GcdGraph& G, Mask sigma) {
  Mask out = 0;
  while (sigma) {
    int k = std::countr_zero(sigma);
    out |= G.adj[k];
    sigma &= sigma - 1;
  }
  return out;
}

bool CliqueComplex::contains(Mask m) const { return std::binary_search(faces.begin(), faces.end(), m); }

bool is_clique(const GcdGraph& G, Mask m) {
  for (int i : members(m))
    if (!subset(m & ~bit(i), G.adj[i - 1])) return false;
  return true;
}

namespace {

void bron_kerbosch(const GcdGraph& G, Mask R, Mask P, Mask X, std::vector<Mask>& out) {
  if (P == 0 && X == 0) {
    out.push_back(R);
    return;
  }
  Mask ux = P | X;
  int pivot = 0, best = -1;
  for (int u : members(ux)) {
    int c = popcount(P & G.adj[u - 1]);
    if (c > best) best = c, pivot = u;
  }
  Mask cand = P & ~G.adj[pivot - 1];
  for (int v : members(cand)) {
    Mask nv = G.adj[v - 1];
    bron_kerbosch(G, R | bit(v), P & nv, X & nv, out);
    P &= ~bit(v);
    X |= bit(v);
  }
}

}  // namespace

CliqueComplex clique_complex(const GcdGraph& G, std::size_t cap) {
  std::vector<Mask> maximal;
  bron_kerbosch(G, 0, full_mask(G.n), 0, maximal);
  std::unordered_set<Mask> seen;
  for (Mask c : maximal) {
    // Every nonempty subset of a clique is a face.
    for (Mask s = c; s; s = (s - 1) & c) {
      if (seen.insert(s).second && seen.size() > cap)
        throw Error(Errc::FaceBudgetExceeded, "clique complex exceeds " + std::to_string(cap) + " faces");
    }
  }
  CliqueComplex K;
  K.n = G.n;
  K.faces.assign(seen.begin(), seen.end());
  std::sort(K.faces.begin(), K.faces.end());
  return K;
}

bool PresenceConstraint::satisfied_by(const std::vector<Mask>& types) const {
  auto present = [&](Mask m) { return std::find(types.begin(), types.end(), m) != types.end(); };
  if (kind == Kind::Forced) return present(forced);
  for (const auto& opt : options)
    if (std::all_of(opt.begin(), opt.end(), present)) return true;
  return false;
}

std::vector<PresenceConstraint> presence_constraints(const GcdGraph& G) {
  std::vector<PresenceConstraint> out;
  auto forced = [&](Mask m) {
    PresenceConstraint c;
    c.kind = PresenceConstraint::Kind::Forced;
    c.forced = m;
    out.push_back(c);
  };
  for (auto [i, j] : G.edges())
    if ((G.adj[i - 1] & G.adj[j - 1]) == 0) forced(bit(i) | bit(j));
  for (int l = 1; l <= G.n; ++l)
    if (G.degree(l) <= 1) forced(bit(l));
  for (int l = 1; l <= G.n; ++l) {
    if (G.degree(l) != 2) continue;
    auto nb = members(G.adj[l - 1]);
    int i = nb[0], j = nb[1];
    PresenceConstraint c;
    c.kind = PresenceConstraint::Kind::Disjunction;
    c.options.push_back({bit(i) | bit(l), bit(j) | bit(l)});
    if (G.has_edge(i, j)) c.options.push_back({bit(l), bit(i) | bit(j) | bit(l)});
    out.push_back(c);
  }
  return out;
}

std::vector<Mask> connected_components(const GcdGraph& G) {
  std::vector<Mask> comps;
  Mask seen = 0;
  for (int s = 1; s <= G.n; ++s) {
    if (has(seen, s)) continue;
    Mask comp = bit(s), frontier = bit(s);
    while (frontier) {
      Mask next = neighborhood(G, frontier) & ~comp;
      comp |= next;
      frontier = next;
    }
    seen |= comp;
    comps.push_back(comp);
  }
  return comps;
}

bool is_triangle_free(const GcdGraph& G) {
  for (auto [i, j] : G.edges())
    if (G.adj[i - 1] & G.adj[j - 1]) return false;
  return true;
}

std::string gcd_graph_to_dot(const GcdGraph& G, const DotStyle& style) {
  std::ostringstream os;
  os << "graph G {\n";
  for (int i = 1; i <= G.n; ++i) {
    os << "  " << i << " [label=\"" << i << "\"";
    if (auto it = style.vertex_attrs.find(i); it != style.vertex_attrs.end()) os << ", " << it->second;
    os << "];\n";
  }
  for (auto [i, j] : G.edges()) {
    os << "  " << i << " -- " << j;
    if (auto it = style.edge_attrs.find({i, j}); it != style.edge_attrs.end()) os << " [" << it->second << "]";
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace suppvar
