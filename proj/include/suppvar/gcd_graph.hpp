#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "suppvar/ideal.hpp"

namespace suppvar {

struct GcdGraph {
  int n = 0;
  std::vector<Mask> adj;  // adj[i-1] = neighbors of f_i

  Mask neighbors(int i) const { return adj.at(i - 1); }
  bool has_edge(int i, int j) const { return has(adj.at(i - 1), j); }
  int degree(int i) const { return popcount(adj.at(i - 1)); }
  std::vector<std::pair<int, int>> edges() const;
  bool operator==(const GcdGraph&) const = default;
};

GcdGraph build_gcd_graph(const SquareFreeIdeal& I);
GcdGraph graph_from_edges(int n, const std::vector<std::pair<int, int>>& edges);

Mask neighborhood(const GcdGraph& G, Mask sigma);

struct CliqueComplex {
  int n = 0;
  std::vector<Mask> faces;  // sorted ascending, nonempty faces only
  bool contains(Mask m) const;
};

inline constexpr std::size_t kDefaultFaceCap = std::size_t{1} << 20;

CliqueComplex clique_complex(const GcdGraph& G, std::size_t cap = kDefaultFaceCap);
bool is_clique(const GcdGraph& G, Mask m);

struct PresenceConstraint {
  enum class Kind { Forced, Disjunction };
  Kind kind = Kind::Forced;
  Mask forced = 0;                        // Forced
  std::vector<std::vector<Mask>> options;  // Disjunction: at least one option fully present
  bool satisfied_by(const std::vector<Mask>& types) const;
};

std::vector<PresenceConstraint> presence_constraints(const GcdGraph& G);

// Vertex masks of the connected components, ordered by lowest member.
std::vector<Mask> connected_components(const GcdGraph& G);

bool is_triangle_free(const GcdGraph& G);

struct DotStyle {
  std::map<int, std::string> vertex_attrs;                   // e.g. {1, "style=dashed"}
  std::map<std::pair<int, int>, std::string> edge_attrs;     // keyed with i < j
};

std::string gcd_graph_to_dot(const GcdGraph& G, const DotStyle& style = {});

}  // namespace suppvar
