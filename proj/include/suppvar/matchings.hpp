#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "suppvar/poly.hpp"
#include "suppvar/taylor.hpp"

namespace suppvar {

// A sigma-perfect matching: 2^{n-1} vertex-disjoint Taylor edges, homotopy indices inside sigma.
struct Matching {
  Mask sigma = 0;
  std::vector<EdgeRef> edges;
};

// Throws WrongCardinality, SharedVertex, MissingEdge or ForbiddenHomotopyIndex.
void verify_matching(const TaylorGraph& T, const Matching& M);

// Vertex k is matched edge k (its source is the column c_k, its target the row r_k).
struct AuxEdge {
  int from = 0;
  int to = 0;
  EdgeRef traversed;  // Taylor edge c_from -> r_to; the weight token is e_to^{-1} * traversed
};

struct AuxiliaryGraph {
  int n = 0;
  std::vector<EdgeRef> matched;
  std::vector<AuxEdge> edges;
  std::vector<std::vector<int>> out;  // adjacency by edge id
};

AuxiliaryGraph build_auxiliary(const TaylorGraph& T, const Matching& M);

inline constexpr std::size_t kDefaultCycleCap = 100000;

struct CycleCensus {
  std::vector<std::vector<int>> cycles;  // vertex sequences
  bool disjoint = true;
};

// Johnson's simple-cycle enumeration; throws CycleCapExceeded.
CycleCensus enumerate_cycles(const AuxiliaryGraph& A, std::size_t cap = kDefaultCycleCap);

struct TriangularityResult {
  bool triangular = false;
  std::vector<int> order;  // topological order when triangular
  Mask used_indices = 0;   // homotopy indices on matched edges
  CycleCensus census;      // when cyclic
};

TriangularityResult triangularity(const AuxiliaryGraph& A, std::size_t cycle_cap = kDefaultCycleCap);

// Edge color: D_i or H_i.
struct TypeColor {
  bool homotopy = false;
  int index = 0;
  bool operator==(const TypeColor&) const = default;
  auto operator<=>(const TypeColor&) const = default;
};
TypeColor type_color(const EdgeRef& e);
std::string color_name(const TypeColor& c);

struct ThetaDetermination {
  bool determined = false;
  std::map<Mask, std::vector<TypeColor>> classes;  // phi = theta & source -> colors seen
  bool triangular_by_lemma = false;               // |theta| = 2 and determined
};

// Throws ThetaTouchedByMatching if some matched edge uses an index of theta.
ThetaDetermination theta_determined(const Matching& M, Mask theta);

Poly matched_weight(int n, const EdgeRef& e);

// Determinant of T^M via disjoint cycle families of the auxiliary graph.
Poly determinant_via_cycles(const TaylorGraph& T, const Matching& M, std::size_t cycle_cap = kDefaultCycleCap,
                            std::size_t family_cap = 1000000);

// Maximum bipartite matching between parities (Hopcroft-Karp), restricted to differential edges
// plus homotopy edges with index in sigma.
std::optional<Matching> search_matching(const TaylorGraph& T, Mask sigma);

// Searches for a sigma-perfect matching whose auxiliary graph is acyclic. Budget counts DFS nodes
// per component; nullopt when the budget runs out or no such matching exists.
std::optional<Matching> search_triangular_matching(const TaylorGraph& T, Mask sigma,
                                                   std::uint64_t budget = 200000);

nlohmann::ordered_json matching_to_json(const Matching& M, int n);
Matching matching_from_json(const nlohmann::json& j);
std::string auxiliary_to_dot(const AuxiliaryGraph& A);

// Hypercube e (x) 2^lambda: the edge translated by every subset of lambda.
std::vector<EdgeRef> hypercube(const EdgeRef& e, Mask lambda);

}  // namespace suppvar
