#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"
#include "suppvar/gcd_graph.hpp"

namespace suppvar {

enum class EdgeKind : std::uint8_t { Differential, Homotopy };

struct EdgeRef {
  Mask source = 0;
  Mask target = 0;
  int index = 0;  // 1-based generator
  EdgeKind kind = EdgeKind::Differential;
  int sign = 1;

  Mask lower() const { return source & target; }
  bool is_homotopy() const { return kind == EdgeKind::Homotopy; }
  bool operator==(const EdgeRef&) const = default;
  auto key() const { return std::tuple(source, index, kind == EdgeKind::Homotopy); }
  bool operator<(const EdgeRef& o) const { return key() < o.key(); }
};

// d_{sigma,i}: v_{sigma+i} -> v_sigma; h_{sigma,i}: v_sigma -> v_{sigma+i}.
EdgeRef make_differential(Mask sigma, int i);
EdgeRef make_homotopy(Mask sigma, int i);

std::string edge_label(const EdgeRef& e, int n);  // e.g. "d_{24,3}"

inline constexpr std::size_t kDefaultEdgeBudget = std::size_t{1} << 23;

class TaylorGraph {
 public:
  int n() const { return n_; }
  std::uint32_t vertex_count() const { return std::uint32_t{1} << n_; }
  const std::vector<EdgeRef>& edges() const { return edges_; }
  std::span<const EdgeRef> out_edges(Mask v) const {
    return {edges_.data() + out_off_[v], edges_.data() + out_off_[v + 1]};
  }
  // Indices into edges().
  std::span<const std::uint32_t> in_edge_ids(Mask v) const {
    return {in_ids_.data() + in_off_[v], in_ids_.data() + in_off_[v + 1]};
  }
  int out_degree(Mask v) const { return static_cast<int>(out_off_[v + 1] - out_off_[v]); }
  int in_degree(Mask v) const { return static_cast<int>(in_off_[v + 1] - in_off_[v]); }
  int degree(Mask v) const { return out_degree(v) + in_degree(v); }

  std::optional<EdgeRef> find_edge(Mask source, Mask target) const;
  bool contains(const EdgeRef& e) const;

  std::size_t differential_count() const { return n_diff_; }
  std::size_t homotopy_count() const { return edges_.size() - n_diff_; }

  // Connected components of the underlying undirected graph (T is block diagonal over these).
  int component_of(Mask v) const { return comp_of_[v]; }
  const std::vector<std::vector<Mask>>& components() const { return comps_; }

  const GcdGraph& gcd() const { return G_; }

  friend TaylorGraph build_taylor(const SquareFreeIdeal& I, std::size_t edge_budget);

 private:
  int n_ = 0;
  GcdGraph G_;
  std::vector<EdgeRef> edges_;  // sorted by (source, index)
  std::vector<std::uint32_t> out_off_, in_off_, in_ids_;
  std::size_t n_diff_ = 0;
  std::vector<int> comp_of_;
  std::vector<std::vector<Mask>> comps_;
};

TaylorGraph build_taylor(const SquareFreeIdeal& I, std::size_t edge_budget = kDefaultEdgeBudget);

inline constexpr int kDefaultRankCapN = 12;

// Weight of an edge at the point a (entries already reduced mod p).
std::uint32_t edge_value(const EdgeRef& e, const std::vector<std::uint32_t>& a, std::uint32_t p);

struct EvaluatedMatrix {
  std::uint32_t p = 0;
  std::vector<std::uint32_t> point;
  std::vector<std::tuple<Mask, Mask, std::uint32_t>> entries;  // (row = target, col = source, value)
};

EvaluatedMatrix evaluate_matrix(const TaylorGraph& T, const std::vector<std::uint32_t>& a, std::uint32_t p);
bool squares_to_zero(const EvaluatedMatrix& M, int n);

// Point coordinates are reduced mod p before use.
int evaluate_rank(const TaylorGraph& T, const std::vector<std::uint32_t>& a, std::uint32_t p,
                  int rank_cap_n = kDefaultRankCapN);

bool is_taylor_subgraph(const TaylorGraph& first, const TaylorGraph& second);

std::string taylor_to_dot(const TaylorGraph& T);
nlohmann::ordered_json edge_to_json(const EdgeRef& e, int n);
EdgeRef edge_from_json(const nlohmann::json& j);
nlohmann::ordered_json taylor_to_json(const TaylorGraph& T);

}  // namespace suppvar
