#include "suppvar/taylor.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "suppvar/field.hpp"

namespace suppvar {

EdgeRef make_differential(Mask sigma, int i) {
  return {sigma | bit(i), sigma & ~bit(i), i, EdgeKind::Differential, sign_below(sigma, i)};
}

EdgeRef make_homotopy(Mask sigma, int i) {
  return {sigma & ~bit(i), sigma | bit(i), i, EdgeKind::Homotopy, sign_below(sigma, i)};
}

std::string edge_label(const EdgeRef& e, int) {
  std::string s = e.is_homotopy() ? "h_{" : "d_{";
  s += e.lower() ? type_label(e.lower()).substr(1) : "0";
  return s + "," + std::to_string(e.index) + "}";
}

std::optional<EdgeRef> TaylorGraph::find_edge(Mask source, Mask target) const {
  Mask diff = source ^ target;
  if (popcount(diff) != 1 || source >= vertex_count() || target >= vertex_count()) return std::nullopt;
  int i = std::countr_zero(diff) + 1;
  for (const auto& e : out_edges(source))
    if (e.index == i) return e;
  return std::nullopt;
}

bool TaylorGraph::contains(const EdgeRef& e) const {
  auto f = find_edge(e.source, e.target);
  return f && *f == e;
}

TaylorGraph build_taylor(const SquareFreeIdeal& I, std::size_t edge_budget) {
  const int n = I.n();
  if (n > kMaxStructuralN) throw Error(Errc::BadParameters, "n exceeds structural cap");
  TaylorGraph T;
  T.n_ = n;
  T.G_ = build_gcd_graph(I);
  const std::uint32_t N = std::uint32_t{1} << n;

  std::vector<std::vector<Mask>> rest(n);
  for (int i = 1; i <= n; ++i)
    for (Mask t : I.types_of(i)) rest[i - 1].push_back(t & ~bit(i));
  auto divides = [&](int i, Mask sigma) {
    for (Mask t : rest[i - 1])
      if ((t & sigma) == 0) return false;
    return true;
  };

  T.out_off_.assign(N + 1, 0);
  for (Mask v = 0; v < N; ++v) {
    T.out_off_[v] = static_cast<std::uint32_t>(T.edges_.size());
    Mask nb = neighborhood(T.G_, v);
    for (int i = 1; i <= n; ++i) {
      if (has(v, i)) {
        if (divides(i, v & ~bit(i))) T.edges_.push_back(make_differential(v & ~bit(i), i));
      } else if (!has(nb, i)) {
        T.edges_.push_back(make_homotopy(v, i));
      }
    }
    if (T.edges_.size() > edge_budget)
      throw Error(Errc::EdgeBudgetExceeded, "Taylor graph exceeds " + std::to_string(edge_budget) + " edges");
  }
  T.out_off_[N] = static_cast<std::uint32_t>(T.edges_.size());
  T.n_diff_ = static_cast<std::size_t>(std::count_if(T.edges_.begin(), T.edges_.end(),
                                                     [](const EdgeRef& e) { return !e.is_homotopy(); }));

  T.in_off_.assign(N + 1, 0);
  for (const auto& e : T.edges_) ++T.in_off_[e.target + 1];
  for (Mask v = 0; v < N; ++v) T.in_off_[v + 1] += T.in_off_[v];
  T.in_ids_.assign(T.edges_.size(), 0);
  std::vector<std::uint32_t> fill(T.in_off_.begin(), T.in_off_.end() - 1);
  for (std::uint32_t k = 0; k < T.edges_.size(); ++k) T.in_ids_[fill[T.edges_[k].target]++] = k;

  std::vector<std::uint32_t> parent(N);
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : T.edges_) {
    auto a = find(e.source), b = find(e.target);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  T.comp_of_.assign(N, -1);
  for (Mask v = 0; v < N; ++v) {
    auto r = find(v);
    if (T.comp_of_[r] < 0) {
      T.comp_of_[r] = static_cast<int>(T.comps_.size());
      T.comps_.emplace_back();
    }
    T.comp_of_[v] = T.comp_of_[r];
    T.comps_[T.comp_of_[v]].push_back(v);
  }
  return T;
}

std::uint32_t edge_value(const EdgeRef& e, const std::vector<std::uint32_t>& a, std::uint32_t p) {
  std::uint32_t w = e.is_homotopy() ? a[e.index - 1] % p : 1 % p;
  return e.sign < 0 ? mod_neg(w, p) : w;
}

EvaluatedMatrix evaluate_matrix(const TaylorGraph& T, const std::vector<std::uint32_t>& a, std::uint32_t p) {
  require_prime(p);
  if (static_cast<int>(a.size()) != T.n()) throw Error(Errc::DimensionMismatch, "point length differs from n");
  EvaluatedMatrix M;
  M.p = p;
  for (auto x : a) M.point.push_back(x % p);
  for (const auto& e : T.edges()) {
    auto v = edge_value(e, M.point, p);
    if (v) M.entries.emplace_back(e.target, e.source, v);
  }
  return M;
}

bool squares_to_zero(const EvaluatedMatrix& M, int n) {
  const std::uint32_t N = std::uint32_t{1} << n;
  std::vector<std::vector<std::pair<Mask, std::uint32_t>>> by_col(N);
  for (auto [r, c, v] : M.entries) by_col[c].emplace_back(r, v);
  // (M*M)[r][c] = sum_k M[r][k] M[k][c]
  for (Mask c = 0; c < N; ++c) {
    std::vector<std::pair<Mask, std::uint64_t>> acc;
    for (auto [k, v1] : by_col[c])
      for (auto [r, v2] : by_col[k]) acc.emplace_back(r, static_cast<std::uint64_t>(v1) * v2 % M.p);
    std::sort(acc.begin(), acc.end());
    for (std::size_t s = 0; s < acc.size();) {
      std::uint64_t sum = 0;
      std::size_t t = s;
      for (; t < acc.size() && acc[t].first == acc[s].first; ++t) sum = (sum + acc[t].second) % M.p;
      if (sum) return false;
      s = t;
    }
  }
  return true;
}

int evaluate_rank(const TaylorGraph& T, const std::vector<std::uint32_t>& a, std::uint32_t p, int rank_cap_n) {
  require_prime(p);
  if (T.n() > rank_cap_n)
    throw Error(Errc::MatrixTooLarge, "n=" + std::to_string(T.n()) + " exceeds rank cap " + std::to_string(rank_cap_n));
  if (static_cast<int>(a.size()) != T.n()) throw Error(Errc::DimensionMismatch, "point length differs from n");
  std::vector<std::uint32_t> pt(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) pt[k] = a[k] % p;

  const std::uint32_t N = T.vertex_count();
  std::vector<int> pos(N, -1);
  std::vector<std::uint64_t> block;
  int total = 0;
  for (const auto& comp : T.components()) {
    if (comp.size() == 1) continue;
    std::vector<Mask> even, odd;
    for (Mask v : comp) (popcount(v) & 1 ? odd : even).push_back(v);
    for (std::size_t k = 0; k < even.size(); ++k) pos[even[k]] = static_cast<int>(k);
    for (std::size_t k = 0; k < odd.size(); ++k) pos[odd[k]] = static_cast<int>(k);
    // T maps even to odd and odd to even; rank is the sum over the two blocks.
    for (int parity = 0; parity < 2; ++parity) {
      const auto& cols = parity ? odd : even;
      const auto& rows = parity ? even : odd;
      if (cols.empty() || rows.empty()) continue;
      block.assign(rows.size() * cols.size(), 0);
      bool any = false;
      for (Mask c : cols)
        for (const auto& e : T.out_edges(c)) {
          auto v = edge_value(e, pt, p);
          if (!v) continue;
          block[static_cast<std::size_t>(pos[e.target]) * cols.size() + pos[c]] = v;
          any = true;
        }
      if (any) total += dense_rank_mod_p(block, static_cast<int>(rows.size()), static_cast<int>(cols.size()), p);
    }
  }
  return total;
}

bool is_taylor_subgraph(const TaylorGraph& first, const TaylorGraph& second) {
  if (first.n() != second.n()) throw Error(Errc::DimensionMismatch, "Taylor graphs on different n");
  for (const auto& e : first.edges())
    if (!second.contains(e)) return false;
  return true;
}

std::string taylor_to_dot(const TaylorGraph& T) {
  std::ostringstream os;
  const int n = T.n();
  os << "digraph T {\n";
  for (Mask v = 0; v < T.vertex_count(); ++v) os << "  \"" << to_bstring(v, n) << "\";\n";
  for (const auto& e : T.edges()) {
    os << "  \"" << to_bstring(e.source, n) << "\" -> \"" << to_bstring(e.target, n) << "\" [label=\""
       << (e.is_homotopy() ? "h" : "d") << e.index << (e.sign < 0 ? " -" : " +") << "\"";
    if (e.is_homotopy()) os << ", style=dashed";
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

nlohmann::ordered_json edge_to_json(const EdgeRef& e, int n) {
  nlohmann::ordered_json j;
  j["kind"] = e.is_homotopy() ? "h" : "d";
  j["src"] = to_bstring(e.source, n);
  j["i"] = e.index;
  j["sign"] = e.sign;
  return j;
}

EdgeRef edge_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.contains("src") || !j.contains("i"))
    throw Error(Errc::BadInput, "edge JSON needs kind, src, i");
  std::string kind = j["kind"].get<std::string>();
  Mask src = from_bstring(j["src"].get<std::string>());
  int i = j["i"].get<int>();
  if (i < 1 || i > kMaxStructuralN) throw Error(Errc::IndexOutOfRange, "edge index", i);
  if (kind == "d") {
    if (!has(src, i)) throw Error(Errc::BadInput, "differential source must contain its index");
    return make_differential(src & ~bit(i), i);
  }
  if (kind == "h") {
    if (has(src, i)) throw Error(Errc::BadInput, "homotopy source must omit its index");
    return make_homotopy(src, i);
  }
  throw Error(Errc::BadInput, "edge kind must be d or h");
}

nlohmann::ordered_json taylor_to_json(const TaylorGraph& T) {
  nlohmann::ordered_json j;
  j["n"] = T.n();
  auto arr = nlohmann::ordered_json::array();
  for (const auto& e : T.edges()) arr.push_back(edge_to_json(e, T.n()));
  j["edges"] = arr;
  return j;
}

}  // namespace suppvar
