#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "suppvar/detectors.hpp"
#include "suppvar/ideal_enum.hpp"
#include "suppvar/variety.hpp"

using namespace suppvar;

namespace {

SquareFreeIdeal cycle(int n, Mask singles = 0) {
  FamilySpec s;
  s.kind = singles ? FamilySpec::Kind::CycleFiber : FamilySpec::Kind::CycleEdgeIdeal;
  s.n = n;
  s.singletons = singles;
  return make_family(s);
}

SquareFreeIdeal complete_intersection(int n) {
  std::vector<Mask> t;
  for (int i = 1; i <= n; ++i) t.push_back(bit(i));
  return validate_types(n, t);
}

bool has_cert(const std::vector<ContainmentCertificate>& cs, Mask v, ContainmentCertificate::Kind k, Mask idx) {
  return std::find(cs.begin(), cs.end(), ContainmentCertificate{v, k, idx}) != cs.end();
}

// Oracle classification straight from the definition.
struct OracleCert {
  Mask vertex;
  bool source;
  bool sink;
  Mask indices;
};

std::vector<OracleCert> oracle_sources_sinks(const SquareFreeIdeal& I) {
  const int n = I.n();
  auto edges = oracle::taylor_edges(I);
  std::vector<OracleCert> out;
  for (Mask v = 0; v < (Mask{1} << n); ++v) {
    bool diff = false;
    Mask idx = 0;
    for (const auto& e : edges) {
      if (e.source != v && e.target != v) continue;
      if (!e.homotopy) diff = true;
      else idx |= bit(e.index);
    }
    if (diff) continue;
    Mask N = oracle::neighborhood(I, v);
    bool sink = (v | N) == full_mask(n);
    bool source = subset(v, N);
    if (sink || source) out.push_back({v, source, sink, idx});
  }
  return out;
}

// Walk that flips bits 1, 2, ..., len in turn, starting from `start`.
std::vector<Mask> flip_walk(Mask start, int len) {
  std::vector<Mask> w{start};
  for (int i = 1; i <= len; ++i) w.push_back(w.back() ^ bit(i));
  return w;
}

// The lemma's hypotheses checked edge by edge: alternating orientation, endpoint degree 1, odd interior degree 2.
bool walk_hypotheses(const TaylorGraph& T, const std::vector<Mask>& w, bool sinks) {
  const std::size_t s = w.size();
  auto edge = [&](Mask from, Mask to) { return T.find_edge(from, to).has_value(); };
  for (std::size_t k = 1; k < s; k += 2) {
    bool ok = sinks ? edge(w[k], w[k - 1]) && edge(w[k], w[k + 1]) : edge(w[k - 1], w[k]) && edge(w[k + 1], w[k]);
    if (!ok) return false;
  }
  for (std::size_t k = 0; k < s; k += 2) {
    const int want = (k == 0 || k + 1 == s) ? 1 : 2;
    if ((sinks ? T.in_degree(w[k]) : T.out_degree(w[k])) != want) return false;
  }
  if (sinks) return T.out_degree(w.front()) == 0 && T.out_degree(w.back()) == 0;
  return T.in_degree(w.front()) == 0 && T.in_degree(w.back()) == 0;
}

}  // namespace

TEST_SUITE("detectors") {

TEST_CASE("isolated vertices") {
  auto iso8 = find_isolated(build_taylor(cycle(8)));
  CHECK(std::find(iso8.begin(), iso8.end(), from_bstring("11001100")) != iso8.end());
  CHECK(find_isolated(build_taylor(cycle(6))).empty());
  auto iso41 = find_isolated(build_taylor(cycle(6, bit(1) | bit(2))));
  CHECK(std::find(iso41.begin(), iso41.end(), from_bstring("111001")) != iso41.end());
  Rng rng(41);
  for (int k = 0; k < 30; ++k) {
    SquareFreeIdeal I = oracle::random_ideal(2 + static_cast<int>(rng.below(5)), rng);
    auto edges = oracle::taylor_edges(I);
    std::vector<Mask> want;
    for (Mask v = 0; v < (Mask{1} << I.n()); ++v)
      if (std::none_of(edges.begin(), edges.end(), [&](const oracle::Edge& e) { return e.source == v || e.target == v; }))
        want.push_back(v);
    CHECK(find_isolated(build_taylor(I)) == want);
  }
}

TEST_CASE("homotopy sources and sinks of the running example") {
  SquareFreeIdeal P = oracle::running_p5_ideal();
  auto cs = find_homotopy_sources_sinks(build_taylor(P), build_gcd_graph(P));
  using K = ContainmentCertificate::Kind;
  CHECK(has_cert(cs, 0, K::Source, full_mask(5)));
  CHECK(has_cert(cs, mask_of({1, 4, 5}), K::Sink, bit(1)));
  CHECK(has_cert(cs, mask_of({3, 4}), K::Source, bit(1)));
  CHECK(has_cert(cs, mask_of({1, 2, 5}), K::Sink, bit(5)));
  CHECK(has_cert(cs, mask_of({2, 3}), K::Source, bit(5)));
}

TEST_CASE("complete intersection: the empty vertex is a source for every coordinate") {
  for (int n = 1; n <= 5; ++n) {
    SquareFreeIdeal I = complete_intersection(n);
    auto cs = find_homotopy_sources_sinks(build_taylor(I), build_gcd_graph(I));
    CHECK(has_cert(cs, 0, ContainmentCertificate::Kind::Source, full_mask(n)));
  }
}

TEST_CASE("sources and sinks agree with the definitional oracle") {
  Rng rng(42);
  for (int k = 0; k < 40; ++k) {
    SquareFreeIdeal I = oracle::random_ideal(2 + static_cast<int>(rng.below(4)), rng);
    TaylorGraph T = build_taylor(I);
    GcdGraph G = build_gcd_graph(I);
    auto cs = find_homotopy_sources_sinks(T, G);
    auto want = oracle_sources_sinks(I);
    for (const auto& c : cs) {
      CHECK(check_containment(T, G, c));
      auto it = std::find_if(want.begin(), want.end(), [&](const OracleCert& o) { return o.vertex == c.vertex; });
      REQUIRE(it != want.end());
      CHECK(it->indices == c.indices);
      CHECK((c.kind == ContainmentCertificate::Kind::Source ? it->source : it->sink));
    }
    for (const auto& o : want)
      CHECK(std::any_of(cs.begin(), cs.end(), [&](const ContainmentCertificate& c) { return c.vertex == o.vertex; }));
  }
}

TEST_CASE("containment certificates force rank drops on their coordinate subspace") {
  Rng rng(43);
  for (int k = 0; k < 15; ++k) {
    SquareFreeIdeal I = oracle::random_ideal(3 + static_cast<int>(rng.below(3)), rng);
    TaylorGraph T = build_taylor(I);
    auto cs = find_homotopy_sources_sinks(T, build_gcd_graph(I));
    for (std::size_t c = 0; c < std::min<std::size_t>(cs.size(), 3); ++c)
      for (std::uint32_t p : {3u, 101u, 32003u})
        for (int s = 0; s < 50; ++s) {
          auto a = oracle::random_point(I.n(), p, rng);
          for (int i : members(cs[c].indices)) a[i - 1] = 0;
          CHECK(evaluate_rank(T, a, p) < (1 << (I.n() - 1)));
        }
  }
}

TEST_CASE("counting lemmas on the catalog examples") {
  {
    SquareFreeIdeal I = catalog_representative(1);
    auto ws = counting_detectors(build_taylor(I), build_gcd_graph(I));
    CHECK(std::any_of(ws.begin(), ws.end(), [](const FullSupportWitness& w) {
      return w.kind == FullSupportWitness::Kind::Degree3Isolated && w.a == std::vector<Mask>{mask_of({3, 4, 5})};
    }));
  }
  {
    SquareFreeIdeal I = catalog_representative(7);
    auto ws = counting_detectors(build_taylor(I), build_gcd_graph(I));
    CHECK(std::any_of(ws.begin(), ws.end(), [](const FullSupportWitness& w) {
      return w.kind == FullSupportWitness::Kind::EdgePairFamily && w.a == std::vector<Mask>{mask_of({1, 2}), mask_of({5, 6})};
    }));
  }
}

TEST_CASE("dashed-present type B cases: the tabulated isolated vertices") {
  const Mask v23 = mask_of({2, 3}), v35 = mask_of({3, 5}), v2346 = mask_of({2, 3, 4, 6});
  std::map<std::pair<int, Mask>, Mask> table = {
      {{27, mask_of({1, 5})}, v23}, {{28, bit(1)}, v35},          {{28, mask_of({1, 2})}, v35},
      {{28, mask_of({1, 5})}, v2346}, {{29, mask_of({1, 5})}, v2346},
  };
  for (const auto& [id, present] : typeb_present_cases()) {
    Mask want = 0;
    if (id == 30 || id == 32 || id == 34) want = v23;
    else if (id == 31 || id == 33 || id == 35) want = v2346;
    else if (table.count({id, present[0]})) want = table.at({id, present[0]});
    if (!want) continue;
    auto iso = find_isolated(build_taylor(catalog_representative(id, present)));
    CHECK_MESSAGE(std::find(iso.begin(), iso.end(), want) != iso.end(), "graph " << id << " " << type_label(present[0]));
  }
}

TEST_CASE("dashed-present type B cases: more sinks than sources over the whole case") {
  // Graph 27 with x1 present (x12, x15 absent): sinks v23, v35 with neighbors inside {v235};
  // graph 29 likewise with v2346, v3456 and v23456.
  struct Row {
    int id;
    std::vector<Mask> S;
    std::vector<Mask> N;
  };
  std::vector<Row> rows = {{27, {mask_of({2, 3}), mask_of({3, 5})}, {mask_of({2, 3, 5})}},
                           {29, {mask_of({2, 3, 4, 6}), mask_of({3, 4, 5, 6})}, {mask_of({2, 3, 4, 5, 6})}}};
  for (const auto& r : rows) {
    GcdGraph G = graph_from_edges(6, catalog_entry(r.id).edges);
    int tested = 0;
    for (const auto& I : enumerate_fiber(G, 1u << 24)) {
      if (!I.contains(bit(1)) || I.contains(mask_of({1, 2})) || I.contains(mask_of({1, 5}))) continue;
      ++tested;
      TaylorGraph T = build_taylor(I);
      // The listed neighbors are the possible ones; the actual in-neighbors must lie among them.
      std::set<Mask> actual;
      for (Mask v : r.S)
        for (auto id : T.in_edge_ids(v)) actual.insert(T.edges()[id].source);
      CHECK(std::includes(r.N.begin(), r.N.end(), actual.begin(), actual.end()));
      FullSupportWitness w;
      w.kind = FullSupportWitness::Kind::SinksVsSources;
      w.a = r.S;
      w.b.assign(actual.begin(), actual.end());
      CHECK_MESSAGE(check_witness(T, G, w), ideal_to_string(I));
      CHECK_FALSE(detect_full(T, G).empty());
    }
    CHECK(tested > 0);
  }
}

TEST_CASE("odd alternating walks on odd cycles") {
  // n = 4m+3: a sink walk flipping bits 1..4m+2 from (0110)^m 011.
  TaylorGraph T7 = build_taylor(cycle(7));
  auto v = flip_walk(from_bstring("0110011"), 6);
  CHECK(v.back() == from_bstring("1001101"));
  CHECK(walk_hypotheses(T7, v, true));
  FullSupportWitness w7;
  w7.kind = FullSupportWitness::Kind::OddAlternatingWalk;
  w7.a = v;
  w7.direction = 0;
  CHECK(check_witness(T7, T7.gcd(), w7));
  CHECK(find_odd_alternating_walk(T7, 15).has_value());

  // n = 4m+1: a source walk flipping bits 1..4m from (0011)^m 0.
  TaylorGraph T9 = build_taylor(cycle(9));
  auto u = flip_walk(from_bstring("001100110"), 8);
  CHECK(u.back() == from_bstring("110011000"));
  CHECK(walk_hypotheses(T9, u, false));
  FullSupportWitness w9;
  w9.kind = FullSupportWitness::Kind::OddAlternatingWalk;
  w9.a = u;
  w9.direction = 1;
  CHECK(check_witness(T9, T9.gcd(), w9));
  auto found9 = find_odd_alternating_walk(T9, 19);
  REQUIRE(found9.has_value());
  CHECK(walk_hypotheses(T9, found9->a, found9->direction == 0));
  CHECK(std::set<Mask>{found9->a.front(), found9->a.back()} == std::set<Mask>{u.front(), u.back()});

  for (int n : {11, 13}) {
    TaylorGraph T = build_taylor(cycle(n));
    auto f = find_odd_alternating_walk(T, 2 * n + 1);
    REQUIRE(f.has_value());
    CHECK(walk_hypotheses(T, f->a, f->direction == 0));
    CHECK(check_witness(T, T.gcd(), *f));
  }

  // Tampering: dropping the last two vertices breaks the endpoint condition.
  FullSupportWitness cut = w7;
  cut.a.resize(cut.a.size() - 2);
  CHECK_FALSE(check_witness(T7, T7.gcd(), cut));

  CHECK_FALSE(find_odd_alternating_walk(build_taylor(complete_intersection(4)), 9).has_value());
}

TEST_CASE("full-support witnesses are rank deficient at random points") {
  Rng rng(44);
  int seen = 0;
  for (int k = 0; k < 60 && seen < 12; ++k) {
    SquareFreeIdeal I = oracle::random_ideal(3 + static_cast<int>(rng.below(3)), rng);
    TaylorGraph T = build_taylor(I);
    GcdGraph G = build_gcd_graph(I);
    auto ws = detect_full(T, G);
    if (ws.empty()) continue;
    ++seen;
    for (const auto& w : ws) CHECK(check_witness(T, G, w));
    for (std::uint32_t p : {3u, 101u, 32003u})
      for (int s = 0; s < 50; ++s) CHECK(evaluate_rank(T, oracle::random_point(I.n(), p, rng), p) < (1 << (I.n() - 1)));
  }
  CHECK(seen == 12);
}

TEST_CASE("a vertex adjacent to all others yields a witness") {
  Rng rng(45);
  for (int k = 0; k < 30; ++k) {
    const int n = 3 + static_cast<int>(rng.below(4));
    SquareFreeIdeal I = oracle::random_ideal(n, rng);
    // Make generator 1 share a variable with every other generator.
    std::vector<Mask> extra;
    for (int j = 2; j <= n; ++j) extra.push_back(bit(1) | bit(j));
    auto masks = I.masks();
    masks.insert(masks.end(), extra.begin(), extra.end());
    std::sort(masks.begin(), masks.end());
    masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
    if (!oracle::valid(n, masks)) continue;
    SquareFreeIdeal J = validate_types(n, masks);
    CHECK_FALSE(detect_full(build_taylor(J), build_gcd_graph(J)).empty());
  }
}

TEST_CASE("check_witness rejects tampered witnesses") {
  SquareFreeIdeal I = catalog_representative(1);
  TaylorGraph T = build_taylor(I);
  GcdGraph G = build_gcd_graph(I);
  FullSupportWitness iso;
  iso.kind = FullSupportWitness::Kind::IsolatedVertex;
  iso.a = {0};  // the empty vertex always has homotopy edges out of it
  CHECK_FALSE(check_witness(T, G, iso));
  ContainmentCertificate bad{0, ContainmentCertificate::Kind::Sink, 0};  // the empty vertex has out-edges
  CHECK_FALSE(check_containment(T, G, bad));
}

}
