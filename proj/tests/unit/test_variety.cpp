#include <algorithm>

#include "doctest.h"
#include "oracles.hpp"
#include "suppvar/families.hpp"
#include "suppvar/variety.hpp"

using namespace suppvar;

namespace {

Mask m(std::initializer_list<int> idx) { return mask_of(std::vector<int>(idx)); }

std::uint64_t mono(const Point& a, Mask s, std::uint32_t p) {
  std::uint64_t v = 1;
  for (int i : members(s)) v = v * a[i - 1] % p;
  return v;
}

// Direct evaluation of the defining equations.
bool oracle_on(const VarietyExpr& e, const Point& a, std::uint32_t p) {
  using K = VarietyExpr::Kind;
  switch (e.kind) {
    case K::Full:
      return true;
    case K::CoordinateSubspace:
      for (int i : members(e.set))
        if (a[i - 1] != 0) return false;
      return true;
    case K::MonomialHypersurface:
      return mono(a, e.set, p) == 0;
    case K::AlternatingBinomial: {
      std::uint64_t x = mono(a, e.odd, p), y = mono(a, e.even, p);
      return (x + (e.sign > 0 ? y : (p - y) % p)) % p == 0;
    }
    case K::Union:
      return std::any_of(e.parts.begin(), e.parts.end(), [&](const VarietyExpr& q) { return oracle_on(q, a, p); });
    case K::Product:
      for (std::size_t k = 0; k < e.parts.size(); ++k) {
        Point b;
        for (int g : e.splits[k]) b.push_back(a[g - 1]);
        if (!oracle_on(e.parts[k], b, p)) return false;
      }
      return true;
  }
  return false;
}

int oracle_rank(const SquareFreeIdeal& I, const Point& a, std::uint32_t p) {
  return oracle::rank(oracle::taylor_matrix(I, a, p), p);
}

}  // namespace

TEST_SUITE("variety") {

TEST_CASE("expressions: rendering and dimension") {
  CHECK(render(VarietyExpr::full(3)) == "A^3");
  CHECK(render(VarietyExpr::subspace(3, 0)) == "A^3");
  CHECK(render(VarietyExpr::subspace(3, 7)) == "V(x1,x2,x3)");
  CHECK(render(VarietyExpr::hypersurface(5, m({1, 5}))) == "V(x1*x5)");
  CHECK(render(VarietyExpr::binomial(6, m({1, 3, 5}), m({2, 4, 6}))) == "V(x1*x3*x5 + x2*x4*x6)");
  auto u = VarietyExpr::union_of(4, {VarietyExpr::subspace(4, m({1, 2})), VarietyExpr::subspace(4, m({3, 4}))});
  CHECK(render(u) == "V(x1*x3,x1*x4,x2*x3,x2*x4)");
  CHECK(dimension(u) == 2);
  CHECK(dimension(VarietyExpr::hypersurface(5, m({1, 5}))) == 4);
  CHECK(dimension(VarietyExpr::binomial(6, m({1, 3, 5}), m({2, 4, 6}))) == 5);
  CHECK(dimension(VarietyExpr::subspace(4, m({1, 2, 3}))) == 1);
  auto j = expr_to_json(u);
  CHECK(j["dimension"] == 2);
  CHECK(j["union"].size() == 2);
}

TEST_CASE("expressions: equality and containment") {
  auto h = VarietyExpr::hypersurface(5, m({1, 5}));
  auto u = VarietyExpr::union_of(5, {VarietyExpr::subspace(5, bit(1)), VarietyExpr::subspace(5, bit(5))});
  CHECK(same_variety(h, u));
  CHECK(expr_subset(VarietyExpr::subspace(5, m({1, 2})), h));
  CHECK_FALSE(expr_subset(VarietyExpr::subspace(5, bit(2)), h));
  CHECK(expr_subset(h, VarietyExpr::full(5)));
  CHECK(same_variety(VarietyExpr::binomial(4, m({1, 3}), m({2, 4})), VarietyExpr::binomial(4, m({2, 4}), m({1, 3}))));
  CHECK_FALSE(same_variety(VarietyExpr::binomial(4, m({1, 3}), m({2, 4}), 1),
                           VarietyExpr::binomial(4, m({1, 3}), m({2, 4}), -1)));
}

TEST_CASE("relabeling") {
  auto h = VarietyExpr::hypersurface(5, m({1, 2}));
  std::vector<int> swap15 = {5, 2, 3, 4, 1};
  CHECK(same_variety(relabel(relabel(h, swap15), swap15), h));
  std::vector<int> id = {1, 2, 3, 4, 5};
  CHECK(same_variety(relabel(h, id), h));
  auto r = relabel(h, swap15);
  CHECK((same_variety(r, VarietyExpr::hypersurface(5, m({5, 2})))));
}

TEST_CASE("on_variety agrees with direct evaluation; sampling lands where it should") {
  std::vector<VarietyExpr> es = {
      VarietyExpr::full(4),
      VarietyExpr::subspace(4, m({2, 3})),
      VarietyExpr::hypersurface(4, m({1, 4})),
      VarietyExpr::binomial(4, m({1, 3}), m({2, 4})),
      VarietyExpr::binomial(4, m({1, 3}), m({2, 4}), -1),
      VarietyExpr::union_of(4, {VarietyExpr::subspace(4, m({1, 2})), VarietyExpr::subspace(4, m({3, 4}))}),
  };
  Rng rng(61);
  for (std::uint32_t p : {3u, 101u, 32003u}) {
    for (const auto& e : es) {
      for (int s = 0; s < 100; ++s) {
        auto a = oracle::random_point(4, p, rng);
        if (s % 2) a[rng.below(4)] = 0;
        CHECK(on_variety(e, a, p) == oracle_on(e, a, p));
      }
      auto on = sample_on_variety(e, 4, p, 30, rng);
      for (const auto& a : on.points) CHECK(oracle_on(e, a, p));
      if (e.kind != VarietyExpr::Kind::Full)
        for (const auto& a : sample_off_variety(e, 4, p, 30, rng)) CHECK_FALSE(oracle_on(e, a, p));
    }
  }
}

TEST_CASE("membership matches the dense rank oracle") {
  Rng rng(62);
  for (int k = 0; k < 40; ++k) {
    SquareFreeIdeal I = oracle::random_ideal(2 + static_cast<int>(rng.below(4)), rng);
    for (std::uint32_t p : {3u, 101u}) {
      for (int s = 0; s < 5; ++s) {
        auto a = oracle::random_point(I.n(), p, rng);
        for (auto& x : a)
          if (rng.below(3) == 0) x = 0;
        CHECK(membership(I, a, p) == (oracle_rank(I, a, p) < (1 << (I.n() - 1))));
      }
    }
  }
}

TEST_CASE("block certificates: the determinant detects singular blocks") {
  Rng rng(63);
  int blocks = 0;
  std::vector<SquareFreeIdeal> ideals;
  FamilySpec hex;
  hex.n = 6;
  ideals.push_back(make_family(hex));
  for (int k = 0; k < 40; ++k) ideals.push_back(oracle::random_ideal(2 + static_cast<int>(rng.below(4)), rng));
  for (const auto& I : ideals) {
    TaylorGraph T = build_taylor(I);
    for (const auto& B : block_certificates(T)) {
      ++blocks;
      REQUIRE(B.sources.size() == B.sinks.size());
      for (std::uint32_t p : {101u, 32003u})
        for (int s = 0; s < 10; ++s) {
          auto a = oracle::random_point(I.n(), p, rng);
          for (auto& x : a)
            if (rng.below(3) == 0) x = 0;
          auto D = oracle::taylor_matrix(I, a, p);
          oracle::Matrix sub;
          for (Mask r : B.sinks) {
            std::vector<std::uint32_t> row;
            for (Mask c : B.sources) row.push_back(D[r][c]);
            sub.push_back(row);
          }
          const bool singular = oracle::rank(sub, p) < static_cast<int>(B.sources.size());
          CHECK(singular == (B.det.eval(a, p) == 0));
          if (singular) CHECK(membership(I, a, p));
        }
    }
  }
  CHECK(blocks > 0);
}

TEST_CASE("product decomposition") {
  SquareFreeIdeal I = validate_types(4, std::vector<Mask>{1, 2, 4, 8, 12});
  auto F = product_decompose(I);
  REQUIRE(F.size() == 3);
  Mask seen = 0;
  for (const auto& f : F) {
    CHECK(f.ideal.n() == static_cast<int>(f.embedding.size()));
    for (int g : f.embedding) {
      CHECK_FALSE(has(seen, g));
      seen |= bit(g);
    }
  }
  CHECK(seen == full_mask(4));
  CHECK(product_decompose(oracle::running_p5_ideal()).size() == 1);
}

TEST_CASE("classify known ideals") {
  ClassifyConfig c;
  c.samples = 40;
  struct Case {
    SquareFreeIdeal I;
    VarietyExpr want;
  };
  FamilySpec hex;
  hex.n = 6;
  FamilySpec sq;
  sq.n = 4;
  std::vector<Case> cases = {
      {validate_types(3, std::vector<Mask>{1, 2, 4}), VarietyExpr::subspace(3, 7)},
      {oracle::running_p5_ideal(), VarietyExpr::hypersurface(5, m({1, 5}))},
      {make_family(hex), VarietyExpr::binomial(6, m({1, 3, 5}), m({2, 4, 6}))},
      {make_family(sq), VarietyExpr::full(4)},
      {validate_types(4, std::vector<Mask>{1, 2, 4, 8, 12}), VarietyExpr::subspace(4, m({1, 2}))},
  };
  for (const auto& k : cases) {
    auto R = classify(k.I, c);
    CHECK_MESSAGE(R.verdict == VarietyReport::Verdict::Exact, ideal_to_string(k.I));
    CHECK_MESSAGE(same_variety(R.expr, k.want), ideal_to_string(k.I) << " got " << render(R.expr));
    CHECK(R.disagreements() == 0);
    for (const auto& s : R.sampling) CHECK(s.on_members == s.on_tested);
  }
}

TEST_CASE("classify: exact verdicts agree with the rank oracle at random points") {
  Rng rng(64);
  ClassifyConfig c;
  c.samples = 20;
  for (int k = 0; k < 30; ++k) {
    SquareFreeIdeal I = oracle::random_ideal(2 + static_cast<int>(rng.below(4)), rng);
    auto R = classify(I, c);
    if (R.verdict != VarietyReport::Verdict::Exact) continue;
    for (std::uint32_t p : {101u, 32003u})
      for (int s = 0; s < 20; ++s) {
        auto a = oracle::random_point(I.n(), p, rng);
        for (auto& x : a)
          if (rng.below(3) == 0) x = 0;
        CHECK_MESSAGE(oracle_on(R.expr, a, p) == (oracle_rank(I, a, p) < (1 << (I.n() - 1))), ideal_to_string(I));
      }
  }
}

TEST_CASE("report JSON") {
  auto R = classify(oracle::running_p5_ideal());
  auto j = report_to_json(R);
  CHECK(j["schema_version"] == kReportSchemaVersion);
  CHECK(j["verdict"] == "exact");
  CHECK(j["variety"] == "V(x1*x5)");
  CHECK(j["certificates"].size() > 0);
  ClassifyConfig c;
  c.primes = {4};
  CHECK_THROWS_AS(classify(oracle::running_p5_ideal(), c), Error);
}

}
