#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "suppvar/detectors.hpp"
#include "suppvar/field.hpp"
#include "suppvar/matchings.hpp"
#include "suppvar/poly.hpp"

namespace suppvar {

// V(chi_i : i in zeros, B : B in binomials): an irreducible-looking building block of the grammar.
struct Atom {
  Mask zeros = 0;
  std::vector<Binomial> binomials;  // sorted, supports disjoint from zeros
  bool operator==(const Atom&) const = default;
  auto operator<=>(const Atom&) const = default;
};

// a is contained in b (sufficient test: b's equations all vanish on a).
bool atom_subset(const Atom& a, const Atom& b);

// Splits atoms whose zeros meet exactly one side of a binomial, drops vanishing binomials,
// removes atoms contained in others, and sorts.
std::vector<Atom> normalize_atoms(const std::vector<Atom>& atoms);

struct VarietyExpr {
  enum class Kind { Full, CoordinateSubspace, Union, MonomialHypersurface, AlternatingBinomial, Product };
  Kind kind = Kind::Full;
  int n = 0;
  Mask set = 0;       // CoordinateSubspace: zero indices; MonomialHypersurface: factor indices
  Mask odd = 0;       // AlternatingBinomial: V(chi^odd + sign * chi^even)
  Mask even = 0;
  int sign = 1;
  std::vector<VarietyExpr> parts;  // Union members, or Product factors in local labels
  std::vector<std::vector<int>> splits;  // Product: global indices of each factor, in local order

  static VarietyExpr full(int n);
  static VarietyExpr subspace(int n, Mask zeros);
  static VarietyExpr hypersurface(int n, Mask factors);
  static VarietyExpr binomial(int n, Mask odd, Mask even, int sign = 1);
  static VarietyExpr union_of(int n, std::vector<VarietyExpr> parts);
  static VarietyExpr product(int n, std::vector<VarietyExpr> parts, std::vector<std::vector<int>> splits);
  static VarietyExpr from_atoms(int n, const std::vector<Atom>& atoms);
};

// Throws BadInput when index sets leave [n] or Product splits do not partition [n].
void validate_expr(const VarietyExpr& e);

// Normalized components in the expression's labeling.
std::vector<Atom> components(const VarietyExpr& e);
bool same_variety(const VarietyExpr& a, const VarietyExpr& b);
bool expr_subset(const VarietyExpr& a, const VarietyExpr& b);
int dimension(const VarietyExpr& e);

// "A^6", "V(x1*x5)", "V(x4*x5,x4*x6)", "V(x1*x3*x5 + x2*x4*x6)"; unions mixing binomial
// components join the component strings with " union ".
std::string render(const VarietyExpr& e);
std::string render_atom(const Atom& a, int n);
nlohmann::ordered_json expr_to_json(const VarietyExpr& e);

// perm[k-1] is the new label of index k.
VarietyExpr relabel(const VarietyExpr& e, const std::vector<int>& perm);

using Point = std::vector<std::uint32_t>;

bool on_variety(const VarietyExpr& e, const Point& a, std::uint32_t p);

struct PointSample {
  std::uint32_t prime = 0;
  std::vector<Point> points;
  VarietyExpr on_variety;
};

PointSample sample_on_variety(const VarietyExpr& e, int n, std::uint32_t p, int count, Rng& rng);
// Uniform points off the variety by rejection; empty for A^n.
std::vector<Point> sample_off_variety(const VarietyExpr& e, int n, std::uint32_t p, int count, Rng& rng);

bool membership(const SquareFreeIdeal& I, const Point& a, std::uint32_t p, int rank_cap_n = kDefaultRankCapN);
bool membership(const TaylorGraph& T, const Point& a, std::uint32_t p, int rank_cap_n = kDefaultRankCapN);

struct Factor {
  SquareFreeIdeal ideal;
  std::vector<int> embedding;  // embedding[k-1] = global index of local generator k
};

std::vector<Factor> product_decompose(const SquareFreeIdeal& I);

// A Taylor component whose vertices are all sources or sinks, equally many: its block is square
// and V(det) lies in the support variety.
struct BlockCertificate {
  std::vector<Mask> sources;
  std::vector<Mask> sinks;
  Poly det;
};

std::vector<BlockCertificate> block_certificates(const TaylorGraph& T, int max_side = 16);

struct ClassifyConfig {
  std::vector<std::uint32_t> primes{3, 101, 32003};
  int samples = 200;
  std::uint64_t seed = 1;
  int rank_cap_n = kDefaultRankCapN;
  std::size_t cycle_cap = kDefaultCycleCap;
  std::uint64_t search_budget = 200000;
  std::size_t transversal_cap = 256;
  bool sample = true;
  bool structural_hints = true;     // cycle matchings when the GCD graph is a cycle
  std::vector<Matching> hints;      // extra matchings in the ideal's labeling
  DetectorCaps caps;
};

struct PrimeStats {
  std::uint32_t prime = 0;
  int on_tested = 0;
  int on_members = 0;
  int off_tested = 0;
  int off_nonmembers = 0;
  int disagreements = 0;
};

struct VarietyReport {
  enum class Verdict { Exact, Bounded, SampledOnly };
  Verdict verdict = Verdict::SampledOnly;
  int n = 0;
  VarietyExpr expr;                 // Exact
  std::vector<VarietyExpr> lower;   // union of these lies in V_f
  std::vector<VarietyExpr> upper;   // V_f lies in the intersection of these
  nlohmann::ordered_json certificates = nlohmann::ordered_json::array();
  std::vector<PrimeStats> sampling;
  ClassifyConfig config;

  int disagreements() const;
};

const char* verdict_name(VarietyReport::Verdict v);

VarietyReport classify(const SquareFreeIdeal& I, const ClassifyConfig& cfg = {});

inline constexpr int kReportSchemaVersion = 1;
nlohmann::ordered_json report_to_json(const VarietyReport& r);

}  // namespace suppvar
