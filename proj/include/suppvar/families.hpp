#pragma once

#include <string>
#include <utility>
#include <vector>

#include "suppvar/gcd_graph.hpp"
#include "suppvar/matchings.hpp"
#include "suppvar/variety.hpp"

namespace suppvar {

struct FamilySpec {
  enum class Kind { CycleEdgeIdeal, DoubleBroom, WhiskeredTriangle, DeltaN, TypeB, CycleFiber };
  Kind kind = Kind::CycleEdgeIdeal;
  int n = 0;              // cycle length, or the size of [f] for DeltaN
  int a = 0;              // brooms: number of g's
  int b = 0;              // brooms: number of h's
  bool with_f2 = false;   // brooms: x_{f2} present
  int graph = 0;          // TypeB: 27..35
  std::vector<Mask> present;  // TypeB: dashed variables made present
  Mask singletons = 0;    // CycleFiber: singleton variables added to the edge ideal
};

// Labelings: cycles 1..n around the cycle; brooms f1,f2,f3,g_1..g_a,h_1..h_b; DeltaN f1..fn then
// g1..gn; TypeB the catalog labeling.
SquareFreeIdeal make_family(const FamilySpec& spec);
GcdGraph family_graph(const FamilySpec& spec);
VarietyExpr expected_variety(const FamilySpec& spec);

// The hand-built matching of the corresponding proof (sigma inside the Matching).
Matching family_matching(const FamilySpec& spec);
// Theta for which family_matching is theta-determined; 0 when the proof uses another argument.
Mask family_theta(const FamilySpec& spec);

std::string family_name(const FamilySpec& spec);
// "cycle:6", "db:2,3", "db:2,3:f2", "wt:1,2", "delta:4", "typeb:27", "typeb:27:1,15",
// "cyclefiber:6:1,3".
FamilySpec parse_family(const std::string& s);

// E-perfect, O-determined matching for the edge ideal of C_n with n = 4m+2.
Matching cycle_matching(int n);

// perm[k-1] is the new label of generator k; edge signs are recomputed.
Matching relabel_matching(const Matching& M, const std::vector<int>& perm);

// When the GCD graph is one cycle of length 4m+2, the cycle matching transported along every
// rotation and reflection of the cycle, keeping those that are matchings of T.
std::vector<Matching> cycle_hints(const SquareFreeIdeal& I, const TaylorGraph& T);

struct CatalogEntry {
  int id = 0;
  std::string type;  // "F1".."F4", "A", "B", "C"
  std::vector<std::pair<int, int>> edges;
  std::vector<Mask> dashed;  // variables that must be absent for interesting support
};

const std::vector<CatalogEntry>& graph_catalog();  // graphs 1..41 on six generators
const CatalogEntry& catalog_entry(int id);

// Every clique-complex variable except the dashed ones not listed in `present`.
SquareFreeIdeal catalog_representative(int id, const std::vector<Mask>& present = {});
VarietyExpr catalog_expected(int id, const std::vector<Mask>& present = {});

// Expected variety of an arbitrary ideal in the fiber of catalog graph `id`: the catalog variety
// transported along a graph automorphism that clears every dashed variable, A^6 when none does,
// and the cycle rule for the hexagon.
VarietyExpr fiber_expected(int id, const SquareFreeIdeal& I);

// Automorphisms of G as permutations (perm[k-1] is the image of k).
std::vector<std::vector<int>> graph_automorphisms(const GcdGraph& G);

// The dashed-present cases checked for graphs 27..35.
std::vector<std::pair<int, std::vector<Mask>>> typeb_present_cases();

// Expected variety of the cycle edge ideal with the given singleton variables added.
VarietyExpr cycle_fiber_expected(int n, Mask singletons);

}  // namespace suppvar
