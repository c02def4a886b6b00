#pragma once

// Brute-force reference implementations used only by tests. They work from the definitions
// (expanded generators, dense matrices, Leibniz sums) and share no code with the library beyond
// the plain data types.

#include <cstdint>
#include <set>
#include <vector>

#include "suppvar/families.hpp"
#include "suppvar/field.hpp"
#include "suppvar/ideal.hpp"
#include "suppvar/matchings.hpp"
#include "suppvar/poly.hpp"

namespace oracle {

using suppvar::Mask;
using suppvar::SquareFreeIdeal;
using Matrix = std::vector<std::vector<std::uint32_t>>;

// f_i as the set of type masks it is divisible by.
std::vector<std::set<Mask>> expand(int n, const std::vector<Mask>& types);

// Every generator nonempty, pairwise non-dividing.
bool valid(int n, const std::vector<Mask>& types);
bool lcm_divides(const SquareFreeIdeal& I, int i, Mask sigma);
bool gcd_edge(const SquareFreeIdeal& I, int i, int j);
Mask neighborhood(const SquareFreeIdeal& I, Mask sigma);

struct Edge {
  Mask source = 0;
  Mask target = 0;
  int index = 0;
  bool homotopy = false;
  int sign = 1;
  auto operator<=>(const Edge&) const = default;
};

std::vector<Edge> taylor_edges(const SquareFreeIdeal& I);
// M[target][source], entries in F_p.
Matrix taylor_matrix(const SquareFreeIdeal& I, const std::vector<std::uint32_t>& a, std::uint32_t p);
Matrix multiply(const Matrix& A, const Matrix& B, std::uint32_t p);
int rank(Matrix M, std::uint32_t p);

// det of T^M with rows the matched targets and columns the matched sources, in matching order.
suppvar::Poly leibniz_det(const SquareFreeIdeal& I, const suppvar::Matching& M);

// All masks of cliques of G (nonempty), by testing every subset.
std::vector<Mask> cliques(const suppvar::GcdGraph& G);

// Random valid ideal on n generators: random types, repaired by singletons where needed.
SquareFreeIdeal random_ideal(int n, suppvar::Rng& rng);
// Disjoint union of random ideals on n1 and n2 generators.
SquareFreeIdeal random_split_ideal(int n1, int n2, suppvar::Rng& rng);

std::vector<std::uint32_t> random_point(int n, std::uint32_t p, suppvar::Rng& rng);

// The {1,5}-perfect matching of the running five-generator example: four colored hypercubes.
suppvar::Matching running_p5_matching();
SquareFreeIdeal running_p5_ideal();

}  // namespace oracle
