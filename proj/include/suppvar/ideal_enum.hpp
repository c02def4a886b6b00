#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "suppvar/gcd_graph.hpp"

namespace suppvar {

struct FiberDescription {
  CliqueComplex universe;
  std::vector<std::vector<Mask>> minimal_supports;  // each sorted ascending; list sorted
};

// Minimal supports of the square-free part of J_G (the ideals realizing G).
FiberDescription jg_minimal_generators(const GcdGraph& G, std::size_t face_cap = kDefaultFaceCap);

struct FiberStats {
  std::uint64_t emitted = 0;
  bool truncated = false;
};

// Visits every X with K_G >= X >= (some minimal support) once, in lexicographic order of sorted
// mask lists. The visitor returns false to stop early.
FiberStats enumerate_fiber(const GcdGraph& G, std::uint64_t cap,
                           const std::function<bool(const SquareFreeIdeal&)>& visit);
std::vector<SquareFreeIdeal> enumerate_fiber(const GcdGraph& G, std::uint64_t cap, bool* truncated = nullptr);

// Size of the fiber via inclusion-exclusion over minimal supports (independent of the enumerator).
// Throws BadParameters above kInclusionExclusionMaxSupports supports.
inline constexpr std::size_t kInclusionExclusionMaxSupports = 24;
std::uint64_t fiber_count_inclusion_exclusion(const FiberDescription& F);

}  // namespace suppvar
