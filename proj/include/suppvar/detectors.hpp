#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "suppvar/taylor.hpp"

namespace suppvar {

// A differentially isolated vertex whose homotopy edges all carry indices in `indices`;
// certifies V(chi_i : i in indices) inside the support variety.
struct ContainmentCertificate {
  enum class Kind { Source, Sink };
  Mask vertex = 0;
  Kind kind = Kind::Sink;
  Mask indices = 0;
  bool operator==(const ContainmentCertificate&) const = default;
};

struct FullSupportWitness {
  enum class Kind {
    IsolatedVertex,      // a = {v}
    SourcesVsNeighbors,  // a = S, b = N
    SinksVsSources,      // a = S, b = N
    OddAlternatingWalk,  // a = v_1..v_s, direction: 0 sink version, 1 source version
    Degree3Isolated,     // a = {sigma}
    EdgePairFamily,      // a = sigma_1..sigma_s
    EdgesVsTriangles,    // a = E, b = T
    HighDegreeVertex,    // vertex
    ComponentImbalance,  // a = even part, b = odd part of one Taylor component
  };
  Kind kind = Kind::IsolatedVertex;
  std::vector<Mask> a;
  std::vector<Mask> b;
  int vertex = 0;
  int direction = 0;
  bool operator==(const FullSupportWitness&) const = default;
};

const char* witness_name(FullSupportWitness::Kind k);

struct DetectorCaps {
  int degree3_max = 6;
  int edge_pair_max = 3;
  int walk_max_len = 0;  // 0 means 2n+1
  int max_per_kind = 4;
};

std::vector<Mask> find_isolated(const TaylorGraph& T);
std::vector<ContainmentCertificate> find_homotopy_sources_sinks(const TaylorGraph& T, const GcdGraph& G);
std::vector<FullSupportWitness> counting_detectors(const TaylorGraph& T, const GcdGraph& G,
                                                   const DetectorCaps& caps = {});
std::optional<FullSupportWitness> find_odd_alternating_walk(const TaylorGraph& T, int max_len);
std::vector<FullSupportWitness> component_imbalances(const TaylorGraph& T, int limit = 4);

// Runs every full-support detector; each reported witness has passed check_witness.
std::vector<FullSupportWitness> detect_full(const TaylorGraph& T, const GcdGraph& G, const DetectorCaps& caps = {});

// Independent definitional re-checks.
bool check_witness(const TaylorGraph& T, const GcdGraph& G, const FullSupportWitness& w);
bool check_containment(const TaylorGraph& T, const GcdGraph& G, const ContainmentCertificate& c);

nlohmann::ordered_json witness_to_json(const FullSupportWitness& w, int n);
nlohmann::ordered_json containment_to_json(const ContainmentCertificate& c, int n);

}  // namespace suppvar
