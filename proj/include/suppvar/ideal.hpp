#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "suppvar/core.hpp"

namespace suppvar {

struct VariableType {
  Mask mask = 0;
  unsigned degree = 1;
  bool operator==(const VariableType&) const = default;
};

// X_f: the set of variable types of a square-free ideal on generators f_1..f_n.
// Always valid (every f_i has a variable missing from every other f_j).
class SquareFreeIdeal {
 public:
  SquareFreeIdeal() = default;

  int n() const { return n_; }
  const std::vector<VariableType>& types() const { return types_; }
  std::vector<Mask> masks() const;
  bool contains(Mask m) const;
  std::size_t size() const { return types_.size(); }

  // Types containing generator i (1-based).
  const std::vector<Mask>& types_of(int i) const { return by_gen_.at(i - 1); }

  bool operator==(const SquareFreeIdeal& o) const { return n_ == o.n_ && types_ == o.types_; }

  friend SquareFreeIdeal validate_types(int n, const std::vector<VariableType>& types);

 private:
  int n_ = 0;
  std::vector<VariableType> types_;  // sorted by mask
  std::vector<std::vector<Mask>> by_gen_;
};

// Exponents keyed by variable name.
using ExponentMonomial = std::map<std::string, int>;
using SquareFreeMonomial = std::set<std::string>;

SquareFreeIdeal validate_types(int n, const std::vector<VariableType>& types);
SquareFreeIdeal validate_types(int n, const std::vector<Mask>& masks);

// Throws NotMinimal naming the first violated ordered pair, or returns normally.
void check_minimal(int n, const std::vector<Mask>& masks);

SquareFreeIdeal normalize_types(const std::vector<SquareFreeMonomial>& generators);
SquareFreeIdeal polarize(const std::vector<ExponentMonomial>& generators);

bool lcm_divides(const SquareFreeIdeal& I, int i, Mask sigma);

// degrees parallel to I.types(); empty means use the stored degrees.
bool is_equigenerated(const SquareFreeIdeal& I, const std::vector<unsigned>& degrees = {});

// The square-free generator f_i as its set of types.
std::vector<Mask> generator_types(const SquareFreeIdeal& I, int i);

// Ideal with the given types added (re-validated).
SquareFreeIdeal with_types(const SquareFreeIdeal& I, const std::vector<Mask>& extra);

nlohmann::ordered_json ideal_to_json(const SquareFreeIdeal& I);
SquareFreeIdeal ideal_from_json(const nlohmann::json& j);
std::string ideal_to_string(const SquareFreeIdeal& I);

}  // namespace suppvar
