#include "suppvar/ideal.hpp"

#include <algorithm>

namespace suppvar {

std::vector<Mask> SquareFreeIdeal::masks() const {
  std::vector<Mask> out;
  out.reserve(types_.size());
  for (const auto& t : types_) out.push_back(t.mask);
  return out;
}

bool SquareFreeIdeal::contains(Mask m) const {
  auto it = std::lower_bound(types_.begin(), types_.end(), m,
                             [](const VariableType& t, Mask v) { return t.mask < v; });
  return it != types_.end() && it->mask == m;
}

void check_minimal(int n, const std::vector<Mask>& masks) {
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      bool ok = std::any_of(masks.begin(), masks.end(),
                            [&](Mask m) { return has(m, i) && !has(m, j); });
      if (!ok)
        throw Error(Errc::NotMinimal,
                    "f" + std::to_string(i) + " divides f" + std::to_string(j), i, j);
    }
}

SquareFreeIdeal validate_types(int n, const std::vector<VariableType>& types) {
  if (n < 1) throw Error(Errc::EmptyInput, "ideal needs at least one generator");
  if (n > kMaxStructuralN) throw Error(Errc::BadParameters, "n exceeds " + std::to_string(kMaxStructuralN));
  std::vector<VariableType> sorted = types;
  std::sort(sorted.begin(), sorted.end(),
            [](const VariableType& a, const VariableType& b) { return a.mask < b.mask; });
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    if (sorted[k].mask == 0) throw Error(Errc::EmptyType, "empty type");
    if (!subset(sorted[k].mask, full_mask(n)))
      throw Error(Errc::IndexOutOfRange, "type " + type_label(sorted[k].mask) + " exceeds n");
    if (k && sorted[k].mask == sorted[k - 1].mask)
      throw Error(Errc::BadInput, "repeated type " + type_label(sorted[k].mask));
    if (sorted[k].degree == 0) throw Error(Errc::BadInput, "zero degree on present type");
  }
  std::vector<Mask> ms;
  for (const auto& t : sorted) ms.push_back(t.mask);
  check_minimal(n, ms);

  SquareFreeIdeal I;
  I.n_ = n;
  I.types_ = std::move(sorted);
  I.by_gen_.assign(n, {});
  for (const auto& t : I.types_)
    for (int i : members(t.mask)) I.by_gen_[i - 1].push_back(t.mask);
  return I;
}

SquareFreeIdeal validate_types(int n, const std::vector<Mask>& masks) {
  std::vector<VariableType> ts;
  ts.reserve(masks.size());
  for (Mask m : masks) ts.push_back({m, 1});
  return validate_types(n, ts);
}

SquareFreeIdeal normalize_types(const std::vector<SquareFreeMonomial>& generators) {
  if (generators.empty()) throw Error(Errc::EmptyInput, "no generators");
  int n = static_cast<int>(generators.size());
  if (n > kMaxStructuralN) throw Error(Errc::BadParameters, "too many generators");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && std::includes(generators[j].begin(), generators[j].end(),
                                  generators[i].begin(), generators[i].end()))
        throw Error(Errc::DivisibleGenerators,
                    "f" + std::to_string(i + 1) + " divides f" + std::to_string(j + 1), i + 1, j + 1);
  std::map<std::string, Mask> tau;
  for (int i = 0; i < n; ++i)
    for (const auto& v : generators[i]) tau[v] |= bit(i + 1);
  // Merged variables multiply into one x_sigma, so their degrees add.
  std::map<Mask, unsigned> deg;
  for (const auto& [v, m] : tau) deg[m] += 1;
  std::vector<VariableType> ts;
  for (const auto& [m, d] : deg) ts.push_back({m, d});
  return validate_types(n, ts);
}

SquareFreeIdeal polarize(const std::vector<ExponentMonomial>& generators) {
  if (generators.empty()) throw Error(Errc::EmptyInput, "no generators");
  int n = static_cast<int>(generators.size());
  for (const auto& g : generators) {
    if (g.empty()) throw Error(Errc::BadInput, "unit generator");
    for (const auto& [v, e] : g)
      if (e <= 0) throw Error(Errc::BadInput, "nonpositive exponent on " + v);
  }
  auto divides = [](const ExponentMonomial& a, const ExponentMonomial& b) {
    for (const auto& [v, e] : a) {
      auto it = b.find(v);
      if (it == b.end() || it->second < e) return false;
    }
    return true;
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && divides(generators[i], generators[j]))
        throw Error(Errc::DivisibleGenerators,
                    "f" + std::to_string(i + 1) + " divides f" + std::to_string(j + 1), i + 1, j + 1);
  // x^e becomes x_1 x_2 ... x_e; '#' cannot occur in caller names after this point.
  std::vector<SquareFreeMonomial> sq(n);
  for (int i = 0; i < n; ++i)
    for (const auto& [v, e] : generators[i])
      for (int k = 1; k <= e; ++k) sq[i].insert(v + "#" + std::to_string(k));
  return normalize_types(sq);
}

bool lcm_divides(const SquareFreeIdeal& I, int i, Mask sigma) {
  if (i < 1 || i > I.n()) throw Error(Errc::IndexOutOfRange, "generator " + std::to_string(i), i);
  for (Mask t : I.types_of(i))
    if ((t & sigma) == 0) return false;
  return true;
}

bool is_equigenerated(const SquareFreeIdeal& I, const std::vector<unsigned>& degrees) {
  const auto& ts = I.types();
  if (!degrees.empty() && degrees.size() != ts.size())
    throw Error(Errc::DimensionMismatch, "degree list length differs from type count");
  std::vector<unsigned long long> total(I.n(), 0);
  for (std::size_t k = 0; k < ts.size(); ++k) {
    unsigned d = degrees.empty() ? ts[k].degree : degrees[k];
    for (int i : members(ts[k].mask)) total[i - 1] += d;
  }
  return std::all_of(total.begin(), total.end(), [&](auto v) { return v == total[0]; });
}

std::vector<Mask> generator_types(const SquareFreeIdeal& I, int i) { return I.types_of(i); }

SquareFreeIdeal with_types(const SquareFreeIdeal& I, const std::vector<Mask>& extra) {
  std::vector<VariableType> ts = I.types();
  for (Mask m : extra)
    if (!I.contains(m)) ts.push_back({m, 1});
  return validate_types(I.n(), ts);
}

nlohmann::ordered_json ideal_to_json(const SquareFreeIdeal& I) {
  nlohmann::ordered_json j;
  j["n"] = I.n();
  auto arr = nlohmann::ordered_json::array();
  bool plain = true;
  for (const auto& t : I.types()) {
    arr.push_back(members(t.mask));
    if (t.degree != 1) plain = false;
  }
  j["types"] = arr;
  if (!plain) {
    auto d = nlohmann::ordered_json::array();
    for (const auto& t : I.types()) d.push_back(t.degree);
    j["degrees"] = d;
  }
  return j;
}

SquareFreeIdeal ideal_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("types"))
    throw Error(Errc::BadInput, "ideal JSON needs \"n\" and \"types\"");
  if (!j["n"].is_number_integer()) throw Error(Errc::BadInput, "\"n\" must be an integer");
  int n = j["n"].get<int>();
  if (n < 1 || n > kMaxStructuralN) throw Error(Errc::BadParameters, "n out of range");
  const auto& arr = j["types"];
  if (!arr.is_array()) throw Error(Errc::BadInput, "\"types\" must be an array");
  std::vector<VariableType> ts;
  for (const auto& t : arr) {
    if (!t.is_array()) throw Error(Errc::BadInput, "each type must be an array of generator indices");
    std::vector<int> idx;
    for (const auto& v : t) {
      if (!v.is_number_integer()) throw Error(Errc::BadInput, "generator index must be an integer");
      idx.push_back(v.get<int>());
    }
    for (int i : idx)
      if (i < 1 || i > n) throw Error(Errc::IndexOutOfRange, "generator index " + std::to_string(i), i);
    ts.push_back({mask_of(idx), 1});
  }
  if (j.contains("degrees")) {
    const auto& d = j["degrees"];
    if (!d.is_array() || d.size() != ts.size())
      throw Error(Errc::BadInput, "\"degrees\" must parallel \"types\"");
    for (std::size_t k = 0; k < ts.size(); ++k) {
      if (!d[k].is_number_integer() || d[k].get<long long>() < 1)
        throw Error(Errc::BadInput, "degrees must be positive integers");
      ts[k].degree = d[k].get<unsigned>();
    }
  }
  return validate_types(n, ts);
}

std::string ideal_to_string(const SquareFreeIdeal& I) {
  std::string s = "{";
  bool first = true;
  for (const auto& t : I.types()) {
    if (!first) s += ", ";
    first = false;
    s += type_label(t.mask);
  }
  return s + "}";
}

}  // namespace suppvar
