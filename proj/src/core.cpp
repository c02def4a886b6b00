#include "suppvar/core.hpp"

namespace suppvar {

std::string to_bstring(Mask m, int n) {
  std::string s(n, '0');
  for (int k = 0; k < n; ++k)
    if ((m >> k) & 1u) s[k] = '1';
  return s;
}

Mask from_bstring(const std::string& s) {
  if (s.size() > static_cast<std::size_t>(kMaxStructuralN))
    throw Error(Errc::BadInput, "mask string too long: " + s);
  Mask m = 0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s[k] == '1')
      m |= Mask{1} << k;
    else if (s[k] != '0')
      throw Error(Errc::BadInput, "mask string must be 0/1: " + s);
  }
  return m;
}

std::vector<int> members(Mask m) {
  std::vector<int> out;
  while (m) {
    out.push_back(std::countr_zero(m) + 1);
    m &= m - 1;
  }
  return out;
}

Mask mask_of(const std::vector<int>& idx) {
  Mask m = 0;
  for (int i : idx) {
    if (i < 1 || i > kMaxStructuralN) throw Error(Errc::IndexOutOfRange, "generator index " + std::to_string(i), i);
    m |= bit(i);
  }
  return m;
}

std::string type_label(Mask m) {
  auto idx = members(m);
  bool wide = !idx.empty() && idx.back() > 9;
  std::string s = "x";
  if (wide) s += "{";
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (wide && k) s += ",";
    s += std::to_string(idx[k]);
  }
  if (wide) s += "}";
  return s;
}

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::BadInput: return "BadInput";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::DivisibleGenerators: return "DivisibleGenerators";
    case Errc::NotMinimal: return "NotMinimal";
    case Errc::EmptyType: return "EmptyType";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::FaceBudgetExceeded: return "FaceBudgetExceeded";
    case Errc::EdgeBudgetExceeded: return "EdgeBudgetExceeded";
    case Errc::MatrixTooLarge: return "MatrixTooLarge";
    case Errc::NotPrime: return "NotPrime";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::WrongCardinality: return "WrongCardinality";
    case Errc::SharedVertex: return "SharedVertex";
    case Errc::MissingEdge: return "MissingEdge";
    case Errc::ForbiddenHomotopyIndex: return "ForbiddenHomotopyIndex";
    case Errc::UnverifiedMatching: return "UnverifiedMatching";
    case Errc::CycleCapExceeded: return "CycleCapExceeded";
    case Errc::OverlappingCyclesUnsupported: return "OverlappingCyclesUnsupported";
    case Errc::ThetaTouchedByMatching: return "ThetaTouchedByMatching";
    case Errc::UnsatisfiableOverField: return "UnsatisfiableOverField";
    case Errc::BadParameters: return "BadParameters";
    case Errc::NoHandConstruction: return "NoHandConstruction";
    case Errc::CoefficientOverflow: return "CoefficientOverflow";
  }
  return "Unknown";
}

bool is_cap_error(Errc c) {
  switch (c) {
    case Errc::FaceBudgetExceeded:
    case Errc::EdgeBudgetExceeded:
    case Errc::MatrixTooLarge:
    case Errc::CycleCapExceeded:
    case Errc::OverlappingCyclesUnsupported:
    case Errc::CoefficientOverflow:
      return true;
    default:
      return false;
  }
}

}  // namespace suppvar
