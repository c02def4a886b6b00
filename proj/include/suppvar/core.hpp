#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace suppvar {

// Bit k-1 represents generator f_k.
using Mask = std::uint32_t;

inline constexpr int kMaxStructuralN = 24;

inline int popcount(Mask m) { return std::popcount(m); }
inline Mask bit(int i) { return Mask{1} << (i - 1); }
inline bool has(Mask m, int i) { return (m >> (i - 1)) & 1u; }
inline Mask full_mask(int n) { return n >= 32 ? ~Mask{0} : (Mask{1} << n) - 1; }
inline bool subset(Mask a, Mask b) { return (a & ~b) == 0; }

// Parity of the members of sigma strictly below i.
inline int sign_below(Mask sigma, int i) {
  Mask below = (Mask{1} << (i - 1)) - 1;
  return (popcount(sigma & below) & 1) ? -1 : 1;
}

// b_1...b_n rendering, b_k = 1 iff f_k in the mask.
std::string to_bstring(Mask m, int n);
Mask from_bstring(const std::string& s);

// 1-based member list.
std::vector<int> members(Mask m);
Mask mask_of(const std::vector<int>& idx);

// Compact label such as "x124" (digits concatenated) or "x{10,11}" once labels exceed 9.
std::string type_label(Mask m);

enum class Errc {
  BadInput,
  EmptyInput,
  DivisibleGenerators,
  NotMinimal,
  EmptyType,
  IndexOutOfRange,
  FaceBudgetExceeded,
  EdgeBudgetExceeded,
  MatrixTooLarge,
  NotPrime,
  DimensionMismatch,
  WrongCardinality,
  SharedVertex,
  MissingEdge,
  ForbiddenHomotopyIndex,
  UnverifiedMatching,
  CycleCapExceeded,
  OverlappingCyclesUnsupported,
  ThetaTouchedByMatching,
  UnsatisfiableOverField,
  BadParameters,
  NoHandConstruction,
  CoefficientOverflow,
};

const char* errc_name(Errc c);

// Cap-type errors map to CLI exit code 3, everything else to 2.
bool is_cap_error(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what, int a = 0, int b = 0)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code), a_(a), b_(b) {}
  Errc code() const { return code_; }
  int first() const { return a_; }
  int second() const { return b_; }

 private:
  Errc code_;
  int a_;
  int b_;
};

}  // namespace suppvar
