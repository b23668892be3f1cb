#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "dacfir/pulses.hpp"

namespace dacfir {

/// Linear-phase FIR type. I/II symmetric, III/IV antisymmetric; I/III even
/// order, II/IV odd order.
enum class LinearPhaseType { I, II, III, IV };

inline constexpr LinearPhaseType kAllTypes[] = {LinearPhaseType::I, LinearPhaseType::II,
                                                LinearPhaseType::III, LinearPhaseType::IV};

constexpr bool is_symmetric(LinearPhaseType t) {
  return t == LinearPhaseType::I || t == LinearPhaseType::II;
}
constexpr bool requires_even_order(LinearPhaseType t) {
  return t == LinearPhaseType::I || t == LinearPhaseType::III;
}
bool parity_matches(LinearPhaseType t, int order);

/// Smallest order of the right parity with at least one free coefficient.
int smallest_valid_order(LinearPhaseType t);

std::string_view to_string(LinearPhaseType t);
/// Accepts "I".."IV" (any case) or "1".."4".
std::optional<LinearPhaseType> parse_filter_type(std::string_view name);

/// Real linear-phase FIR filter h(0..N).
///
/// The zero-phase response is expanded in the type's trigonometric basis:
///   I:   sum_{k=0..M}   e[k] cos(k wT),          N = 2M
///   II:  sum_{k=1..M+1} e[k-1] cos((k-1/2) wT),  N = 2M+1
///   III: sum_{k=1..M}   e[k-1] sin(k wT),        N = 2M
///   IV:  sum_{k=1..M+1} e[k-1] sin((k-1/2) wT),  N = 2M+1
/// so that H(e^{jwT}) = e^{-jwTN/2} H_R (I/II) or j e^{-jwTN/2} H_R (III/IV).
class FirFilter {
 public:
  /// Validates length, parity and (anti)symmetry within 1e-12.
  FirFilter(LinearPhaseType type, std::vector<double> coefficients);

  static FirFilter from_expansion(LinearPhaseType type, int order, std::span<const double> e);

  LinearPhaseType type() const noexcept { return type_; }
  int order() const noexcept { return static_cast<int>(h_.size()) - 1; }
  const std::vector<double>& coefficients() const noexcept { return h_; }

  /// Expansion coefficients e[] of the zero-phase response (see above).
  std::vector<double> expansion() const;

 private:
  LinearPhaseType type_;
  std::vector<double> h_;
};

/// Number of expansion coefficients (= distinct multipliers) for the type and order.
int expansion_length(LinearPhaseType t, int order);

double zero_phase_response(const FirFilter& filter, double wT);

/// Direct evaluation of sum h(n) e^{-j wT n}.
std::complex<double> frequency_response(const FirFilter& filter, double wT);

std::vector<double> structural_zeros(LinearPhaseType t);

/// Throws InvalidArgument on parity mismatch.
int multiplier_count(LinearPhaseType t, int order);

/// Delay of the equalized system, K = INT + offset.
struct Delay {
  int integer_part;  // INT
  double offset;     // one of 0, +1/4, -1/4, +1/2

  double value() const noexcept { return integer_part + offset; }
};

bool compatible(PulseKind kind, LinearPhaseType t);

/// Throws InvalidCombination for incompatible pulse/type, InvalidArgument on parity mismatch.
Delay delay_K(LinearPhaseType t, int order, PulseKind kind);

}  // namespace dacfir
