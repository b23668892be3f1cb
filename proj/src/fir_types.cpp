#include "dacfir/fir_types.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dacfir/error.hpp"

namespace dacfir {

bool parity_matches(LinearPhaseType t, int order) {
  if (order < 0) return false;
  return requires_even_order(t) == (order % 2 == 0);
}

int smallest_valid_order(LinearPhaseType t) {
  switch (t) {
    case LinearPhaseType::I: return 0;
    case LinearPhaseType::II: return 1;
    case LinearPhaseType::III: return 2;
    case LinearPhaseType::IV: return 1;
  }
  return 0;
}

std::string_view to_string(LinearPhaseType t) {
  switch (t) {
    case LinearPhaseType::I: return "I";
    case LinearPhaseType::II: return "II";
    case LinearPhaseType::III: return "III";
    case LinearPhaseType::IV: return "IV";
  }
  return "?";
}

std::optional<LinearPhaseType> parse_filter_type(std::string_view name) {
  std::string up(name);
  for (char& c : up) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (up == "I" || up == "1") return LinearPhaseType::I;
  if (up == "II" || up == "2") return LinearPhaseType::II;
  if (up == "III" || up == "3") return LinearPhaseType::III;
  if (up == "IV" || up == "4") return LinearPhaseType::IV;
  return std::nullopt;
}

int expansion_length(LinearPhaseType t, int order) {
  switch (t) {
    case LinearPhaseType::I: return order / 2 + 1;
    case LinearPhaseType::II: return (order + 1) / 2;
    case LinearPhaseType::III: return order / 2;
    case LinearPhaseType::IV: return (order + 1) / 2;
  }
  return 0;
}

FirFilter::FirFilter(LinearPhaseType type, std::vector<double> coefficients)
    : type_(type), h_(std::move(coefficients)) {
  if (h_.empty()) throw Error(ErrorCode::InvalidArgument, "filter needs at least one coefficient");
  const int n = order();
  if (!parity_matches(type_, n)) {
    throw Error(ErrorCode::InvalidArgument, "order " + std::to_string(n) +
                                                " has wrong parity for Type " +
                                                std::string(to_string(type_)));
  }
  const double sign = is_symmetric(type_) ? 1.0 : -1.0;
  for (int i = 0; i <= n; ++i) {
    if (std::abs(h_[i] - sign * h_[n - i]) > 1e-12) {
      throw Error(ErrorCode::InvalidArgument, "impulse response violates Type " +
                                                  std::string(to_string(type_)) + " symmetry");
    }
  }
}

FirFilter FirFilter::from_expansion(LinearPhaseType type, int order, std::span<const double> e) {
  if (!parity_matches(type, order)) {
    throw Error(ErrorCode::InvalidArgument, "order parity does not match filter type");
  }
  if (static_cast<int>(e.size()) != expansion_length(type, order)) {
    throw Error(ErrorCode::InvalidArgument, "expansion length does not match order");
  }
  // H_R = sum_n h(n) f((N/2 - n) wT) with f = cos (I/II) or sin (III/IV).
  // A basis term with frequency m > 0 collects h(n) and h(N-n), m = N/2 - n.
  std::vector<double> h(order + 1, 0.0);
  const double sign = is_symmetric(type) ? 1.0 : -1.0;
  const int half = order / 2;
  switch (type) {
    case LinearPhaseType::I:
      h[half] = e[0];
      for (int k = 1; k <= half; ++k) h[half - k] = h[half + k] = e[k] / 2.0;
      break;
    case LinearPhaseType::III:
      for (int k = 1; k <= half; ++k) {
        h[half - k] = e[k - 1] / 2.0;
        h[half + k] = -e[k - 1] / 2.0;
      }
      break;
    case LinearPhaseType::II:
    case LinearPhaseType::IV:
      // frequency k - 1/2 corresponds to n = (N+1)/2 - k.
      for (int k = 1; k <= (order + 1) / 2; ++k) {
        const int n = (order + 1) / 2 - k;
        h[n] = e[k - 1] / 2.0;
        h[order - n] = sign * e[k - 1] / 2.0;
      }
      break;
  }
  return FirFilter(type, std::move(h));
}

std::vector<double> FirFilter::expansion() const {
  const int n = order();
  const int half = n / 2;
  std::vector<double> e(expansion_length(type_, n));
  switch (type_) {
    case LinearPhaseType::I:
      e[0] = h_[half];
      for (int k = 1; k <= half; ++k) e[k] = 2.0 * h_[half - k];
      break;
    case LinearPhaseType::III:
      for (int k = 1; k <= half; ++k) e[k - 1] = 2.0 * h_[half - k];
      break;
    case LinearPhaseType::II:
    case LinearPhaseType::IV:
      for (int k = 1; k <= (n + 1) / 2; ++k) e[k - 1] = 2.0 * h_[(n + 1) / 2 - k];
      break;
  }
  return e;
}

double zero_phase_response(const FirFilter& filter, double wT) {
  const std::vector<double> e = filter.expansion();
  double acc = 0.0;
  switch (filter.type()) {
    case LinearPhaseType::I:
      for (std::size_t k = 0; k < e.size(); ++k) acc += e[k] * std::cos(k * wT);
      break;
    case LinearPhaseType::II:
      for (std::size_t k = 1; k <= e.size(); ++k) acc += e[k - 1] * std::cos((k - 0.5) * wT);
      break;
    case LinearPhaseType::III:
      for (std::size_t k = 1; k <= e.size(); ++k) acc += e[k - 1] * std::sin(k * wT);
      break;
    case LinearPhaseType::IV:
      for (std::size_t k = 1; k <= e.size(); ++k) acc += e[k - 1] * std::sin((k - 0.5) * wT);
      break;
  }
  return acc;
}

std::complex<double> frequency_response(const FirFilter& filter, double wT) {
  std::complex<double> acc = 0.0;
  const auto& h = filter.coefficients();
  for (std::size_t n = 0; n < h.size(); ++n) acc += h[n] * std::polar(1.0, -wT * n);
  return acc;
}

std::vector<double> structural_zeros(LinearPhaseType t) {
  constexpr double pi = std::numbers::pi;
  switch (t) {
    case LinearPhaseType::I: return {};
    case LinearPhaseType::II: return {pi};
    case LinearPhaseType::III: return {0.0, pi};
    case LinearPhaseType::IV: return {0.0};
  }
  return {};
}

int multiplier_count(LinearPhaseType t, int order) {
  if (!parity_matches(t, order)) {
    throw Error(ErrorCode::InvalidArgument, "order " + std::to_string(order) +
                                                " has wrong parity for Type " +
                                                std::string(to_string(t)));
  }
  return expansion_length(t, order);
}

bool compatible(PulseKind kind, LinearPhaseType t) {
  const bool needs_antisym = pulse_traits(kind).has_j_factor;
  return needs_antisym != is_symmetric(t);
}

Delay delay_K(LinearPhaseType t, int order, PulseKind kind) {
  if (!compatible(kind, t)) {
    throw Error(ErrorCode::InvalidCombination,
                "pulse " + std::string(to_string(kind)) + " cannot be equalized by a Type " +
                    std::string(to_string(t)) + " filter");
  }
  if (!parity_matches(t, order)) {
    throw Error(ErrorCode::InvalidArgument, "order parity does not match filter type");
  }
  const int integer_part = requires_even_order(t) ? order / 2 : (order + 1) / 2;
  // Filter delay N/2 plus pulse delay; for odd N, N/2 = INT - 1/2.
  const double pulse_delay = pulse_traits(kind).delay_fraction;
  const double offset = requires_even_order(t) ? pulse_delay : pulse_delay - 0.5;
  return {integer_part, offset};
}

}  // namespace dacfir
