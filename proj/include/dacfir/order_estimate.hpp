#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "dacfir/fir_types.hpp"
#include "dacfir/pulses.hpp"

namespace dacfir {

/// Where a parameter set came from.
struct Provenance {
  enum class Source { Builtin, Fitted };
  Source source = Source::Fitted;
  std::optional<PulseKind> kind;
  std::optional<int> nb;
  std::optional<LinearPhaseType> type;
  std::map<std::string, std::string> metadata;
};

/// Parameters of
///   N_est(B, d) = c + a1 [log10(a2 d)]^a3 / (pi - B)^a4
///                   + b1 [log10(b2 d)]^b3 / (pi - B)^b4.
struct EstimateParams {
  double a1 = 0, a2 = 1, a3 = 1, a4 = 1;
  double b1 = 0, b2 = 1, b3 = 2, b4 = 2;
  double c = 0;
  Provenance provenance;

  /// a2, b2 > 0 and a4 <= b4.
  bool satisfies_constraints() const;
};

/// sign(x) |x|^p. The logarithms above are negative on (almost) the whole
/// domain and the fitted exponents are not integers; this is the continuous
/// real extension the built-in constants were fitted with.
double signed_pow(double x, double p);

/// N_est = c + a log10(d)/(pi - B) + b [log10(d)]^2/(pi - B)^2.
double basic_estimate(double a, double b, double c, double B, double delta);

/// Throws InvalidArgument unless 0 < B < pi and 0 < delta < 1.
double evaluate_estimate(const EstimateParams& p, double B, double delta);

struct BuiltinRow {
  EstimateParams params;
  double eps_max;
};

/// One of the 22 built-in (pulse, band, type) rows; throws UnknownParameters otherwise.
BuiltinRow builtin_params(PulseKind kind, int nb, LinearPhaseType type);

using CaseKey = std::tuple<PulseKind, int, LinearPhaseType>;
/// All built-in rows, in a fixed order.
const std::vector<std::pair<CaseKey, BuiltinRow>>& param_table();

/// Rounds to the nearest integer, bumps to the type's parity, floors at the
/// smallest valid order.
int order_from_estimate(double estimate, LinearPhaseType type);

int estimate_order(PulseKind kind, int nb, LinearPhaseType type, double B, double delta);

}  // namespace dacfir
