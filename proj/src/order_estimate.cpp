#include "dacfir/order_estimate.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dacfir/error.hpp"

namespace dacfir {
namespace {

void check_domain(double B, double delta) {
  if (!(B > 0.0 && B < std::numbers::pi)) {
    throw Error(ErrorCode::InvalidArgument, "bandwidth must satisfy 0 < B < pi");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "accuracy delta must satisfy 0 < delta < 1");
  }
}

std::pair<CaseKey, BuiltinRow> row(PulseKind k, int nb, LinearPhaseType t, double a1, double a2,
                                   double a3, double a4, double b1, double b2, double b3, double b4,
                                   double c, double eps_max) {
  EstimateParams p{a1, a2, a3, a4, b1, b2, b3, b4, c, {}};
  p.provenance.source = Provenance::Source::Builtin;
  p.provenance.kind = k;
  p.provenance.nb = nb;
  p.provenance.type = t;
  return {{k, nb, t}, {p, eps_max}};
}

}  // namespace

bool EstimateParams::satisfies_constraints() const { return a2 > 0.0 && b2 > 0.0 && a4 <= b4; }

double signed_pow(double x, double p) {
  const double mag = std::pow(std::abs(x), p);
  return x < 0.0 ? -mag : mag;
}

double basic_estimate(double a, double b, double c, double B, double delta) {
  check_domain(B, delta);
  const double L = std::log10(delta);
  const double gap = std::numbers::pi - B;
  return c + a * L / gap + b * L * L / (gap * gap);
}

double evaluate_estimate(const EstimateParams& p, double B, double delta) {
  check_domain(B, delta);
  const double gap = std::numbers::pi - B;
  return p.c + p.a1 * signed_pow(std::log10(p.a2 * delta), p.a3) / std::pow(gap, p.a4) +
         p.b1 * signed_pow(std::log10(p.b2 * delta), p.b3) / std::pow(gap, p.b4);
}

const std::vector<std::pair<CaseKey, BuiltinRow>>& param_table() {
  using enum PulseKind;
  using T = LinearPhaseType;
  // clang-format off
  static const std::vector<std::pair<CaseKey, BuiltinRow>> table{
      //   pulse NB type    a1       a2      a3      a4      b1      b2      b3       b4      c        eps_max
      row(NRTZ, 1, T::I,   -1.8860, 1.6994, 1.3380, 1.2150, 1.1523, 3.1189, 0.8861, 1.5646, 1.6565, 2.07),
      row(NRTZ, 1, T::II,  -2.5636, 0.0419, 1.1841, 1.0280, 1.3290, 5.3295, -0.0435, 1.5107, -2.1359, 2.15),
      row(RTC, 2, T::III,  -6.5450, 0.2535, 1.1020, 1.0592, 0.7124, 0.0144, 0.5291, 1.6930, -3.3270, 4.26),
      row(RTC, 2, T::IV,   -6.1858, 0.1881, 1.1211, 1.0690, 0.6163, 0.0004, 0.6623, 1.6317, -3.7629, 3.42),
      row(RTC, 3, T::III,  -7.3009, 0.3264, 1.0470, 1.0729, 0.6768, 0.0041, 0.5926, 1.6951, -2.2454, 4.08),
      row(RTC, 3, T::IV,   -7.1187, 0.4480, 1.0525, 1.0798, 0.4598, 0.0088, 0.6708, 1.7778, -3.7050, 3.48),
      row(RTZ, 1, T::I,    -0.6989, 0.6444, 1.7687, 0.9841, 0.7326, 8.3996, 0.5998, 1.5167, -0.8796, 1.86),
      row(RTZ, 1, T::II,   -3.9194, 0.3509, 1.0213, 1.0540, 0.8643, 2.1014, 0.2251, 1.6100, -1.7900, 2.10),
      row(RTZ, 2, T::I,    -1.1636, 0.8492, 1.8549, 0.9878, 0.7606, 7.2968, 0.6346, 1.6906, -0.8305, 3.06),
      row(RTZ, 2, T::II,   -6.9405, 0.3777, 1.0652, 1.0618, 0.9325, 1.0444, 0.2408, 1.7705, -3.8064, 3.39),
      row(RTZ, 3, T::I,    -1.7681, 0.6155, 1.6327, 1.0472, 1.1094, 4.3515, 0.6212, 1.6716, -0.4518, 3.32),
      row(RTZ, 3, T::II,   -6.9420, 0.2634, 1.0710, 1.0583, 0.6337, 0.0005, 0.5543, 1.6732, -3.5774, 3.44),
      row(RTCZ, 2, T::III, -6.3698, 0.2626, 1.1139, 1.0794, 0.8666, 0.1547, 0.5521, 1.7007, -2.5299, 4.13),
      row(RTCZ, 2, T::IV,  -7.1531, 0.3382, 1.0594, 1.0830, 1.1192, 0.1113, 0.5253, 1.6354, -3.7004, 3.32),
      row(RTCZ, 3, T::III, -7.2104, 0.2296, 1.0769, 1.0881, 1.0376, 0.0064, 0.7990, 1.5220, -3.1565, 4.08),
      row(RTCZ, 3, T::IV,  -7.0696, 0.3242, 1.0603, 1.0572, 0.8060, 0.0103, 0.4343, 1.6757, -3.7246, 3.33),
      row(RTCZ, 4, T::III, -6.8575, 0.3248, 1.0796, 1.0511, 0.8774, 0.2604, 0.3911, 1.6827, -3.2172, 4.21),
      row(RTCZ, 4, T::IV,  -5.9339, 0.1883, 1.1421, 1.0649, 0.2773, 4.35e-6, 0.9005, 1.6442, -3.7037, 3.29),
      row(RTCZ, 5, T::III, -8.2560, 0.4653, 0.9947, 1.0665, 1.7552, 1.9704, 0.2600, 1.5930, -2.8293, 4.14),
      row(RTCZ, 5, T::IV,  -4.0270, 0.0326, 1.2657, 1.0245, 2.4171, 0.8344, -0.2982, 1.5100, -4.5747, 3.34),
      row(RTCZ, 6, T::III, -5.6443, 0.1462, 1.1504, 1.0669, 0.8911, 0.0042, 0.3929, 1.6808, -2.5730, 4.13),
      row(RTCZ, 6, T::IV,  -3.8103, 0.0329, 1.3015, 1.0127, 1.7109, 0.4613, -0.4411, 1.6626, -4.2685, 3.41),
  };
  // clang-format on
  return table;
}

BuiltinRow builtin_params(PulseKind kind, int nb, LinearPhaseType type) {
  for (const auto& [key, value] : param_table()) {
    if (key == CaseKey{kind, nb, type}) return value;
  }
  throw Error(ErrorCode::UnknownParameters,
              "no built-in estimate parameters for " + std::string(to_string(kind)) + " NB" +
                  std::to_string(nb) + " Type " + std::string(to_string(type)));
}

int order_from_estimate(double estimate, LinearPhaseType type) {
  int order = static_cast<int>(std::lround(estimate));
  if (!parity_matches(type, std::max(order, 0))) order += 1;
  return std::max(order, smallest_valid_order(type));
}

int estimate_order(PulseKind kind, int nb, LinearPhaseType type, double B, double delta) {
  return order_from_estimate(evaluate_estimate(builtin_params(kind, nb, type).params, B, delta),
                             type);
}

}  // namespace dacfir
