#include "dacfir/pulses.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

namespace dacfir {
namespace {

constexpr double kSeriesThreshold = 1e-8;

// sin(x)/x
double sinc_ratio(double x) {
  if (std::abs(x) < kSeriesThreshold) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

// (1 - cos(x))/x, written as 2 sin^2(x/2)/x to avoid cancellation near zero.
double versine_ratio(double x) {
  if (std::abs(x) < kSeriesThreshold) return x / 2.0;
  const double s = std::sin(x / 2.0);
  return 2.0 * s * s / x;
}

}  // namespace

PulseTraits pulse_traits(PulseKind kind) {
  switch (kind) {
    case PulseKind::NRTZ: return {1.0, 0.5, false, {1}};
    case PulseKind::RTZ: return {0.5, 0.25, false, {1, 2, 3}};
    case PulseKind::RTC: return {1.0, 0.5, true, {2, 3}};
    case PulseKind::RTCZ: return {0.5, 0.25, true, {2, 3, 4, 5, 6}};
  }
  return {1.0, 0.5, false, {}};
}

double pulse_amplitude(PulseKind kind, double wT) {
  switch (kind) {
    case PulseKind::NRTZ: return sinc_ratio(wT / 2.0);
    case PulseKind::RTZ: return 0.5 * sinc_ratio(wT / 4.0);
    // (1 - cos x)/x is odd; the amplitude is its even extension and the sign
    // for wT < 0 moves into pulse_frequency_response.
    case PulseKind::RTC: return versine_ratio(std::abs(wT) / 2.0);
    case PulseKind::RTCZ: return 0.5 * versine_ratio(std::abs(wT) / 4.0);
  }
  return 0.0;
}

std::complex<double> pulse_frequency_response(PulseKind kind, double wT) {
  const PulseTraits t = pulse_traits(kind);
  const std::complex<double> delay = std::polar(1.0, -wT * t.delay_fraction);
  if (!t.has_j_factor) return pulse_amplitude(kind, wT) * delay;
  const double signed_amp = wT < 0.0 ? -pulse_amplitude(kind, wT) : pulse_amplitude(kind, wT);
  return std::complex<double>(0.0, signed_amp) * delay;
}

const std::vector<int>& valid_nyquist_bands(PulseKind kind) {
  static const std::vector<int> nrtz{1};
  static const std::vector<int> rtz{1, 2, 3};
  static const std::vector<int> rtc{2, 3};
  static const std::vector<int> rtcz{2, 3, 4, 5, 6};
  switch (kind) {
    case PulseKind::NRTZ: return nrtz;
    case PulseKind::RTZ: return rtz;
    case PulseKind::RTC: return rtc;
    case PulseKind::RTCZ: return rtcz;
  }
  return nrtz;
}

bool is_valid_band(PulseKind kind, int nb) {
  const auto& bands = valid_nyquist_bands(kind);
  return std::find(bands.begin(), bands.end(), nb) != bands.end();
}

std::string_view to_string(PulseKind kind) {
  switch (kind) {
    case PulseKind::NRTZ: return "NRTZ";
    case PulseKind::RTZ: return "RTZ";
    case PulseKind::RTC: return "RTC";
    case PulseKind::RTCZ: return "RTCZ";
  }
  return "?";
}

std::optional<PulseKind> parse_pulse(std::string_view name) {
  std::string up(name);
  std::transform(up.begin(), up.end(), up.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (up == "NRTZ" || up == "ZOH") return PulseKind::NRTZ;
  if (up == "RTZ") return PulseKind::RTZ;
  if (up == "RTC" || up == "RF") return PulseKind::RTC;
  if (up == "RTCZ" || up == "RFZ") return PulseKind::RTCZ;
  return std::nullopt;
}

}  // namespace dacfir
