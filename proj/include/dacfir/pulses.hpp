#pragma once

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dacfir {

/// DAC reconstruction pulse.
enum class PulseKind { NRTZ, RTZ, RTC, RTCZ };

inline constexpr PulseKind kAllPulses[] = {PulseKind::NRTZ, PulseKind::RTZ, PulseKind::RTC,
                                           PulseKind::RTCZ};

struct PulseTraits {
  double amplitude_scale;  // 1 or 1/2
  double delay_fraction;   // in samples: 1/2 or 1/4
  bool has_j_factor;
  std::vector<int> valid_bands;
};

PulseTraits pulse_traits(PulseKind kind);

/// Real amplitude A(wT) with the overall factor T, the j factor and the
/// delay exponential removed. Even in wT; zero-frequency limits are exact.
double pulse_amplitude(PulseKind kind, double wT);

/// P(jw)/T = (j)^{has_j} * A(wT) * exp(-j wT delay_fraction).
std::complex<double> pulse_frequency_response(PulseKind kind, double wT);

/// Nyquist bands the pulse is intended for, ascending.
const std::vector<int>& valid_nyquist_bands(PulseKind kind);

bool is_valid_band(PulseKind kind, int nb);

std::string_view to_string(PulseKind kind);
/// Case-insensitive; also accepts the ZOH/RF/RFZ aliases.
std::optional<PulseKind> parse_pulse(std::string_view name);

}  // namespace dacfir
