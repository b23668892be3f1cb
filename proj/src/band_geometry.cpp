#include "dacfir/band_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "dacfir/error.hpp"

namespace dacfir {

void validate(const BandSpec& spec) {
  if (spec.nb < 1) {
    throw Error(ErrorCode::InvalidArgument, "Nyquist band must be >= 1, got " + std::to_string(spec.nb));
  }
  if (!(spec.bandwidth > 0.0 && spec.bandwidth < std::numbers::pi)) {
    throw Error(ErrorCode::InvalidArgument,
                "bandwidth must satisfy 0 < B < pi, got B/pi = " +
                    std::to_string(spec.bandwidth / std::numbers::pi));
  }
}

Interval band_interval(const BandSpec& spec) {
  validate(spec);
  if (spec.nb == 1) return {0.0, spec.bandwidth};
  const double center = (spec.nb - 0.5) * std::numbers::pi;
  return {center - spec.bandwidth / 2.0, center + spec.bandwidth / 2.0};
}

std::vector<double> linspace(double lo, double hi, int count) {
  if (count < 2 || !(hi > lo)) throw Error(ErrorCode::InvalidArgument, "degenerate interval");
  std::vector<double> out(count);
  const double step = (hi - lo) / (count - 1);
  for (int i = 0; i < count; ++i) out[i] = lo + i * step;
  out.back() = hi;
  return out;
}

FrequencyGrid make_grid(const BandSpec& spec, int n_free_params, int density) {
  if (n_free_params < 1) throw Error(ErrorCode::InvalidArgument, "need at least one free parameter");
  if (density < 8) throw Error(ErrorCode::InvalidArgument, "grid density must be >= 8");
  const Interval band = band_interval(spec);
  const int count = std::max(density * n_free_params, kMinGridPoints);
  return {linspace(band.lo, band.hi, count), density};
}

}  // namespace dacfir
