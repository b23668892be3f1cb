#pragma once

#include <vector>

namespace dacfir {

/// Nyquist band index and normalized bandwidth B (rad), 0 < B < pi.
struct BandSpec {
  int nb;
  double bandwidth;
};

/// Throws InvalidArgument unless nb >= 1 and 0 < bandwidth < pi.
void validate(const BandSpec& spec);

struct Interval {
  double lo;
  double hi;
};

/// [0, B] in the first band, else centered at (nb - 1/2) pi with width B.
Interval band_interval(const BandSpec& spec);

inline constexpr int kDefaultGridDensity = 16;
inline constexpr int kMinGridPoints = 256;

struct FrequencyGrid {
  std::vector<double> points;  // strictly increasing, endpoints included
  int density;
};

/// Uniform grid of max(density * n_free_params, 256) points over the band.
FrequencyGrid make_grid(const BandSpec& spec, int n_free_params,
                        int density = kDefaultGridDensity);

/// Uniform grid with an explicit point count over an arbitrary interval.
std::vector<double> linspace(double lo, double hi, int count);

}  // namespace dacfir
