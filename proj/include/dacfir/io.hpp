#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "dacfir/curve_fit.hpp"
#include "dacfir/minimax_design.hpp"
#include "dacfir/order_estimate.hpp"
#include "dacfir/order_search.hpp"

namespace dacfir::io {

using nlohmann::json;

inline constexpr int kFilterSchemaVersion = 1;

/// Designed filter as stored on disk. Bandwidth is kept as B/pi.
struct FilterRecord {
  DesignProblem problem;
  double delay_K;
  double delta_achieved;
  Engine engine;
  FirFilter filter;
};

json filter_to_json(const FilterRecord& record);
/// Throws Format on schema violations and InvalidCombination/InvalidArgument
/// when the stored design is not a valid configuration.
FilterRecord filter_from_json(const json& j);

json params_to_json(const EstimateParams& params, std::optional<double> eps_max);
std::pair<EstimateParams, std::optional<double>> params_from_json(const json& j);

/// Writes via a temporary file in the same directory and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

inline constexpr const char* kSweepHeader = "B_over_pi,delta,n_min,delta_achieved,engine_iterations";

/// Exact decimal for doubles (round-trips bit for bit).
std::string format_double(double v);

std::string sweep_csv_line(double B, double delta, const SweepCell& cell);
std::string sweep_to_csv(const SweepGrid& grid);

/// Append-only cell cache backed by a sweep CSV. Loading tolerates a
/// truncated trailing line from an interrupted run.
class SweepCache {
 public:
  explicit SweepCache(std::filesystem::path path);

  std::optional<SweepCell> lookup(double B, double delta) const;
  /// Appends one line and flushes.
  void record(double B, double delta, const SweepCell& cell);
  std::size_t size() const { return cells_.size(); }

 private:
  std::filesystem::path path_;
  std::map<std::pair<double, double>, SweepCell> cells_;
};

/// Rebuilds a grid from a sweep CSV; axes are the sorted distinct values.
SweepGrid sweep_from_csv(const std::string& text, const SweepMetadata& metadata);

json sweep_metadata_to_json(const SweepMetadata& m);
SweepMetadata sweep_metadata_from_json(const json& j);

/// Time-domain pulse p(t)/1 for t in units of T over [0, 1.25).
std::string plot_pulse_shapes(int points_per_period = 400);
/// |P(jw)|/T for the four pulses over wT in [0, 6 pi].
std::string plot_magnitude_responses(int points = 1201);

struct OrderCurvePoint {
  PulseKind kind;
  int nb;
  LinearPhaseType type;
  double B;
  int n_min;  // kFailedCell on failure
  double n_est;
};

/// N_min and the built-in N_est versus B at a fixed delta, for every built-in case.
std::vector<OrderCurvePoint> order_curves(const std::vector<double>& bandwidths, double delta,
                                          const SearchOptions& options = {});
std::string order_curves_csv(const std::vector<OrderCurvePoint>& points, double delta);

/// Time-domain pulse value at t (units of T).
double pulse_shape(PulseKind kind, double t);

}  // namespace dacfir::io
