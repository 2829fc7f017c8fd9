#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "lrjs/types.hpp"

namespace lrjs {

using PixelMatrix = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;

/// 8-bit log-compressed display image.
struct BmodeImage {
  PixelMatrix pixels;
  double dynamic_range_db = 0.0;
  double normalization_max = 0.0;  // linear envelope value mapped to 255
};

struct PixelRegion {
  Index row0 = 0, col0 = 0, rows = 0, cols = 0;
};

/// Target / background rectangles for contrast metrics. Regions must not
/// overlap and each must cover at least 16 pixels.
struct RegionSpec {
  PixelRegion target;
  PixelRegion background;

  RegionSpec(PixelRegion target, PixelRegion background);
};

struct ZeroContrastError : std::domain_error {
  using std::domain_error::domain_error;
};
struct ZeroDenominatorError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Per-column magnitude of the analytic signal (one-sided spectrum doubling).
Matrix envelope(const RfFrame& frame);

/// pixels = round(255 * clamp(1 + 20*log10(env/max(env))/DR, 0, 1)).
BmodeImage bmode(const Matrix& env, double dynamic_range_db);

/// 20*log10(|mu_t - mu_b| / sqrt(sigma_t^2 + sigma_b^2)) over pixel values.
/// Throws ZeroDenominatorError when both regions are constant and
/// ZeroContrastError when the means coincide.
double cnr(const BmodeImage& img, const RegionSpec& regions);

/// |xhat - xref|_F / |xref|_F.
double relative_error(const RfFrame& xhat, const RfFrame& xref);

/// Binary PGM (P5, maxval 255).
void write_pgm(const std::filesystem::path& path, const BmodeImage& img);

/// Shared metrics CSV row schema. Unknown fields are left empty.
struct MetricsRow {
  std::optional<double> sr;
  std::optional<double> cnr_db;
  std::optional<double> relative_error;
  std::optional<int> iterations;
  std::optional<double> wall_time_s;
};

std::string metrics_csv_header();
std::string format_metrics_row(const MetricsRow& row);

}  // namespace lrjs
