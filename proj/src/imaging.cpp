#include "lrjs/imaging.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "fft_util.hpp"

namespace lrjs {

namespace {

void validate_region(const PixelRegion& r, const char* which) {
  if (r.row0 < 0 || r.col0 < 0 || r.rows < 1 || r.cols < 1)
    throw std::invalid_argument(std::string("RegionSpec: malformed ") + which + " region");
  if (r.rows * r.cols < 16)
    throw std::invalid_argument(std::string("RegionSpec: ") + which +
                                " region must cover at least 16 pixels");
}

bool regions_overlap(const PixelRegion& a, const PixelRegion& b) {
  const bool row_disjoint = a.row0 + a.rows <= b.row0 || b.row0 + b.rows <= a.row0;
  const bool col_disjoint = a.col0 + a.cols <= b.col0 || b.col0 + b.cols <= a.col0;
  return !(row_disjoint || col_disjoint);
}

struct RegionStats {
  double mean = 0.0;
  double stddev = 0.0;  // population
};

RegionStats region_stats(const BmodeImage& img, const PixelRegion& r) {
  if (r.row0 + r.rows > img.pixels.rows() || r.col0 + r.cols > img.pixels.cols())
    throw std::invalid_argument("cnr: region exceeds the image bounds");
  const double count = static_cast<double>(r.rows) * static_cast<double>(r.cols);
  double sum = 0.0;
  for (Index i = r.row0; i < r.row0 + r.rows; ++i)
    for (Index j = r.col0; j < r.col0 + r.cols; ++j) sum += img.pixels(i, j);
  const double mean = sum / count;
  double sq = 0.0;
  for (Index i = r.row0; i < r.row0 + r.rows; ++i)
    for (Index j = r.col0; j < r.col0 + r.cols; ++j) {
      const double d = img.pixels(i, j) - mean;
      sq += d * d;
    }
  return {mean, std::sqrt(sq / count)};
}

}  // namespace

RegionSpec::RegionSpec(PixelRegion target_in, PixelRegion background_in)
    : target(target_in), background(background_in) {
  validate_region(target, "target");
  validate_region(background, "background");
  if (regions_overlap(target, background))
    throw std::invalid_argument("RegionSpec: target and background regions overlap");
}

Matrix envelope(const RfFrame& frame) {
  const Index m = frame.samples();
  if (m < 4) throw std::invalid_argument("envelope: need at least 4 samples");
  const Index n = frame.channels();
  const detail::Dft dft(static_cast<int>(m));

  Matrix env(m, n);
  detail::parallel_chunks(n, [&](Index begin, Index end) {
    Eigen::VectorXcd column(m), spectrum(m), analytic(m);
    for (Index c = begin; c < end; ++c) {
      column = frame.data.col(c).cast<Complex>();
      dft.forward(column.data(), spectrum.data());
      // One-sided doubling: keep DC (and Nyquist when m is even), double the
      // positive bins, zero the negative ones.
      const Index limit = m / 2;
      for (Index j = 1; j < m; ++j) {
        if (j < limit || (m % 2 == 1 && j == limit))
          spectrum[j] *= 2.0;
        else if (j > limit)
          spectrum[j] = 0.0;
      }
      dft.backward(spectrum.data(), analytic.data());
      env.col(c) = analytic.cwiseAbs() / static_cast<double>(m);
    }
  });
  return env;
}

BmodeImage bmode(const Matrix& env, double dynamic_range_db) {
  if (!(dynamic_range_db > 0.0)) throw std::invalid_argument("bmode: dynamic range must be > 0");
  if (env.size() == 0 || (env.array() < 0.0).any())
    throw std::invalid_argument("bmode: envelope must be non-negative");
  const double max_value = env.maxCoeff();
  if (!(max_value > 0.0)) throw std::domain_error("bmode: all-zero envelope");

  BmodeImage img;
  img.dynamic_range_db = dynamic_range_db;
  img.normalization_max = max_value;
  img.pixels.resize(env.rows(), env.cols());
  for (Index i = 0; i < env.rows(); ++i)
    for (Index j = 0; j < env.cols(); ++j) {
      const double db = 20.0 * std::log10(env(i, j) / max_value);  // -inf at zero
      const double level = std::clamp(1.0 + db / dynamic_range_db, 0.0, 1.0);
      img.pixels(i, j) = static_cast<std::uint8_t>(std::lround(255.0 * level));
    }
  return img;
}

double cnr(const BmodeImage& img, const RegionSpec& regions) {
  const RegionStats t = region_stats(img, regions.target);
  const RegionStats b = region_stats(img, regions.background);
  const double contrast = std::abs(t.mean - b.mean);
  const double denom = std::sqrt(t.stddev * t.stddev + b.stddev * b.stddev);
  if (denom == 0.0)
    throw ZeroDenominatorError("cnr: both regions are constant");
  if (contrast == 0.0)
    throw ZeroContrastError("cnr: regions have identical means");
  return 20.0 * std::log10(contrast / denom);
}

double relative_error(const RfFrame& xhat, const RfFrame& xref) {
  if (xhat.data.rows() != xref.data.rows() || xhat.data.cols() != xref.data.cols())
    throw std::invalid_argument("relative_error: shape mismatch");
  const double ref_norm = xref.data.norm();
  if (ref_norm == 0.0) throw std::domain_error("relative_error: zero reference frame");
  return (xhat.data - xref.data).norm() / ref_norm;
}

void write_pgm(const std::filesystem::path& path, const BmodeImage& img) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open PGM for writing: " + path.string());
  out << "P5\n" << img.pixels.cols() << " " << img.pixels.rows() << "\n255\n";
  for (Index i = 0; i < img.pixels.rows(); ++i)
    for (Index j = 0; j < img.pixels.cols(); ++j)
      out.put(static_cast<char>(img.pixels(i, j)));
  if (!out) throw std::runtime_error("PGM write failed: " + path.string());
}

std::string metrics_csv_header() { return "sr,cnr_db,relative_error,iterations,wall_time_s"; }

std::string format_metrics_row(const MetricsRow& row) {
  char buf[64];
  std::string line;
  auto append_double = [&](const std::optional<double>& v) {
    if (v.has_value()) {
      std::snprintf(buf, sizeof(buf), "%.17g", *v);
      line += buf;
    }
  };
  append_double(row.sr);
  line += ',';
  append_double(row.cnr_db);
  line += ',';
  append_double(row.relative_error);
  line += ',';
  if (row.iterations.has_value()) line += std::to_string(*row.iterations);
  line += ',';
  append_double(row.wall_time_s);
  return line;
}

}  // namespace lrjs
