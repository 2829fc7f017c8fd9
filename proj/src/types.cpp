#include "lrjs/types.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lrjs {

RfFrame::RfFrame(Matrix data_in, double fs_in, double fc_in)
    : data(std::move(data_in)), fs(fs_in), fc(fc_in) {
  if (data.rows() < 2 || data.cols() < 1)
    throw std::invalid_argument("RfFrame: need at least 2 samples and 1 channel");
  if (!data.allFinite())
    throw std::invalid_argument("RfFrame: non-finite entries");
  if (!(fc > 0.0) || !(fc < fs / 2.0))
    throw std::invalid_argument("RfFrame: require 0 < fc < fs/2");
  if (!(1.5 * fc <= fs / 2.0))
    throw std::invalid_argument("RfFrame: RF band exceeds Nyquist (need 3*fc/2 <= fs/2)");
}

FourierSupport::FourierSupport(Index m_in, std::vector<Index> bins_in,
                               double fc_in, double fs_in)
    : m(m_in), bins(std::move(bins_in)), fc(fc_in), fs(fs_in) {
  if (m < 2) throw std::invalid_argument("FourierSupport: m must be >= 2");
  if (!(fc > 0.0) || !(1.5 * fc <= fs / 2.0))
    throw std::invalid_argument("FourierSupport: band [fc/2, 3fc/2] must fit under Nyquist");
  if (bins.empty()) throw std::invalid_argument("FourierSupport: empty bin set");
  if (static_cast<Index>(bins.size()) > m)
    throw std::invalid_argument("FourierSupport: more bins than DFT length");
  for (std::size_t q = 0; q < bins.size(); ++q) {
    if (bins[q] < 0 || bins[q] >= m)
      throw std::invalid_argument("FourierSupport: bin index out of range");
    if (q > 0 && bins[q] <= bins[q - 1])
      throw std::invalid_argument("FourierSupport: bins must be strictly increasing");
  }
  for (Index j : bins) {
    const double f = std::abs(signed_frequency(j));
    if (!(fc / 2.0 <= f && f <= 1.5 * fc))
      throw std::invalid_argument("FourierSupport: bin outside the band [fc/2, 3fc/2]");
    const Index partner = (m - j) % m;
    if (!std::binary_search(bins.begin(), bins.end(), partner))
      throw std::invalid_argument("FourierSupport: bin set is not conjugate-symmetric");
  }
}

FourierSupport FourierSupport::band_limited(Index m, double fc, double fs) {
  if (m < 2) throw std::invalid_argument("FourierSupport: m must be >= 2");
  if (!(fc > 0.0) || !(1.5 * fc <= fs / 2.0))
    throw std::invalid_argument("FourierSupport: band [fc/2, 3fc/2] must fit under Nyquist");
  std::vector<Index> bins;
  for (Index j = 0; j < m; ++j) {
    const Index signed_j = (2 * j <= m) ? j : j - m;
    const double f = std::abs(fs * static_cast<double>(signed_j) / static_cast<double>(m));
    if (fc / 2.0 <= f && f <= 1.5 * fc) bins.push_back(j);
  }
  if (bins.empty())
    throw std::invalid_argument("FourierSupport: band contains no DFT bins; increase m");
  return FourierSupport(m, std::move(bins), fc, fs);
}

double FourierSupport::signed_frequency(Index bin) const {
  const Index signed_j = (2 * bin <= m) ? bin : bin - m;
  return fs * static_cast<double>(signed_j) / static_cast<double>(m);
}

Index FourierSupport::conjugate_row(Index q) const {
  const Index partner = (m - bins.at(static_cast<std::size_t>(q))) % m;
  const auto it = std::lower_bound(bins.begin(), bins.end(), partner);
  return static_cast<Index>(it - bins.begin());
}

bool FourierSupport::operator==(const FourierSupport& other) const {
  return m == other.m && bins == other.bins && fc == other.fc && fs == other.fs;
}

SpectralCoefficients::SpectralCoefficients(CMatrix data_in, FourierSupport support_in)
    : data(std::move(data_in)), support(std::move(support_in)) {
  if (data.rows() != support.k())
    throw std::invalid_argument("SpectralCoefficients: row count must equal the support size");
  if (data.cols() < 1)
    throw std::invalid_argument("SpectralCoefficients: need at least one channel");
}

Index SpectralCoefficients::joint_sparsity(double tol) const {
  Vector row_norms(data.rows());
  for (Index q = 0; q < data.rows(); ++q) row_norms[q] = data.row(q).norm();
  const double cutoff = tol * row_norms.maxCoeff();
  Index count = 0;
  for (Index q = 0; q < data.rows(); ++q)
    if (row_norms[q] > cutoff) ++count;
  return count;
}

std::string to_string(SamplingScheme scheme) {
  switch (scheme) {
    case SamplingScheme::uniform_global: return "uniform-global";
    case SamplingScheme::uniform_per_channel: return "uniform-per-channel";
  }
  throw std::logic_error("unknown sampling scheme");
}

SamplingScheme sampling_scheme_from_string(const std::string& name) {
  if (name == "uniform-global") return SamplingScheme::uniform_global;
  if (name == "uniform-per-channel") return SamplingScheme::uniform_per_channel;
  throw std::invalid_argument("unknown sampling scheme: " + name);
}

SamplingPattern::SamplingPattern(Index m_in, Index n_in,
                                 std::vector<std::pair<Index, Index>> omega_in,
                                 std::uint64_t seed_in, SamplingScheme scheme_in)
    : m(m_in), n(n_in), omega(std::move(omega_in)), seed(seed_in), scheme(scheme_in) {
  if (m < 1 || n < 1) throw std::invalid_argument("SamplingPattern: empty grid");
  if (omega.empty()) throw std::invalid_argument("SamplingPattern: empty sample set");
  std::sort(omega.begin(), omega.end());
  for (std::size_t i = 0; i < omega.size(); ++i) {
    const auto& [r, c] = omega[i];
    if (r < 0 || r >= m || c < 0 || c >= n)
      throw std::invalid_argument("SamplingPattern: index out of bounds");
    if (i > 0 && omega[i] == omega[i - 1])
      throw std::invalid_argument("SamplingPattern: duplicate index");
  }
}

Measurements::Measurements(Vector values_in, SamplingPattern pattern_in, double noise_sigma_in)
    : values(std::move(values_in)), pattern(std::move(pattern_in)), noise_sigma(noise_sigma_in) {
  if (values.size() != pattern.count())
    throw std::invalid_argument("Measurements: value count must match |omega|");
  if (!values.allFinite())
    throw std::invalid_argument("Measurements: non-finite values");
  if (noise_sigma < 0.0)
    throw std::invalid_argument("Measurements: negative noise sigma");
}

void SolverConfig::validate() const {
  if (!(gamma > 0.0)) throw std::invalid_argument("SolverConfig: gamma must be > 0");
  if (!(mu > 0.0)) throw std::invalid_argument("SolverConfig: mu must be > 0");
  if (!(alpha >= 0.0)) throw std::invalid_argument("SolverConfig: alpha must be >= 0");
  if (!(tol > 0.0)) throw std::invalid_argument("SolverConfig: tol must be > 0");
  if (max_iters < 1) throw std::invalid_argument("SolverConfig: max_iters must be >= 1");
  if (nuclear_weight != 0.0 && nuclear_weight != 1.0)
    throw std::invalid_argument("SolverConfig: nuclear_weight must be 0 or 1");
}

}  // namespace lrjs
