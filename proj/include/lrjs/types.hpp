#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace lrjs {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXd;
using CMatrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Pre-beamformed RF channel data: M fast-time samples x N receive channels,
/// in arbitrary linear units. The RF band [fc/2, 3fc/2] must fit under
/// Nyquist, so 3*fc/2 <= fs/2 is enforced at construction.
struct RfFrame {
  Matrix data;
  double fs = 0.0;  // sampling frequency [Hz]
  double fc = 0.0;  // transducer center frequency [Hz]

  RfFrame(Matrix data, double fs, double fc);

  Index samples() const { return data.rows(); }
  Index channels() const { return data.cols(); }
};

/// The in-band DFT bins shared by all channels: a sorted set of indices into
/// a length-m DFT, closed under conjugation (j -> (m-j) mod m) so that real
/// signals are representable by coefficients on these bins alone.
struct FourierSupport {
  Index m = 0;
  std::vector<Index> bins;
  double fc = 0.0;
  double fs = 0.0;

  FourierSupport(Index m, std::vector<Index> bins, double fc, double fs);

  /// All bins whose signed frequency f satisfies fc/2 <= |f| <= 3fc/2
  /// (boundaries inclusive).
  static FourierSupport band_limited(Index m, double fc, double fs);

  Index k() const { return static_cast<Index>(bins.size()); }

  /// Signed frequency [Hz] of DFT bin j, with j mapped into (-m/2, m/2].
  double signed_frequency(Index bin) const;

  /// Index q' of the conjugate partner bin (m - bins[q]) mod m.
  Index conjugate_row(Index q) const;

  bool operator==(const FourierSupport& other) const;
};

/// Band-limited Fourier coefficients of a frame: k support rows x N channels.
struct SpectralCoefficients {
  CMatrix data;
  FourierSupport support;

  SpectralCoefficients(CMatrix data, FourierSupport support);

  Index k() const { return data.rows(); }
  Index channels() const { return data.cols(); }

  /// Number of rows with l2 norm above tol * (largest row norm).
  Index joint_sparsity(double tol = 0.0) const;
};

enum class SamplingScheme { uniform_global, uniform_per_channel };

std::string to_string(SamplingScheme scheme);
SamplingScheme sampling_scheme_from_string(const std::string& name);

/// Observed entry locations Omega on an m x n grid, kept in canonical
/// row-major (row, col) order.
struct SamplingPattern {
  Index m = 0;
  Index n = 0;
  std::vector<std::pair<Index, Index>> omega;
  std::uint64_t seed = 0;
  SamplingScheme scheme = SamplingScheme::uniform_global;

  SamplingPattern(Index m, Index n, std::vector<std::pair<Index, Index>> omega,
                  std::uint64_t seed, SamplingScheme scheme);

  Index count() const { return static_cast<Index>(omega.size()); }
  double sampling_rate() const {
    return static_cast<double>(count()) /
           (static_cast<double>(m) * static_cast<double>(n));
  }
};

/// Sampled values B = P_Omega(X) + noise, aligned with the pattern's
/// canonical ordering.
struct Measurements {
  Vector values;
  SamplingPattern pattern;
  double noise_sigma = 0.0;

  Measurements(Vector values, SamplingPattern pattern, double noise_sigma);
};

struct SolverConfig {
  double gamma = 1.0;           // splitting penalty
  double alpha = 0.01;          // l2,1 weight
  double mu = 1e-6;             // data-fidelity weight
  int max_iters = 1000;
  double tol = 1e-6;            // relative-change stopping tolerance
  double nuclear_weight = 1.0;  // 0 or 1; 0 runs the sparsity-only ablation

  void validate() const;
};

enum class TerminationReason { tol, max_iters };

struct IterationRecord {
  int iter = 0;              // s, starting at 1
  double objective = 0.0;
  double residual = 0.0;     // Frobenius norm of the stacked constraint violation
  double rel_change = 0.0;   // |D_s - D_{s-1}|_F / |D_{s-1}|_F
  Index rank_estimate = 0;   // #{ sigma_i(D) > 1e-6 * sigma_1 }
};

struct SolverTrace {
  std::vector<IterationRecord> records;
  TerminationReason terminated_by = TerminationReason::max_iters;
  double initial_objective = 0.0;
  // Feasibility gaps |D - w1|_F, |D - w2|_F, |YD - w3|_F at the final iterate.
  double final_residual_w1 = 0.0;
  double final_residual_w2 = 0.0;
  double final_residual_w3 = 0.0;

  int iterations() const { return static_cast<int>(records.size()); }
};

}  // namespace lrjs
