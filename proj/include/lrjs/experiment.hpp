#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "lrjs/imaging.hpp"
#include "lrjs/solver.hpp"
#include "lrjs/synth.hpp"
#include "lrjs/types.hpp"

namespace lrjs {

/// 0/1 mask matrix carrying a pattern (LRJS real64 on disk).
Matrix pattern_to_mask(const SamplingPattern& pattern);
SamplingPattern pattern_from_mask(const Matrix& mask, std::uint64_t seed, SamplingScheme scheme);

struct RecoverOptions {
  double fc = 3.5e6;
  double fs = 25e6;
  double sr = 0.1;
  SamplingScheme scheme = SamplingScheme::uniform_global;
  std::uint64_t seed = 1;
  double sigma = 0.0;
  std::optional<std::uint64_t> noise_seed;  // defaults to seed + 1
  std::optional<std::filesystem::path> pattern_path;  // mask file overrides sr/scheme/seed
  SolverConfig solver;
};

// Exit codes shared by the CLI: 0 converged, 1 usage or I/O failure,
// 2 iteration cap reached, 3 divergence.
inline constexpr int kExitConverged = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitIterationCap = 2;
inline constexpr int kExitDiverged = 3;

struct RecoverResult {
  int exit_code = kExitConverged;
  SolverTrace trace;
  double sr_actual = 0.0;
  double wall_time_s = 0.0;
  double imag_norm = 0.0;
  std::optional<RfFrame> xhat;  // empty when diverged
  std::optional<SpectralCoefficients> dhat;
};

/// measure -> solve -> reconstruct; writes xhat.lrjs, dhat.lrjs, trace.csv
/// and run.txt into out_dir (trace and run.txt are still written when the
/// solve diverges).
RecoverResult run_recover(const RfFrame& frame, const RecoverOptions& opt,
                          const std::filesystem::path& out_dir);

struct EvalMetrics {
  double relative_err = 0.0;
  std::optional<double> cnr_reference;
  std::optional<double> cnr_reconstruction;
  std::optional<double> cnr_delta;
};

/// Relative error plus (when regions are given) CNR of both B-mode images.
EvalMetrics evaluate_frames(const RfFrame& reference, const RfFrame& reconstruction,
                            double dynamic_range_db, const std::optional<RegionSpec>& regions);

struct SweepOptions {
  std::vector<double> sr_list;
  bool run_full = true;
  bool run_sparsity_only = true;
  RecoverOptions base;  // per-cell sr/pattern seed are derived from this
  double dynamic_range_db = 50.0;
  std::optional<RegionSpec> regions;
};

struct SweepCellResult {
  double sr = 0.0;
  std::string mode;  // "full" or "sparsity-only"
  int exit_code = 0;
  int iterations = 0;
  double relative_err = 0.0;
  std::optional<double> cnr_db;
  std::optional<double> cnr_delta_db;
};

/// Runs recover + evaluate for every (sr, mode) cell into its own
/// subdirectory, writes the aggregated sweep.csv (deterministic: no wall
/// times) and a summary table to `log`.
std::vector<SweepCellResult> run_sweep(const RfFrame& frame, const SweepOptions& opt,
                                       const std::filesystem::path& out_dir, std::ostream& log);

}  // namespace lrjs
