#include "lrjs/experiment.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "lrjs/matrix_io.hpp"
#include "lrjs/operators.hpp"

namespace lrjs {

Matrix pattern_to_mask(const SamplingPattern& pattern) {
  Matrix mask = Matrix::Zero(pattern.m, pattern.n);
  for (const auto& [r, c] : pattern.omega) mask(r, c) = 1.0;
  return mask;
}

SamplingPattern pattern_from_mask(const Matrix& mask, std::uint64_t seed,
                                  SamplingScheme scheme) {
  std::vector<std::pair<Index, Index>> omega;
  for (Index r = 0; r < mask.rows(); ++r)
    for (Index c = 0; c < mask.cols(); ++c)
      if (mask(r, c) != 0.0) omega.emplace_back(r, c);
  return SamplingPattern(mask.rows(), mask.cols(), std::move(omega), seed, scheme);
}

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_run_info(const std::filesystem::path& path, const RecoverOptions& opt,
                    const RecoverResult& result) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open run info for writing: " + path.string());
  out << "sr=" << format_double(result.sr_actual) << "\n"
      << "scheme=" << to_string(opt.scheme) << "\n"
      << "seed=" << opt.seed << "\n"
      << "sigma=" << format_double(opt.sigma) << "\n"
      << "gamma=" << format_double(opt.solver.gamma) << "\n"
      << "alpha=" << format_double(opt.solver.alpha) << "\n"
      << "mu=" << format_double(opt.solver.mu) << "\n"
      << "nuclear_weight=" << format_double(opt.solver.nuclear_weight) << "\n"
      << "max_iters=" << opt.solver.max_iters << "\n"
      << "tol=" << format_double(opt.solver.tol) << "\n"
      << "iterations=" << result.trace.iterations() << "\n"
      << "exit_code=" << result.exit_code << "\n"
      << "initial_objective=" << format_double(result.trace.initial_objective) << "\n"
      << "imag_norm=" << format_double(result.imag_norm) << "\n"
      << "wall_time_s=" << format_double(result.wall_time_s) << "\n";
}

}  // namespace

RecoverResult run_recover(const RfFrame& frame, const RecoverOptions& opt,
                          const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);

  SamplingPattern pattern =
      opt.pattern_path.has_value()
          ? pattern_from_mask(read_real_matrix(*opt.pattern_path), opt.seed, opt.scheme)
          : gen_pattern(frame.samples(), frame.channels(), opt.sr, opt.scheme, opt.seed);
  if (pattern.m != frame.samples() || pattern.n != frame.channels())
    throw std::invalid_argument("run_recover: pattern grid does not match the frame");

  const std::uint64_t noise_seed = opt.noise_seed.value_or(opt.seed + 1);
  const Measurements b = measure(frame, pattern, opt.sigma, noise_seed);

  const FourierSupport support = FourierSupport::band_limited(frame.samples(), opt.fc, opt.fs);
  const PartialFourierOp op(support);

  RecoverResult result;
  result.sr_actual = pattern.sampling_rate();

  const auto start = std::chrono::steady_clock::now();
  try {
    auto [dhat, trace] = solve(b, op, opt.solver);
    result.trace = std::move(trace);
    auto recon = reconstruct(dhat, op);
    result.imag_norm = recon.imag_norm;
    result.xhat = std::move(recon.frame);
    result.dhat = std::move(dhat);
    result.exit_code = result.trace.terminated_by == TerminationReason::tol
                           ? kExitConverged
                           : kExitIterationCap;
  } catch (DivergenceError& diverged) {
    result.trace = std::move(diverged.trace);
    result.exit_code = kExitDiverged;
  }
  result.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (result.xhat.has_value()) write_matrix(out_dir / "xhat.lrjs", result.xhat->data);
  if (result.dhat.has_value()) write_matrix(out_dir / "dhat.lrjs", result.dhat->data);
  write_trace_csv(out_dir / "trace.csv", result.trace);
  write_run_info(out_dir / "run.txt", opt, result);
  return result;
}

EvalMetrics evaluate_frames(const RfFrame& reference, const RfFrame& reconstruction,
                            double dynamic_range_db, const std::optional<RegionSpec>& regions) {
  EvalMetrics metrics;
  metrics.relative_err = relative_error(reconstruction, reference);
  if (regions.has_value()) {
    const BmodeImage ref_img = bmode(envelope(reference), dynamic_range_db);
    const BmodeImage recon_img = bmode(envelope(reconstruction), dynamic_range_db);
    metrics.cnr_reference = cnr(ref_img, *regions);
    metrics.cnr_reconstruction = cnr(recon_img, *regions);
    metrics.cnr_delta = *metrics.cnr_reconstruction - *metrics.cnr_reference;
  }
  return metrics;
}

namespace {

std::string cell_name(double sr, const std::string& mode) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "sr%g_%s", sr, mode.c_str());
  std::string name(buf);
  for (auto& ch : name)
    if (ch == '-') ch = '_';
  return name;
}

}  // namespace

std::vector<SweepCellResult> run_sweep(const RfFrame& frame, const SweepOptions& opt,
                                       const std::filesystem::path& out_dir, std::ostream& log) {
  if (opt.sr_list.empty()) throw std::invalid_argument("run_sweep: empty sr list");
  if (!opt.run_full && !opt.run_sparsity_only)
    throw std::invalid_argument("run_sweep: no modes selected");
  std::filesystem::create_directories(out_dir);

  std::vector<std::pair<std::string, double>> modes;  // name -> nuclear_weight
  if (opt.run_full) modes.emplace_back("full", 1.0);
  if (opt.run_sparsity_only) modes.emplace_back("sparsity-only", 0.0);

  std::optional<BmodeImage> reference_image;
  std::optional<double> reference_cnr;
  if (opt.regions.has_value()) {
    reference_image = bmode(envelope(frame), opt.dynamic_range_db);
    reference_cnr = cnr(*reference_image, *opt.regions);
    write_pgm(out_dir / "reference.pgm", *reference_image);
  }

  std::vector<SweepCellResult> results;
  for (std::size_t sr_index = 0; sr_index < opt.sr_list.size(); ++sr_index) {
    const double sr = opt.sr_list[sr_index];
    for (const auto& [mode_name, nuclear_weight] : modes) {
      RecoverOptions cell = opt.base;
      cell.sr = sr;
      // Both modes at one sr share the pattern, so the comparison is paired.
      cell.seed = opt.base.seed + sr_index;
      cell.noise_seed = opt.base.noise_seed.value_or(opt.base.seed + 1) + sr_index;
      cell.solver.nuclear_weight = nuclear_weight;

      const auto cell_dir = out_dir / cell_name(sr, mode_name);
      const RecoverResult recover = run_recover(frame, cell, cell_dir);

      SweepCellResult row;
      row.sr = sr;
      row.mode = mode_name;
      row.exit_code = recover.exit_code;
      row.iterations = recover.trace.iterations();
      if (recover.xhat.has_value()) {
        const EvalMetrics metrics =
            evaluate_frames(frame, *recover.xhat, opt.dynamic_range_db, opt.regions);
        row.relative_err = metrics.relative_err;
        row.cnr_db = metrics.cnr_reconstruction;
        row.cnr_delta_db = metrics.cnr_delta;
        if (opt.regions.has_value())
          write_pgm(cell_dir / "reconstruction.pgm",
                    bmode(envelope(*recover.xhat), opt.dynamic_range_db));
        MetricsRow metrics_row;
        metrics_row.sr = recover.sr_actual;
        metrics_row.cnr_db = metrics.cnr_reconstruction;
        metrics_row.relative_error = metrics.relative_err;
        metrics_row.iterations = recover.trace.iterations();
        // wall time stays out of the CSVs so reruns are byte-identical
        std::ofstream metrics_csv(cell_dir / "metrics.csv", std::ios::trunc);
        metrics_csv << metrics_csv_header() << "\n" << format_metrics_row(metrics_row) << "\n";
      }
      results.push_back(std::move(row));
    }
  }

  std::ofstream csv(out_dir / "sweep.csv", std::ios::trunc);
  if (!csv) throw std::runtime_error("cannot open sweep.csv for writing");
  csv << "sr,mode,exit_code,iterations,relative_error,cnr_db,cnr_delta_db\n";
  for (const auto& row : results) {
    csv << format_double(row.sr) << ',' << row.mode << ',' << row.exit_code << ','
        << row.iterations << ',' << format_double(row.relative_err) << ',';
    if (row.cnr_db.has_value()) csv << format_double(*row.cnr_db);
    csv << ',';
    if (row.cnr_delta_db.has_value()) csv << format_double(*row.cnr_delta_db);
    csv << '\n';
  }

  log << std::left << std::setw(8) << "sr" << std::setw(16) << "mode" << std::setw(6) << "exit"
      << std::setw(8) << "iters" << std::setw(14) << "rel_error" << std::setw(12) << "cnr_db"
      << "\n";
  if (reference_cnr.has_value())
    log << "reference cnr_db: " << *reference_cnr << "\n";
  for (const auto& row : results) {
    log << std::left << std::setw(8) << row.sr << std::setw(16) << row.mode << std::setw(6)
        << row.exit_code << std::setw(8) << row.iterations << std::setw(14) << row.relative_err
        << std::setw(12);
    if (row.cnr_db.has_value())
      log << *row.cnr_db;
    else
      log << "-";
    log << "\n";
  }
  return results;
}

}  // namespace lrjs
