#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "lrjs/experiment.hpp"
#include "lrjs/matrix_io.hpp"
#include "lrjs/operators.hpp"
#include "lrjs/solver.hpp"
#include "lrjs/synth.hpp"

namespace fs = std::filesystem;
using namespace lrjs;

namespace {

struct GenerateArgs {
  std::string kind;
  long long m = 128, n = 64, rank = 3, ksparse = 8;
  std::uint64_t seed = 1;
  double fc = 3.5e6, fs = 25e6;
  std::string spec_path;
  std::string out_frame = "frame.lrjs";
  std::string out_coeffs = "coeffs.lrjs";
};

struct SampleArgs {
  long long m = 128, n = 64;
  double sr = 0.1;
  std::string scheme = "uniform-global";
  std::uint64_t seed = 1;
  std::string out = "pattern.lrjs";
};

struct RecoverArgs {
  std::string frame_path;
  std::string pattern_path;
  RecoverOptions opt;
  long long max_iters = 1000;
  std::string scheme = "uniform-global";
  std::string out_dir = ".";
};

struct EvaluateArgs {
  std::string reference_path;
  std::string reconstruction_path;
  double fc = 3.5e6, fs = 25e6;
  double dynamic_range_db = 50.0;
  std::vector<long long> target, background;
  std::optional<double> sr;
  std::optional<int> iterations;
  std::optional<double> wall_time_s;
  std::string out_dir = ".";
};

struct SweepArgs {
  std::string frame_path;
  std::vector<double> sr_list;
  std::vector<std::string> modes = {"full", "sparsity-only"};
  RecoverOptions base;
  long long max_iters = 1000;
  std::string scheme = "uniform-global";
  double dynamic_range_db = 50.0;
  std::vector<long long> target, background;
  std::string out_dir = "sweep";
};

PixelRegion region_from(const std::vector<long long>& v) {
  return {static_cast<Index>(v[0]), static_cast<Index>(v[1]), static_cast<Index>(v[2]),
          static_cast<Index>(v[3])};
}

void add_solver_options(CLI::App* cmd, RecoverOptions& opt, long long& max_iters) {
  cmd->add_option("--gamma", opt.solver.gamma, "splitting penalty");
  cmd->add_option("--alpha", opt.solver.alpha, "l2,1 weight");
  cmd->add_option("--mu", opt.solver.mu, "data-fidelity weight");
  cmd->add_option("--max-iters", max_iters, "iteration cap");
  cmd->add_option("--tol", opt.solver.tol, "relative-change stopping tolerance");
  cmd->add_option("--nuclear-weight", opt.solver.nuclear_weight,
                  "nuclear term multiplier, 0 or 1");
}

int cmd_generate(const GenerateArgs& args) {
  if (args.kind == "synthetic") {
    const auto support = FourierSupport::band_limited(args.m, args.fc, args.fs);
    const auto instance =
        gen_lowrank_jointsparse(args.m, args.n, support, args.rank, args.ksparse, args.seed);
    write_matrix(args.out_frame, instance.frame.data);
    write_matrix(args.out_coeffs, instance.coefficients.data);
    std::cout << "wrote " << args.out_frame << " (" << args.m << "x" << args.n << ") and "
              << args.out_coeffs << " (k=" << support.k() << ")\n";
    return 0;
  }
  if (args.kind == "phantom") {
    if (args.spec_path.empty()) {
      std::cerr << "generate: --spec is required for --kind phantom\n";
      return kExitUsage;
    }
    const PhantomSpec spec = load_phantom_spec(args.spec_path);
    const RfFrame frame = gen_phantom_rf(spec, args.fs, args.m);
    write_matrix(args.out_frame, frame.data);
    std::cout << "wrote " << args.out_frame << " (" << args.m << "x" << spec.n_elements << ")\n";
    return 0;
  }
  std::cerr << "generate: unknown --kind '" << args.kind << "' (synthetic|phantom)\n";
  return kExitUsage;
}

int cmd_sample(const SampleArgs& args) {
  const auto pattern =
      gen_pattern(args.m, args.n, args.sr, sampling_scheme_from_string(args.scheme), args.seed);
  write_matrix(args.out, pattern_to_mask(pattern));
  std::cout << "wrote " << args.out << " (" << pattern.count() << " of " << args.m * args.n
            << " entries, sr=" << pattern.sampling_rate() << ")\n";
  return 0;
}

int cmd_recover(RecoverArgs args) {
  args.opt.solver.max_iters = static_cast<int>(args.max_iters);
  args.opt.scheme = sampling_scheme_from_string(args.scheme);
  if (!args.pattern_path.empty()) args.opt.pattern_path = fs::path(args.pattern_path);

  const RfFrame frame(read_real_matrix(args.frame_path), args.opt.fs, args.opt.fc);
  const RecoverResult result = run_recover(frame, args.opt, args.out_dir);

  std::cout << "sr=" << result.sr_actual << " iterations=" << result.trace.iterations()
            << " exit=" << result.exit_code << " wall_time_s=" << result.wall_time_s << "\n";
  if (result.xhat.has_value()) {
    const double rel = relative_error(*result.xhat, frame);
    std::cout << "relative_error_vs_input=" << rel << " imag_norm=" << result.imag_norm << "\n";
  }
  return result.exit_code;
}

int cmd_evaluate(const EvaluateArgs& args) {
  const RfFrame reference(read_real_matrix(args.reference_path), args.fs, args.fc);
  const RfFrame reconstruction(read_real_matrix(args.reconstruction_path), args.fs, args.fc);
  const RegionSpec regions(region_from(args.target), region_from(args.background));

  const EvalMetrics metrics =
      evaluate_frames(reference, reconstruction, args.dynamic_range_db, regions);

  fs::create_directories(args.out_dir);
  const fs::path out_dir(args.out_dir);
  write_pgm(out_dir / "reference.pgm", bmode(envelope(reference), args.dynamic_range_db));
  write_pgm(out_dir / "reconstruction.pgm",
            bmode(envelope(reconstruction), args.dynamic_range_db));

  MetricsRow row;
  row.sr = args.sr;
  row.cnr_db = metrics.cnr_reconstruction;
  row.relative_error = metrics.relative_err;
  row.iterations = args.iterations;
  row.wall_time_s = args.wall_time_s;
  std::ofstream csv(out_dir / "metrics.csv", std::ios::trunc);
  csv << metrics_csv_header() << "\n" << format_metrics_row(row) << "\n";

  std::cout << "relative_error=" << metrics.relative_err
            << " cnr_reference_db=" << *metrics.cnr_reference
            << " cnr_reconstruction_db=" << *metrics.cnr_reconstruction
            << " delta_cnr_db=" << *metrics.cnr_delta << "\n";
  return 0;
}

int cmd_sweep(SweepArgs args) {
  args.base.solver.max_iters = static_cast<int>(args.max_iters);
  args.base.scheme = sampling_scheme_from_string(args.scheme);

  SweepOptions opt;
  opt.sr_list = args.sr_list;
  opt.base = args.base;
  opt.dynamic_range_db = args.dynamic_range_db;
  opt.run_full = false;
  opt.run_sparsity_only = false;
  for (const auto& mode : args.modes) {
    if (mode == "full")
      opt.run_full = true;
    else if (mode == "sparsity-only")
      opt.run_sparsity_only = true;
    else {
      std::cerr << "sweep: unknown mode '" << mode << "' (full|sparsity-only)\n";
      return kExitUsage;
    }
  }
  if (!args.target.empty() || !args.background.empty()) {
    if (args.target.size() != 4 || args.background.size() != 4) {
      std::cerr << "sweep: --target and --background must both be given as r,c,rows,cols\n";
      return kExitUsage;
    }
    opt.regions = RegionSpec(region_from(args.target), region_from(args.background));
  }

  const RfFrame frame(read_real_matrix(args.frame_path), args.base.fs, args.base.fc);
  run_sweep(frame, opt, args.out_dir, std::cout);
  std::cout << "wrote " << (fs::path(args.out_dir) / "sweep.csv").string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"low-rank + joint-sparse recovery of multichannel ultrasound RF data"};
  app.require_subcommand(1);

  GenerateArgs gen_args;
  auto* gen = app.add_subcommand("generate", "generate a synthetic instance or phantom frame");
  gen->set_config("--config");
  gen->add_option("--kind", gen_args.kind, "synthetic|phantom")->required();
  gen->add_option("--m", gen_args.m, "fast-time samples");
  gen->add_option("--n", gen_args.n, "channels (synthetic)");
  gen->add_option("--rank", gen_args.rank, "ground-truth rank (synthetic)");
  gen->add_option("--ksparse", gen_args.ksparse, "nonzero coefficient rows (synthetic)");
  gen->add_option("--seed", gen_args.seed, "RNG seed");
  gen->add_option("--fc", gen_args.fc, "center frequency [Hz]");
  gen->add_option("--fs", gen_args.fs, "sampling frequency [Hz]");
  gen->add_option("--spec", gen_args.spec_path, "phantom spec file (phantom)");
  gen->add_option("--out-frame", gen_args.out_frame, "output frame path");
  gen->add_option("--out-coeffs", gen_args.out_coeffs, "output coefficients path (synthetic)");

  SampleArgs sample_args;
  auto* sample = app.add_subcommand("sample", "draw a sampling pattern and write it as a mask");
  sample->set_config("--config");
  sample->add_option("--m", sample_args.m, "rows")->required();
  sample->add_option("--n", sample_args.n, "columns")->required();
  sample->add_option("--sr", sample_args.sr, "sampling rate in (0, 1]")->required();
  sample->add_option("--scheme", sample_args.scheme, "uniform-global|uniform-per-channel");
  sample->add_option("--seed", sample_args.seed, "RNG seed");
  sample->add_option("--out", sample_args.out, "output mask path");

  RecoverArgs recover_args;
  auto* recover = app.add_subcommand("recover", "measure, solve, and reconstruct a frame");
  recover->set_config("--config");
  recover->add_option("--frame", recover_args.frame_path, "input frame (LRJS)")->required();
  recover->add_option("--fc", recover_args.opt.fc, "center frequency [Hz]");
  recover->add_option("--fs", recover_args.opt.fs, "sampling frequency [Hz]");
  recover->add_option("--sr", recover_args.opt.sr, "sampling rate in (0, 1]");
  recover->add_option("--pattern", recover_args.pattern_path, "mask file overriding --sr");
  recover->add_option("--scheme", recover_args.scheme, "uniform-global|uniform-per-channel");
  recover->add_option("--seed", recover_args.opt.seed, "pattern seed");
  recover->add_option("--sigma", recover_args.opt.sigma, "measurement noise stddev");
  std::uint64_t noise_seed = 0;
  auto* noise_opt = recover->add_option("--noise-seed", noise_seed, "noise seed (default seed+1)");
  add_solver_options(recover, recover_args.opt, recover_args.max_iters);
  recover->add_option("--out-dir", recover_args.out_dir, "output directory");

  EvaluateArgs eval_args;
  auto* evaluate = app.add_subcommand("evaluate", "B-mode images and metrics for a pair of frames");
  evaluate->set_config("--config");
  evaluate->add_option("--reference", eval_args.reference_path, "reference frame (LRJS)")
      ->required();
  evaluate
      ->add_option("--reconstruction", eval_args.reconstruction_path, "reconstructed frame (LRJS)")
      ->required();
  evaluate->add_option("--fc", eval_args.fc, "center frequency [Hz]");
  evaluate->add_option("--fs", eval_args.fs, "sampling frequency [Hz]");
  evaluate->add_option("--dynamic-range", eval_args.dynamic_range_db, "display dynamic range [dB]");
  evaluate->add_option("--target", eval_args.target, "target region r,c,rows,cols")
      ->delimiter(',')
      ->expected(4)
      ->required();
  evaluate->add_option("--background", eval_args.background, "background region r,c,rows,cols")
      ->delimiter(',')
      ->expected(4)
      ->required();
  double eval_sr = 0.0;
  auto* eval_sr_opt = evaluate->add_option("--sr", eval_sr, "sampling rate column value");
  int eval_iters = 0;
  auto* eval_iters_opt = evaluate->add_option("--iterations", eval_iters, "iterations column value");
  double eval_wall = 0.0;
  auto* eval_wall_opt = evaluate->add_option("--wall-time", eval_wall, "wall time column value");
  evaluate->add_option("--out-dir", eval_args.out_dir, "output directory");

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "recover + evaluate over a list of sampling rates");
  sweep->set_config("--config");
  sweep->add_option("--frame", sweep_args.frame_path, "input frame (LRJS)")->required();
  sweep->add_option("--sr-list", sweep_args.sr_list, "sampling rates")
      ->delimiter(',')
      ->required();
  sweep->add_option("--modes", sweep_args.modes, "full and/or sparsity-only")->delimiter(',');
  sweep->add_option("--fc", sweep_args.base.fc, "center frequency [Hz]");
  sweep->add_option("--fs", sweep_args.base.fs, "sampling frequency [Hz]");
  sweep->add_option("--scheme", sweep_args.scheme, "uniform-global|uniform-per-channel");
  sweep->add_option("--seed", sweep_args.base.seed, "base pattern seed");
  sweep->add_option("--sigma", sweep_args.base.sigma, "measurement noise stddev");
  add_solver_options(sweep, sweep_args.base, sweep_args.max_iters);
  sweep->add_option("--dynamic-range", sweep_args.dynamic_range_db, "display dynamic range [dB]");
  sweep->add_option("--target", sweep_args.target, "target region r,c,rows,cols")
      ->delimiter(',')
      ->expected(4);
  sweep->add_option("--background", sweep_args.background, "background region r,c,rows,cols")
      ->delimiter(',')
      ->expected(4);
  sweep->add_option("--out-dir", sweep_args.out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (gen->parsed()) return cmd_generate(gen_args);
    if (sample->parsed()) return cmd_sample(sample_args);
    if (recover->parsed()) {
      if (noise_opt->count() > 0) recover_args.opt.noise_seed = noise_seed;
      return cmd_recover(std::move(recover_args));
    }
    if (evaluate->parsed()) {
      if (eval_sr_opt->count() > 0) eval_args.sr = eval_sr;
      if (eval_iters_opt->count() > 0) eval_args.iterations = eval_iters;
      if (eval_wall_opt->count() > 0) eval_args.wall_time_s = eval_wall;
      return cmd_evaluate(eval_args);
    }
    if (sweep->parsed()) return cmd_sweep(std::move(sweep_args));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
