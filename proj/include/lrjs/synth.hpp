#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <vector>

#include "lrjs/types.hpp"

namespace lrjs {

struct LowRankInstance {
  RfFrame frame;
  SpectralCoefficients coefficients;  // ground-truth D0
};

/// Ground-truth generator: D0 = L * R with the rows of L restricted to
/// `row_sparsity` conjugate-paired support rows and R real, so that
/// X = Y D0 is real, exactly band-limited, rank(D0) <= rank and D0 has
/// exactly `row_sparsity` nonzero rows (for rank >= 1). `row_sparsity`
/// must be even to pair up.
LowRankInstance gen_lowrank_jointsparse(Index m, Index n, const FourierSupport& support,
                                        Index rank, Index row_sparsity, std::uint64_t seed);

struct Scatterer {
  double x_mm = 0.0;
  double z_mm = 0.0;
  double reflectivity = 1.0;
};

/// Circular region scaling the reflectivity of scatterers inside it
/// (multiplier 0 = anechoic).
struct CystRegion {
  double x_mm = 0.0;
  double z_mm = 0.0;
  double radius_mm = 0.0;
  double reflectivity_multiplier = 0.0;
};

struct PhantomSpec {
  double lateral_mm = 0.0;  // grid width, centered on the array
  double axial_mm = 0.0;    // grid depth from the array face
  std::vector<Scatterer> scatterers;  // explicit extras on top of the background
  double background_density = 0.0;    // random scatterers per mm^2
  std::vector<CystRegion> cyst_regions;
  double speed_of_sound = 1540.0;  // m/s
  int n_elements = 0;
  double element_pitch_mm = 0.0;
  double pulse_fc_hz = 0.0;
  double pulse_bandwidth = 0.6;  // fractional, -6 dB
  double pulse_cycles = 3.0;     // total pulse duration in carrier cycles
  std::uint64_t seed = 0;

  void validate() const;
};

/// Parses the flat key=value phantom configuration ('#' comments allowed;
/// `scatterer` and `cyst` keys repeat, comma-separated fields).
PhantomSpec parse_phantom_spec(std::istream& in);
PhantomSpec load_phantom_spec(const std::filesystem::path& path);

/// Single plane-wave transmit: channel n at time t sums
/// reflectivity * pulse(t - (z + |scatterer - element|)/c) over scatterers,
/// with a Gaussian-modulated cosine pulse at pulse_fc_hz.
RfFrame gen_phantom_rf(const PhantomSpec& spec, double fs, Index m);

/// uniform-global: round(sr*m*n) distinct cells; uniform-per-channel:
/// round(sr*m) distinct rows per column.
SamplingPattern gen_pattern(Index m, Index n, double sr, SamplingScheme scheme,
                            std::uint64_t seed);

}  // namespace lrjs
