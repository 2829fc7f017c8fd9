#include "lrjs/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "lrjs/operators.hpp"
#include "lrjs/rng.hpp"

namespace lrjs {

LowRankInstance gen_lowrank_jointsparse(Index m, Index n, const FourierSupport& support,
                                        Index rank, Index row_sparsity, std::uint64_t seed) {
  if (m != support.m)
    throw std::invalid_argument("gen_lowrank_jointsparse: m does not match the support");
  if (n < 1) throw std::invalid_argument("gen_lowrank_jointsparse: n must be >= 1");
  if (rank < 0 || row_sparsity < 0)
    throw std::invalid_argument("gen_lowrank_jointsparse: rank and row_sparsity must be >= 0");
  if (row_sparsity > support.k())
    throw std::invalid_argument("gen_lowrank_jointsparse: row_sparsity exceeds k");
  if (rank > std::min(row_sparsity, n))
    throw std::invalid_argument(
        "gen_lowrank_jointsparse: infeasible, need rank <= min(row_sparsity, n)");

  const Index k = support.k();
  PartialFourierOp op(support);

  if (rank == 0) {
    CMatrix d0 = CMatrix::Zero(k, n);
    return {RfFrame(Matrix::Zero(m, n), support.fs, support.fc),
            SpectralCoefficients(std::move(d0), support)};
  }

  if (row_sparsity % 2 != 0)
    throw std::invalid_argument(
        "gen_lowrank_jointsparse: row_sparsity must be even (rows come in conjugate pairs)");

  // Candidate rows: positive-frequency bins whose partner is a distinct bin.
  std::vector<Index> positive_rows;
  for (Index q = 0; q < k; ++q)
    if (support.signed_frequency(support.bins[static_cast<std::size_t>(q)]) > 0.0 &&
        support.conjugate_row(q) != q)
      positive_rows.push_back(q);
  const Index pairs = row_sparsity / 2;
  if (pairs > static_cast<Index>(positive_rows.size()))
    throw std::invalid_argument(
        "gen_lowrank_jointsparse: not enough conjugate pairs in the support");

  std::mt19937_64 rng(seed);
  auto picks = sample_without_replacement(positive_rows.size(),
                                          static_cast<std::uint64_t>(pairs), rng);
  std::sort(picks.begin(), picks.end());

  CMatrix factor_l = CMatrix::Zero(k, rank);
  for (const auto pick : picks) {
    const Index q = positive_rows[static_cast<std::size_t>(pick)];
    const Index partner = support.conjugate_row(q);
    for (Index j = 0; j < rank; ++j) {
      const Complex g = standard_complex_normal(rng);
      factor_l(q, j) = g;
      factor_l(partner, j) = std::conj(g);
    }
  }
  // A real mixing matrix keeps D0 = L * R conjugate-paired row-wise.
  CMatrix factor_r(rank, n);
  for (Index i = 0; i < rank; ++i)
    for (Index j = 0; j < n; ++j) factor_r(i, j) = standard_normal(rng);

  CMatrix d0 = factor_l * factor_r;
  const CMatrix x = op.apply(d0);
  return {RfFrame(x.real(), support.fs, support.fc),
          SpectralCoefficients(std::move(d0), support)};
}

void PhantomSpec::validate() const {
  if (!(lateral_mm > 0.0) || !(axial_mm > 0.0))
    throw std::invalid_argument("PhantomSpec: grid extents must be positive");
  if (background_density < 0.0)
    throw std::invalid_argument("PhantomSpec: background_density must be >= 0");
  if (!(speed_of_sound > 0.0))
    throw std::invalid_argument("PhantomSpec: speed_of_sound must be positive");
  if (n_elements < 1) throw std::invalid_argument("PhantomSpec: n_elements must be >= 1");
  if (!(element_pitch_mm > 0.0))
    throw std::invalid_argument("PhantomSpec: element_pitch_mm must be positive");
  if (!(pulse_fc_hz > 0.0)) throw std::invalid_argument("PhantomSpec: pulse_fc_hz must be positive");
  if (!(pulse_bandwidth > 0.0))
    throw std::invalid_argument("PhantomSpec: pulse_bandwidth must be positive");
  if (!(pulse_cycles > 0.0)) throw std::invalid_argument("PhantomSpec: pulse_cycles must be positive");
  for (const auto& c : cyst_regions) {
    if (!(c.radius_mm > 0.0)) throw std::invalid_argument("PhantomSpec: cyst radius must be positive");
    if (c.reflectivity_multiplier < 0.0)
      throw std::invalid_argument("PhantomSpec: reflectivity multiplier must be >= 0");
  }
}

namespace {

std::vector<double> split_fields(const std::string& value, std::size_t expected,
                                 const std::string& key) {
  std::vector<double> fields;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) fields.push_back(std::stod(item));
  if (fields.size() != expected)
    throw std::invalid_argument("phantom spec: key '" + key + "' needs " +
                                std::to_string(expected) + " comma-separated fields");
  return fields;
}

}  // namespace

PhantomSpec parse_phantom_spec(std::istream& in) {
  PhantomSpec spec;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("phantom spec: line " + std::to_string(line_no) +
                                  " is not key=value");
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    auto strip = [](std::string& s) {
      const auto b = s.find_first_not_of(" \t");
      const auto e = s.find_last_not_of(" \t");
      s = (b == std::string::npos) ? std::string() : s.substr(b, e - b + 1);
    };
    strip(key);
    strip(value);

    try {
      if (key == "lateral_mm") spec.lateral_mm = std::stod(value);
      else if (key == "axial_mm") spec.axial_mm = std::stod(value);
      else if (key == "background_density") spec.background_density = std::stod(value);
      else if (key == "speed_of_sound") spec.speed_of_sound = std::stod(value);
      else if (key == "n_elements") spec.n_elements = std::stoi(value);
      else if (key == "element_pitch_mm") spec.element_pitch_mm = std::stod(value);
      else if (key == "pulse_fc_hz") spec.pulse_fc_hz = std::stod(value);
      else if (key == "pulse_bandwidth") spec.pulse_bandwidth = std::stod(value);
      else if (key == "pulse_cycles") spec.pulse_cycles = std::stod(value);
      else if (key == "seed") spec.seed = std::stoull(value);
      else if (key == "scatterer") {
        const auto f = split_fields(value, 3, key);
        spec.scatterers.push_back({f[0], f[1], f[2]});
      } else if (key == "cyst") {
        const auto f = split_fields(value, 4, key);
        spec.cyst_regions.push_back({f[0], f[1], f[2], f[3]});
      } else {
        throw std::invalid_argument("phantom spec: unknown key '" + key + "'");
      }
    } catch (const std::invalid_argument&) {
      throw;
    } catch (const std::exception&) {
      throw std::invalid_argument("phantom spec: bad value for key '" + key + "' on line " +
                                  std::to_string(line_no));
    }
  }
  return spec;
}

PhantomSpec load_phantom_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open phantom spec: " + path.string());
  return parse_phantom_spec(in);
}

RfFrame gen_phantom_rf(const PhantomSpec& spec, double fs, Index m) {
  spec.validate();
  if (m < 2) throw std::invalid_argument("gen_phantom_rf: need at least 2 samples");
  const double fc = spec.pulse_fc_hz;
  if (!(fc > 0.0) || !(1.5 * fc <= fs / 2.0))
    throw std::invalid_argument("gen_phantom_rf: RF band exceeds Nyquist (need 3*fc/2 <= fs/2)");

  std::mt19937_64 rng(spec.seed);
  std::vector<Scatterer> scatterers;
  const auto background =
      static_cast<std::size_t>(std::llround(spec.background_density * spec.lateral_mm * spec.axial_mm));
  scatterers.reserve(background + spec.scatterers.size());
  for (std::size_t i = 0; i < background; ++i) {
    const double x = (uniform01(rng) - 0.5) * spec.lateral_mm;
    const double z = uniform01(rng) * spec.axial_mm;
    scatterers.push_back({x, z, standard_normal(rng)});
  }
  scatterers.insert(scatterers.end(), spec.scatterers.begin(), spec.scatterers.end());

  for (auto& s : scatterers)
    for (const auto& cyst : spec.cyst_regions) {
      const double dx = s.x_mm - cyst.x_mm;
      const double dz = s.z_mm - cyst.z_mm;
      if (dx * dx + dz * dz <= cyst.radius_mm * cyst.radius_mm)
        s.reflectivity *= cyst.reflectivity_multiplier;
    }

  // Gaussian envelope sigma from the -6 dB fractional bandwidth.
  const double sigma_t =
      std::sqrt(2.0 * std::numbers::ln2) / (std::numbers::pi * spec.pulse_bandwidth * fc);
  const double half_duration = spec.pulse_cycles / (2.0 * fc);
  const double c_mm = spec.speed_of_sound * 1e3;  // mm/s

  Matrix data = Matrix::Zero(m, spec.n_elements);
  for (int e = 0; e < spec.n_elements; ++e) {
    const double x_e = (e - (spec.n_elements - 1) / 2.0) * spec.element_pitch_mm;
    for (const auto& s : scatterers) {
      if (s.reflectivity == 0.0) continue;
      const double dx = s.x_mm - x_e;
      const double rx = std::sqrt(dx * dx + s.z_mm * s.z_mm);
      const double tau = (s.z_mm + rx) / c_mm;  // plane-wave transmit + echo
      const Index i0 = std::max<Index>(0, static_cast<Index>(std::ceil((tau - half_duration) * fs)));
      const Index i1 = std::min<Index>(m - 1, static_cast<Index>(std::floor((tau + half_duration) * fs)));
      for (Index i = i0; i <= i1; ++i) {
        const double u = static_cast<double>(i) / fs - tau;
        data(i, e) += s.reflectivity * std::cos(2.0 * std::numbers::pi * fc * u) *
                      std::exp(-u * u / (2.0 * sigma_t * sigma_t));
      }
    }
  }
  return RfFrame(std::move(data), fs, fc);
}

SamplingPattern gen_pattern(Index m, Index n, double sr, SamplingScheme scheme,
                            std::uint64_t seed) {
  if (!(sr > 0.0) || sr > 1.0)
    throw std::invalid_argument("gen_pattern: sampling rate must be in (0, 1]");
  const double total = static_cast<double>(m) * static_cast<double>(n);
  if (sr * total < 1.0)
    throw std::invalid_argument("gen_pattern: sr*m*n must be >= 1");

  std::mt19937_64 rng(seed);
  std::vector<std::pair<Index, Index>> omega;
  if (scheme == SamplingScheme::uniform_global) {
    const auto count = static_cast<std::uint64_t>(std::llround(sr * total));
    const auto cells = sample_without_replacement(static_cast<std::uint64_t>(m * n), count, rng);
    omega.reserve(cells.size());
    for (const auto cell : cells)
      omega.emplace_back(static_cast<Index>(cell) / n, static_cast<Index>(cell) % n);
  } else {
    const auto per_column = static_cast<std::uint64_t>(std::llround(sr * static_cast<double>(m)));
    omega.reserve(static_cast<std::size_t>(per_column) * static_cast<std::size_t>(n));
    for (Index c = 0; c < n; ++c) {
      const auto rows = sample_without_replacement(static_cast<std::uint64_t>(m), per_column, rng);
      for (const auto r : rows) omega.emplace_back(static_cast<Index>(r), c);
    }
  }
  return SamplingPattern(m, n, std::move(omega), seed, scheme);
}

}  // namespace lrjs
