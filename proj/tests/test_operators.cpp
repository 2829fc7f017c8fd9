#include <doctest.h>

#include <Eigen/SVD>

#include <cmath>
#include <numbers>

#include "lrjs/operators.hpp"
#include "support.hpp"

using namespace lrjs;
using testsupport::dense_synthesis_matrix;
using testsupport::rel_err;

namespace {

FourierSupport random_support(Index m, std::mt19937_64& rng) {
  const double fs = 1e6 + uniform01(rng) * 49e6;
  const double fc = fs * (0.12 + 0.20 * uniform01(rng));
  return FourierSupport::band_limited(m, fc, fs);
}

}  // namespace

TEST_CASE("synthesize of zero coefficients is the zero matrix") {
  const auto support = FourierSupport::band_limited(32, 0.25, 1.0);
  const PartialFourierOp op(support);
  const SpectralCoefficients d(CMatrix::Zero(support.k(), 3), support);
  CHECK(op.synthesize(d).norm() == 0.0);
}

TEST_CASE("a single support atom synthesizes to a unit-magnitude exponential") {
  const auto support = FourierSupport::band_limited(32, 0.25, 1.0);
  const PartialFourierOp op(support);
  const Index q = 1;
  const Index bin = support.bins[q];
  CMatrix d = CMatrix::Zero(support.k(), 1);
  d(q, 0) = std::sqrt(32.0);
  const CMatrix x = op.apply(d);
  for (Index row = 0; row < 32; ++row) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(bin) *
                         static_cast<double>(row) / 32.0;
    CHECK(std::abs(x(row, 0) - std::polar(1.0, angle)) < 1e-12);
    CHECK(std::abs(std::abs(x(row, 0)) - 1.0) < 1e-12);
  }
}

TEST_CASE("synthesize matches the dense DFT-submatrix oracle") {
  std::mt19937_64 rng(21);
  const auto support = FourierSupport::band_limited(32, 0.20, 1.0);
  REQUIRE(support.k() == 12);  // 6 positive bins and mirrors at this m, fc/fs
  const PartialFourierOp op(support);
  const CMatrix y = dense_synthesis_matrix(support);

  const CMatrix d = testsupport::random_conjugate_symmetric(support, 4, rng);
  const CMatrix fft_result = op.apply(d);
  const CMatrix dense_result = y * d;
  CHECK(rel_err(fft_result, dense_result) < 1e-10);
  // conjugate-symmetric coefficients synthesize to a real matrix
  CHECK(fft_result.imag().norm() <= 1e-10 * fft_result.norm());
}

TEST_CASE("analyze matches the dense adjoint oracle and annihilates out-of-band input") {
  std::mt19937_64 rng(22);
  const auto support = FourierSupport::band_limited(32, 0.20, 1.0);
  const PartialFourierOp op(support);
  const CMatrix y = dense_synthesis_matrix(support);

  const CMatrix x = testsupport::random_complex_matrix(32, 5, rng);
  CHECK(rel_err(op.apply_adjoint(x), CMatrix(y.adjoint() * x)) < 1e-10);

  // DC is never in the band, so a constant matrix analyzes to zero
  const CMatrix constant = CMatrix::Constant(32, 5, Complex(2.5, -1.0));
  CHECK(op.apply_adjoint(constant).norm() < 1e-10);
}

TEST_CASE("FFT path equals the dense oracle for M in {8, 16, 32} on random supports") {
  std::mt19937_64 rng(23);
  for (const Index m : {Index{8}, Index{16}, Index{32}}) {
    for (int trial = 0; trial < 10; ++trial) {
      const double fs = 1.0;
      const double fc = 0.14 + 0.18 * uniform01(rng);
      const auto support = FourierSupport::band_limited(m, fc, fs);
      const PartialFourierOp op(support);
      const CMatrix y = dense_synthesis_matrix(support);

      const CMatrix d = testsupport::random_complex_matrix(support.k(), 3, rng);
      CHECK(rel_err(op.apply(d), CMatrix(y * d)) < 1e-10);

      const CMatrix x = testsupport::random_complex_matrix(m, 3, rng);
      CHECK(rel_err(op.apply_adjoint(x), CMatrix(y.adjoint() * x)) < 1e-10);
    }
  }
}

TEST_CASE("adjoint identity <Y d, z> = <d, Yt z> holds on 100 random trials") {
  std::mt19937_64 rng(24);
  const auto support = FourierSupport::band_limited(64, 0.22, 1.0);
  const PartialFourierOp op(support);
  for (int trial = 0; trial < 100; ++trial) {
    const CMatrix d = testsupport::random_complex_matrix(support.k(), 2, rng);
    const CMatrix z = testsupport::random_complex_matrix(64, 2, rng);
    const Complex lhs = (op.apply(d).conjugate().cwiseProduct(z)).sum();
    const Complex rhs = (d.conjugate().cwiseProduct(op.apply_adjoint(z))).sum();
    CHECK(std::abs(lhs - rhs) <= 1e-10 * std::abs(lhs));
  }
}

TEST_CASE("Yt Y = I and Y Yt is an idempotent projector") {
  std::mt19937_64 rng(25);
  const auto support = FourierSupport::band_limited(48, 0.25, 1.0);
  const PartialFourierOp op(support);

  const CMatrix d = testsupport::random_complex_matrix(support.k(), 4, rng);
  CHECK(rel_err(op.apply_adjoint(op.apply(d)), d) < 1e-10);

  const CMatrix x = testsupport::random_complex_matrix(48, 4, rng);
  const CMatrix projected = op.apply(op.apply_adjoint(x));
  const CMatrix twice = op.apply(op.apply_adjoint(projected));
  CHECK(rel_err(twice, projected) < 1e-10);
}

TEST_CASE("analyze(synthesize(d)) recovers d for typed coefficients") {
  std::mt19937_64 rng(26);
  const auto support = FourierSupport::band_limited(40, 0.2, 1.0);
  const PartialFourierOp op(support);
  const SpectralCoefficients d(testsupport::random_complex_matrix(support.k(), 3, rng), support);
  const SpectralCoefficients back = op.analyze(op.synthesize(d));
  CHECK(rel_err(back.data, d.data) < 1e-10);
}

TEST_CASE("rank of Y D stays below k") {
  std::mt19937_64 rng(27);
  const auto support = FourierSupport::band_limited(32, 0.16, 1.0);
  const Index k = support.k();
  REQUIRE(k < 32);
  const PartialFourierOp op(support);
  const CMatrix d = testsupport::random_complex_matrix(k, 40, rng);
  const CMatrix x = op.apply(d);
  Eigen::JacobiSVD<CMatrix> svd(x);
  const Vector sigma = svd.singularValues();
  for (Index i = k; i < sigma.size(); ++i) CHECK(sigma[i] < 1e-8 * sigma[0]);
}

TEST_CASE("analyze of a real frame yields conjugate-paired rows") {
  std::mt19937_64 rng(28);
  for (int trial = 0; trial < 10; ++trial) {
    const auto support = random_support(32, rng);
    const PartialFourierOp op(support);
    const Matrix x = testsupport::random_real_matrix(32, 4, rng);
    const SpectralCoefficients d = op.analyze(x);
    for (Index q = 0; q < support.k(); ++q) {
      const Index partner = support.conjugate_row(q);
      const double gap = (d.data.row(partner) - d.data.row(q).conjugate()).norm();
      CHECK(gap <= 1e-12 * d.data.norm());
    }
  }
}

TEST_CASE("operators reject mismatched shapes") {
  const auto support_a = FourierSupport::band_limited(32, 0.25, 1.0);
  const auto support_b = FourierSupport::band_limited(32, 0.20, 1.0);
  const PartialFourierOp op(support_a);
  const SpectralCoefficients d(CMatrix::Zero(support_b.k(), 2), support_b);
  CHECK_THROWS_AS(op.synthesize(d), std::invalid_argument);
  CHECK_THROWS_AS(op.apply_adjoint(CMatrix::Zero(31, 2)), std::invalid_argument);
  CHECK_THROWS_AS(op.apply(CMatrix::Zero(support_a.k() + 1, 2)), std::invalid_argument);
}

TEST_CASE("project gathers in canonical order") {
  std::mt19937_64 rng(31);
  const Matrix x = testsupport::random_real_matrix(4, 3, rng);

  SUBCASE("full pattern flattens row-major") {
    std::vector<std::pair<Index, Index>> omega;
    for (Index r = 0; r < 4; ++r)
      for (Index c = 0; c < 3; ++c) omega.emplace_back(r, c);
    const SamplingPattern pattern(4, 3, omega, 0, SamplingScheme::uniform_global);
    const Vector v = project(pattern, x);
    Index i = 0;
    for (Index r = 0; r < 4; ++r)
      for (Index c = 0; c < 3; ++c) CHECK(v[i++] == x(r, c));
  }

  SUBCASE("single entry") {
    Matrix single = x;
    single(0, 0) = 7.0;
    const SamplingPattern pattern(4, 3, {{0, 0}}, 0, SamplingScheme::uniform_global);
    const Vector v = project(pattern, single);
    REQUIRE(v.size() == 1);
    CHECK(v[0] == 7.0);
  }

  SUBCASE("random pattern equals the gather-loop oracle") {
    const SamplingPattern pattern(4, 3, {{0, 2}, {1, 0}, {3, 1}, {3, 2}}, 0,
                                  SamplingScheme::uniform_global);
    const Vector v = project(pattern, x);
    for (Index i = 0; i < pattern.count(); ++i) {
      const auto& [r, c] = pattern.omega[i];
      CHECK(v[i] == x(r, c));
    }
  }

  CHECK_THROWS_AS(project(SamplingPattern(5, 3, {{0, 0}}, 0, SamplingScheme::uniform_global), x),
                  std::invalid_argument);
}

TEST_CASE("embed is the adjoint of project") {
  std::mt19937_64 rng(32);
  const SamplingPattern pattern(6, 4, {{0, 1}, {2, 2}, {5, 0}, {5, 3}}, 0,
                                SamplingScheme::uniform_global);

  SUBCASE("one-hot embedding") {
    const SamplingPattern single(6, 4, {{2, 3}}, 0, SamplingScheme::uniform_global);
    Vector v(1);
    v << 4.5;
    const Matrix e = embed(single, v);
    CHECK(e(2, 3) == 4.5);
    CHECK(e.norm() == 4.5);
  }

  SUBCASE("project(embed(v)) == v") {
    Vector v(4);
    v << 1.0, -2.0, 3.0, 0.25;
    CHECK((project(pattern, embed(pattern, v)) - v).norm() == 0.0);
  }

  SUBCASE("adjoint identity <project(x), v> = <x, embed(v)>") {
    for (int trial = 0; trial < 20; ++trial) {
      const Matrix x = testsupport::random_real_matrix(6, 4, rng);
      Vector v(4);
      for (Index i = 0; i < 4; ++i) v[i] = standard_normal(rng);
      const double lhs = project(pattern, x).dot(v);
      const double rhs = (x.array() * embed(pattern, v).array()).sum();
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
  }

  CHECK_THROWS_AS(embed(pattern, Vector::Zero(3)), std::invalid_argument);
}

TEST_CASE("measure adds seeded gaussian noise") {
  std::mt19937_64 rng(33);
  const Matrix x = testsupport::random_real_matrix(8, 4, rng);
  const RfFrame frame(x, 1.0, 0.25);
  const SamplingPattern pattern(8, 4, {{0, 0}, {1, 1}, {7, 3}}, 0, SamplingScheme::uniform_global);

  SUBCASE("sigma = 0 reproduces project exactly") {
    const Measurements b = measure(frame, pattern, 0.0, 99);
    CHECK((b.values - project(pattern, x)).norm() == 0.0);
    CHECK(b.noise_sigma == 0.0);
  }

  SUBCASE("same seed gives identical measurements") {
    const Measurements a = measure(frame, pattern, 0.5, 42);
    const Measurements b = measure(frame, pattern, 0.5, 42);
    CHECK((a.values.array() == b.values.array()).all());
    const Measurements c = measure(frame, pattern, 0.5, 43);
    CHECK((a.values - c.values).norm() > 0.0);
  }

  SUBCASE("noise variance matches sigma^2 over 1e5 samples") {
    const Matrix big = Matrix::Zero(500, 200);
    const RfFrame big_frame(big, 1.0, 0.25);
    std::vector<std::pair<Index, Index>> omega;
    omega.reserve(100000);
    for (Index r = 0; r < 500; ++r)
      for (Index c = 0; c < 200; ++c) omega.emplace_back(r, c);
    const SamplingPattern full(500, 200, omega, 0, SamplingScheme::uniform_global);
    const Measurements b = measure(big_frame, full, 1.0, 1234);
    const Vector noise = b.values;  // frame is zero, so values are pure noise
    const double mean = noise.mean();
    const double var = (noise.array() - mean).square().sum() / noise.size();
    CHECK(var >= 0.98);
    CHECK(var <= 1.02);
  }
}
