#pragma once

#include <unistd.h>

#include <atomic>
#include <cmath>
#include <complex>
#include <filesystem>
#include <numbers>
#include <random>
#include <string>

#include "lrjs/rng.hpp"
#include "lrjs/types.hpp"

namespace testsupport {

inline lrjs::Matrix random_real_matrix(lrjs::Index rows, lrjs::Index cols,
                                       std::mt19937_64& rng) {
  lrjs::Matrix m(rows, cols);
  for (lrjs::Index r = 0; r < rows; ++r)
    for (lrjs::Index c = 0; c < cols; ++c) m(r, c) = lrjs::standard_normal(rng);
  return m;
}

inline lrjs::CMatrix random_complex_matrix(lrjs::Index rows, lrjs::Index cols,
                                           std::mt19937_64& rng) {
  lrjs::CMatrix m(rows, cols);
  for (lrjs::Index r = 0; r < rows; ++r)
    for (lrjs::Index c = 0; c < cols; ++c) m(r, c) = lrjs::standard_complex_normal(rng);
  return m;
}

/// Random coefficients with conjugate-paired rows, so Y * d is real.
inline lrjs::CMatrix random_conjugate_symmetric(const lrjs::FourierSupport& support,
                                                lrjs::Index cols, std::mt19937_64& rng) {
  lrjs::CMatrix d = lrjs::CMatrix::Zero(support.k(), cols);
  for (lrjs::Index q = 0; q < support.k(); ++q) {
    const lrjs::Index partner = support.conjugate_row(q);
    if (partner == q) {
      for (lrjs::Index c = 0; c < cols; ++c) d(q, c) = lrjs::standard_normal(rng);
    } else if (partner > q) {
      for (lrjs::Index c = 0; c < cols; ++c) {
        const lrjs::Complex g = lrjs::standard_complex_normal(rng);
        d(q, c) = g;
        d(partner, c) = std::conj(g);
      }
    }
  }
  return d;
}

/// Dense M x k synthesis matrix: Y(m, q) = exp(2*pi*i*j_q*m/M) / sqrt(M).
/// Independent oracle for the FFT-based operator.
inline lrjs::CMatrix dense_synthesis_matrix(const lrjs::FourierSupport& support) {
  const auto m = support.m;
  lrjs::CMatrix y(m, support.k());
  for (lrjs::Index row = 0; row < m; ++row)
    for (lrjs::Index q = 0; q < support.k(); ++q) {
      const double angle = 2.0 * std::numbers::pi *
                           static_cast<double>(support.bins[static_cast<std::size_t>(q)]) *
                           static_cast<double>(row) / static_cast<double>(m);
      y(row, q) = std::polar(1.0 / std::sqrt(static_cast<double>(m)), angle);
    }
  return y;
}

inline double rel_err(const lrjs::CMatrix& a, const lrjs::CMatrix& b) {
  const double base = b.norm();
  return base > 0.0 ? (a - b).norm() / base : (a - b).norm();
}

inline double rel_err(const lrjs::Matrix& a, const lrjs::Matrix& b) {
  const double base = b.norm();
  return base > 0.0 ? (a - b).norm() / base : (a - b).norm();
}

/// Unique scratch directory, removed on destruction.
struct TempDir {
  std::filesystem::path path;

  explicit TempDir(const std::string& tag) {
    static std::atomic<int> counter{0};
    path = std::filesystem::temp_directory_path() /
           ("lrjs_test_" + tag + "_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter.fetch_add(1)));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
};

}  // namespace testsupport
