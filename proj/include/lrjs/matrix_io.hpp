#pragma once

#include <filesystem>
#include <stdexcept>
#include <variant>

#include "lrjs/types.hpp"

namespace lrjs {

// "LRJS" binary matrix format, version 1. Little-endian throughout:
//   bytes 0..3   magic "LRJS"
//   bytes 4..5   format version (u16) = 1
//   byte  6      dtype code (u8): 0 = real64, 1 = complex128 interleaved
//   bytes 7..14  rows (u64)
//   bytes 15..22 cols (u64)
//   payload      row-major IEEE-754 doubles (re, im interleaved for complex)

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BadMagicError : IoError {
  using IoError::IoError;
};
struct UnsupportedVersionError : IoError {
  using IoError::IoError;
};
struct TruncatedPayloadError : IoError {
  using IoError::IoError;
};

using AnyMatrix = std::variant<Matrix, CMatrix>;

void write_matrix(const std::filesystem::path& path, const Matrix& m);
void write_matrix(const std::filesystem::path& path, const CMatrix& m);

AnyMatrix read_matrix(const std::filesystem::path& path);

/// read_matrix with the dtype pinned; throws IoError on a dtype mismatch.
Matrix read_real_matrix(const std::filesystem::path& path);
CMatrix read_complex_matrix(const std::filesystem::path& path);

}  // namespace lrjs
