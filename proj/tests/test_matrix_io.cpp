#include <doctest.h>

#include <cmath>
#include <fstream>
#include <vector>

#include "lrjs/matrix_io.hpp"
#include "support.hpp"

using namespace lrjs;
using testsupport::TempDir;

namespace {

std::vector<unsigned char> slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void spit(const std::filesystem::path& p, const std::vector<unsigned char>& bytes) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

}  // namespace

TEST_CASE("1x1 real matrix is a 31-byte file (23 header + 8 payload)") {
  TempDir dir("io");
  const auto path = dir.path / "one.lrjs";
  write_matrix(path, Matrix(Matrix::Zero(1, 1)));
  CHECK(std::filesystem::file_size(path) == 31);
}

TEST_CASE("complex 2x2 payload is 64 bytes") {
  TempDir dir("io");
  const auto path = dir.path / "c22.lrjs";
  write_matrix(path, CMatrix(CMatrix::Zero(2, 2)));
  CHECK(std::filesystem::file_size(path) == 23 + 64);
}

TEST_CASE("rewriting a complex 3x2 matrix yields identical bytes") {
  TempDir dir("io");
  std::mt19937_64 rng(5);
  const CMatrix m = testsupport::random_complex_matrix(3, 2, rng);
  const auto a = dir.path / "a.lrjs";
  const auto b = dir.path / "b.lrjs";
  write_matrix(a, m);
  const CMatrix back = read_complex_matrix(a);
  write_matrix(b, back);
  CHECK(slurp(a) == slurp(b));
}

TEST_CASE("round-trip is bit-exact for random matrices of both dtypes") {
  TempDir dir("io");
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const Index rows = 1 + static_cast<Index>(uniform_below(rng, 12));
    const Index cols = 1 + static_cast<Index>(uniform_below(rng, 12));
    const auto path = dir.path / "m.lrjs";

    const Matrix real = testsupport::random_real_matrix(rows, cols, rng);
    write_matrix(path, real);
    const Matrix real_back = read_real_matrix(path);
    CHECK((real_back.array() == real.array()).all());

    const CMatrix cplx = testsupport::random_complex_matrix(rows, cols, rng);
    write_matrix(path, cplx);
    const CMatrix cplx_back = read_complex_matrix(path);
    CHECK((cplx_back.array() == cplx.array()).all());
  }
}

TEST_CASE("read_matrix returns the dtype that was written") {
  TempDir dir("io");
  const auto path = dir.path / "m.lrjs";
  write_matrix(path, Matrix(Matrix::Identity(2, 2)));
  CHECK(std::holds_alternative<Matrix>(read_matrix(path)));
  CHECK_THROWS_AS(read_complex_matrix(path), IoError);
  write_matrix(path, CMatrix(CMatrix::Identity(2, 2)));
  CHECK(std::holds_alternative<CMatrix>(read_matrix(path)));
  CHECK_THROWS_AS(read_real_matrix(path), IoError);
}

TEST_CASE("bad magic, bad version, and truncation raise distinct errors") {
  TempDir dir("io");
  const auto path = dir.path / "m.lrjs";
  write_matrix(path, Matrix(Matrix::Zero(10, 10)));
  auto bytes = slurp(path);

  auto corrupted = bytes;
  corrupted[0] = 'X';
  corrupted[1] = 'X';
  corrupted[2] = 'X';
  corrupted[3] = 'X';
  spit(path, corrupted);
  CHECK_THROWS_AS(read_matrix(path), BadMagicError);

  corrupted = bytes;
  corrupted[4] = 2;  // version 2
  spit(path, corrupted);
  CHECK_THROWS_AS(read_matrix(path), UnsupportedVersionError);

  // header claims 10x10 real but only 50 payload values remain
  corrupted = bytes;
  corrupted.resize(23 + 50 * 8);
  spit(path, corrupted);
  CHECK_THROWS_AS(read_matrix(path), TruncatedPayloadError);

  // trailing junk is also a payload size mismatch
  corrupted = bytes;
  corrupted.push_back(0);
  spit(path, corrupted);
  CHECK_THROWS_AS(read_matrix(path), TruncatedPayloadError);

  CHECK_THROWS_AS(read_matrix(dir.path / "missing.lrjs"), IoError);
}

TEST_CASE("non-finite entries are rejected on write") {
  TempDir dir("io");
  Matrix m = Matrix::Zero(2, 2);
  m(1, 1) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(write_matrix(dir.path / "m.lrjs", m), std::invalid_argument);
  CMatrix c = CMatrix::Zero(2, 2);
  c(0, 0) = Complex(0.0, std::nan(""));
  CHECK_THROWS_AS(write_matrix(dir.path / "c.lrjs", c), std::invalid_argument);
}

TEST_CASE("header layout is little-endian with the documented offsets") {
  TempDir dir("io");
  const auto path = dir.path / "m.lrjs";
  Matrix m(1, 2);
  m << 1.0, 2.0;
  write_matrix(path, m);
  const auto bytes = slurp(path);
  REQUIRE(bytes.size() == 23 + 16);
  CHECK(bytes[0] == 'L');
  CHECK(bytes[1] == 'R');
  CHECK(bytes[2] == 'J');
  CHECK(bytes[3] == 'S');
  CHECK(bytes[4] == 1);  // version lo
  CHECK(bytes[5] == 0);  // version hi
  CHECK(bytes[6] == 0);  // dtype real64
  CHECK(bytes[7] == 1);  // rows lo
  CHECK(bytes[15] == 2);  // cols lo
}
