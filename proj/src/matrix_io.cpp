#include "lrjs/matrix_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <vector>

namespace lrjs {

namespace {

constexpr char kMagic[4] = {'L', 'R', 'J', 'S'};
constexpr std::uint16_t kVersion = 1;
constexpr std::size_t kHeaderBytes = 23;

void put_u16(std::vector<unsigned char>& buf, std::uint16_t v) {
  buf.push_back(static_cast<unsigned char>(v & 0xff));
  buf.push_back(static_cast<unsigned char>(v >> 8));
}

void put_u64(std::vector<unsigned char>& buf, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) buf.push_back(static_cast<unsigned char>((v >> (8 * i)) & 0xff));
}

void put_double(std::vector<unsigned char>& buf, double d) {
  put_u64(buf, std::bit_cast<std::uint64_t>(d));
}

std::uint16_t get_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint64_t get_u64(const unsigned char* p) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

double get_double(const unsigned char* p) {
  return std::bit_cast<double>(get_u64(p));
}

void write_file(const std::filesystem::path& path, const std::vector<unsigned char>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

std::vector<unsigned char> header(std::uint8_t dtype, std::uint64_t rows, std::uint64_t cols,
                                  std::size_t payload_doubles) {
  std::vector<unsigned char> buf;
  buf.reserve(kHeaderBytes + 8 * payload_doubles);
  buf.insert(buf.end(), kMagic, kMagic + 4);
  put_u16(buf, kVersion);
  buf.push_back(dtype);
  put_u64(buf, rows);
  put_u64(buf, cols);
  return buf;
}

}  // namespace

void write_matrix(const std::filesystem::path& path, const Matrix& m) {
  if (!m.allFinite()) throw std::invalid_argument("write_matrix: non-finite entries");
  auto buf = header(0, static_cast<std::uint64_t>(m.rows()),
                    static_cast<std::uint64_t>(m.cols()),
                    static_cast<std::size_t>(m.size()));
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c) put_double(buf, m(r, c));
  write_file(path, buf);
}

void write_matrix(const std::filesystem::path& path, const CMatrix& m) {
  if (!m.allFinite()) throw std::invalid_argument("write_matrix: non-finite entries");
  auto buf = header(1, static_cast<std::uint64_t>(m.rows()),
                    static_cast<std::uint64_t>(m.cols()),
                    2 * static_cast<std::size_t>(m.size()));
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c) {
      put_double(buf, m(r, c).real());
      put_double(buf, m(r, c).imag());
    }
  write_file(path, buf);
}

AnyMatrix read_matrix(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0)
    throw BadMagicError("not an LRJS file: " + path.string());
  if (bytes.size() < kHeaderBytes)
    throw TruncatedPayloadError("truncated header: " + path.string());
  const std::uint16_t version = get_u16(bytes.data() + 4);
  if (version != kVersion)
    throw UnsupportedVersionError("unsupported LRJS version " + std::to_string(version));
  const std::uint8_t dtype = bytes[6];
  if (dtype > 1) throw IoError("unknown dtype code " + std::to_string(dtype));
  const std::uint64_t rows = get_u64(bytes.data() + 7);
  const std::uint64_t cols = get_u64(bytes.data() + 15);
  const std::uint64_t doubles_per_entry = (dtype == 0) ? 1 : 2;
  if (rows != 0 && cols > std::numeric_limits<std::uint64_t>::max() / rows / 8 / doubles_per_entry)
    throw IoError("matrix dimensions overflow");
  const std::uint64_t expected = kHeaderBytes + rows * cols * doubles_per_entry * 8;
  if (bytes.size() != expected)
    throw TruncatedPayloadError("payload size mismatch: expected " + std::to_string(expected) +
                                " bytes, got " + std::to_string(bytes.size()));

  const unsigned char* p = bytes.data() + kHeaderBytes;
  if (dtype == 0) {
    Matrix m(static_cast<Index>(rows), static_cast<Index>(cols));
    for (Index r = 0; r < m.rows(); ++r)
      for (Index c = 0; c < m.cols(); ++c, p += 8) m(r, c) = get_double(p);
    return m;
  }
  CMatrix m(static_cast<Index>(rows), static_cast<Index>(cols));
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c, p += 16)
      m(r, c) = Complex(get_double(p), get_double(p + 8));
  return m;
}

Matrix read_real_matrix(const std::filesystem::path& path) {
  auto any = read_matrix(path);
  if (auto* m = std::get_if<Matrix>(&any)) return std::move(*m);
  throw IoError("expected real64 matrix: " + path.string());
}

CMatrix read_complex_matrix(const std::filesystem::path& path) {
  auto any = read_matrix(path);
  if (auto* m = std::get_if<CMatrix>(&any)) return std::move(*m);
  throw IoError("expected complex128 matrix: " + path.string());
}

}  // namespace lrjs
