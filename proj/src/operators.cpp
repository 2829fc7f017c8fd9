#include "lrjs/operators.hpp"

#include <cmath>
#include <stdexcept>

#include "fft_util.hpp"
#include "lrjs/rng.hpp"

namespace lrjs {

PartialFourierOp::PartialFourierOp(FourierSupport support)
    : support_(std::move(support)),
      dft_(std::make_unique<detail::Dft>(static_cast<int>(support_.m))) {}

PartialFourierOp::~PartialFourierOp() = default;
PartialFourierOp::PartialFourierOp(PartialFourierOp&&) noexcept = default;
PartialFourierOp& PartialFourierOp::operator=(PartialFourierOp&&) noexcept = default;

CMatrix PartialFourierOp::apply(const CMatrix& coeffs) const {
  if (coeffs.rows() != k())
    throw std::invalid_argument("PartialFourierOp::apply: coefficient row count != k");
  const Index m_len = m();
  const Index n = coeffs.cols();
  const double scale = 1.0 / std::sqrt(static_cast<double>(m_len));
  CMatrix out(m_len, n);
  detail::parallel_chunks(n, [&](Index begin, Index end) {
    Eigen::VectorXcd spectrum(m_len);
    for (Index c = begin; c < end; ++c) {
      spectrum.setZero();
      for (Index q = 0; q < k(); ++q) spectrum[support_.bins[q]] = coeffs(q, c) * scale;
      dft_->backward(spectrum.data(), out.col(c).data());
    }
  });
  return out;
}

CMatrix PartialFourierOp::apply_adjoint(const CMatrix& x) const {
  if (x.rows() != m())
    throw std::invalid_argument("PartialFourierOp::apply_adjoint: input row count != M");
  const Index m_len = m();
  const Index n = x.cols();
  const double scale = 1.0 / std::sqrt(static_cast<double>(m_len));
  CMatrix out(k(), n);
  detail::parallel_chunks(n, [&](Index begin, Index end) {
    Eigen::VectorXcd spectrum(m_len);
    for (Index c = begin; c < end; ++c) {
      dft_->forward(x.col(c).data(), spectrum.data());
      for (Index q = 0; q < k(); ++q) out(q, c) = spectrum[support_.bins[q]] * scale;
    }
  });
  return out;
}

CMatrix PartialFourierOp::synthesize(const SpectralCoefficients& d) const {
  if (!(d.support == support_))
    throw std::invalid_argument("synthesize: coefficient support does not match the operator");
  return apply(d.data);
}

SpectralCoefficients PartialFourierOp::analyze(const CMatrix& x) const {
  return SpectralCoefficients(apply_adjoint(x), support_);
}

SpectralCoefficients PartialFourierOp::analyze(const Matrix& x) const {
  return analyze(CMatrix(x.cast<Complex>()));
}

Vector project(const SamplingPattern& pattern, const Matrix& x) {
  if (x.rows() != pattern.m || x.cols() != pattern.n)
    throw std::invalid_argument("project: matrix shape does not match the pattern grid");
  Vector out(pattern.count());
  for (Index i = 0; i < pattern.count(); ++i) {
    const auto& [r, c] = pattern.omega[static_cast<std::size_t>(i)];
    out[i] = x(r, c);
  }
  return out;
}

Matrix embed(const SamplingPattern& pattern, const Vector& v) {
  if (v.size() != pattern.count())
    throw std::invalid_argument("embed: value count does not match |omega|");
  Matrix out = Matrix::Zero(pattern.m, pattern.n);
  for (Index i = 0; i < pattern.count(); ++i) {
    const auto& [r, c] = pattern.omega[static_cast<std::size_t>(i)];
    out(r, c) = v[i];
  }
  return out;
}

Measurements measure(const RfFrame& x, const SamplingPattern& pattern, double sigma,
                     std::uint64_t seed) {
  if (sigma < 0.0) throw std::invalid_argument("measure: sigma must be >= 0");
  Vector values = project(pattern, x.data);
  if (sigma > 0.0) {
    std::mt19937_64 rng(seed);
    for (Index i = 0; i < values.size(); ++i) values[i] += sigma * standard_normal(rng);
  }
  return Measurements(std::move(values), pattern, sigma);
}

}  // namespace lrjs
