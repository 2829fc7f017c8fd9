#pragma once

#include <cstdint>
#include <memory>

#include "lrjs/types.hpp"

namespace lrjs {

namespace detail {
class Dft;
}

/// The partial inverse-DFT synthesis operator Y (M x k) and its adjoint Yt.
/// Column c of Y(D) is the length-M inverse DFT of column c of D scattered
/// onto the support bins, with orthonormal 1/sqrt(M) scaling, so the columns
/// of Y are orthonormal: Yt Y = I and Y Yt is the orthogonal projector onto
/// the in-band subspace.
class PartialFourierOp {
 public:
  explicit PartialFourierOp(FourierSupport support);
  ~PartialFourierOp();
  PartialFourierOp(PartialFourierOp&&) noexcept;
  PartialFourierOp& operator=(PartialFourierOp&&) noexcept;
  PartialFourierOp(const PartialFourierOp&) = delete;
  PartialFourierOp& operator=(const PartialFourierOp&) = delete;

  const FourierSupport& support() const { return support_; }
  Index m() const { return support_.m; }
  Index k() const { return support_.k(); }

  /// Y applied to a raw k x N coefficient block.
  CMatrix apply(const CMatrix& coeffs) const;
  /// Yt applied to a raw M x N block.
  CMatrix apply_adjoint(const CMatrix& x) const;

  /// X = Y D; throws on support mismatch.
  CMatrix synthesize(const SpectralCoefficients& d) const;
  /// D = Yt X for real or complex input with M rows.
  SpectralCoefficients analyze(const CMatrix& x) const;
  SpectralCoefficients analyze(const Matrix& x) const;

 private:
  FourierSupport support_;
  std::unique_ptr<detail::Dft> dft_;
};

/// Values of x at the pattern's locations, in canonical row-major order.
Vector project(const SamplingPattern& pattern, const Matrix& x);

/// Adjoint of project: zeros everywhere except the pattern's locations,
/// which carry v. project(pattern, embed(pattern, v)) == v.
Matrix embed(const SamplingPattern& pattern, const Vector& v);

/// B = P_Omega(X) + gaussian(0, sigma^2) noise, deterministic given seed.
Measurements measure(const RfFrame& x, const SamplingPattern& pattern, double sigma,
                     std::uint64_t seed);

}  // namespace lrjs
