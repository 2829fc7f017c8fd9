#include "lrjs/prox.hpp"

#include <Eigen/SVD>

#include <stdexcept>

namespace lrjs {

std::pair<CMatrix, SvtReport> prox_nuclear(const CMatrix& v, double tau) {
  if (!v.allFinite()) throw std::invalid_argument("prox_nuclear: non-finite input");
  if (tau < 0.0) throw std::invalid_argument("prox_nuclear: tau must be >= 0");

  Eigen::BDCSVD<CMatrix> svd(v, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& sigma = svd.singularValues();

  SvtReport report;
  report.singular_values = sigma;
  report.threshold = tau;
  report.retained_rank = (sigma.array() > tau).count();

  if (tau == 0.0) return {v, std::move(report)};

  const Index r = report.retained_rank;
  if (r == 0) return {CMatrix::Zero(v.rows(), v.cols()), std::move(report)};
  const Vector shrunk = sigma.head(r).array() - tau;
  CMatrix w = svd.matrixU().leftCols(r) * shrunk.asDiagonal() *
              svd.matrixV().leftCols(r).adjoint();
  return {std::move(w), std::move(report)};
}

CMatrix prox_l21(const CMatrix& v, double tau) {
  if (!v.allFinite()) throw std::invalid_argument("prox_l21: non-finite input");
  if (tau < 0.0) throw std::invalid_argument("prox_l21: tau must be >= 0");
  if (tau == 0.0) return v;

  CMatrix w(v.rows(), v.cols());
  for (Index q = 0; q < v.rows(); ++q) {
    const double row_norm = v.row(q).norm();
    if (row_norm > tau)
      w.row(q) = v.row(q) * (1.0 - tau / row_norm);
    else
      w.row(q).setZero();
  }
  return w;
}

CMatrix prox_data(const CMatrix& v, const Measurements& b, double gamma, double mu) {
  if (v.rows() != b.pattern.m || v.cols() != b.pattern.n)
    throw std::invalid_argument("prox_data: matrix shape does not match the pattern grid");
  if (!(gamma > 0.0) || !(mu > 0.0))
    throw std::invalid_argument("prox_data: gamma and mu must be > 0");

  CMatrix w = v;
  const double denom = mu + gamma;
  for (Index i = 0; i < b.pattern.count(); ++i) {
    const auto& [r, c] = b.pattern.omega[static_cast<std::size_t>(i)];
    w(r, c) = (mu * v(r, c) + gamma * b.values[i]) / denom;
  }
  return w;
}

}  // namespace lrjs
