#pragma once

#include <utility>

#include "lrjs/types.hpp"

namespace lrjs {

/// Diagnostics from singular value thresholding.
struct SvtReport {
  Vector singular_values;  // descending
  double threshold = 0.0;
  Index retained_rank = 0;  // #{ sigma_i > threshold }
};

/// argmin_w tau*|w|_* + 0.5*|w - v|_F^2: soft-threshold the singular values.
std::pair<CMatrix, SvtReport> prox_nuclear(const CMatrix& v, double tau);

/// argmin_w tau*|w|_{2,1} + 0.5*|w - v|_F^2: row-wise group soft-thresholding.
CMatrix prox_l21(const CMatrix& v, double tau);

/// argmin_w (1/(2*gamma))*|w - v|_F^2 + (1/(2*mu))*|B - P_Omega(w)|_F^2.
/// Off Omega w = v; on Omega the entry is blended toward the (real)
/// measurement: w = (mu*v + gamma*B) / (mu + gamma).
CMatrix prox_data(const CMatrix& v, const Measurements& b, double gamma, double mu);

}  // namespace lrjs
