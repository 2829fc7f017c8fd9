#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <utility>

#include "lrjs/operators.hpp"
#include "lrjs/prox.hpp"
#include "lrjs/types.hpp"

namespace lrjs {

// Three-way splitting of
//   min_D  nw*|D|_* + alpha*|D|_{2,1} + (1/(2*mu))*|B - P_Omega(Y D)|_F^2
// with consensus blocks w1 = D, w2 = D, w3 = Y D and multipliers b1..b3.
// Each iteration runs a closed-form least-squares update of D, the three
// proximal block updates, and the multiplier ascent.

/// Iterate blocks: w1, w2, b1, b2 live in coefficient space (k x N); w3, b3
/// in signal space (M x N).
struct SdmmState {
  CMatrix d;
  CMatrix w1, w2, w3;
  CMatrix b1, b2, b3;
  int s = 0;
};

/// Raised when an iterate stops being finite; carries the trace so far.
struct DivergenceError : std::runtime_error {
  DivergenceError(const std::string& msg, SolverTrace partial_trace)
      : std::runtime_error(msg), trace(std::move(partial_trace)) {}
  SolverTrace trace;
};

/// nw*|D|_* + alpha*|D|_{2,1} + (1/(2*mu))*|B - P_Omega(real(Y D))|_F^2.
double objective(const SpectralCoefficients& d, const Measurements& b,
                 const SolverConfig& cfg, const PartialFourierOp& op);

/// D = [(w1 - b1) + (w2 - b2) + Yt(w3 - b3)] / 3, the exact least-squares
/// minimizer given Yt Y = I.
CMatrix step1_update_d(const SdmmState& state, const PartialFourierOp& op);

/// Block proximal updates at the current D (state.d):
///   w1 = prox_nuclear(b1 + D, gamma*nw), w2 = prox_l21(b2 + D, gamma*alpha),
///   w3 = prox_data(b3 + Y D, B, gamma, mu).
std::tuple<CMatrix, CMatrix, CMatrix> step2_update_w(const SdmmState& state,
                                                     const SolverConfig& cfg,
                                                     const Measurements& b,
                                                     const PartialFourierOp& op);

/// Multiplier ascent: b1 += D - w1, b2 += D - w2, b3 += Y D - w3.
std::tuple<CMatrix, CMatrix, CMatrix> step3_update_b(const SdmmState& state,
                                                     const PartialFourierOp& op);

/// Runs the iteration from the adjoint back-projection init (or `init` when
/// given) until the relative change of D drops below cfg.tol or max_iters is
/// reached. Deterministic given inputs. Throws DivergenceError on a
/// non-finite iterate.
std::pair<SpectralCoefficients, SolverTrace> solve(
    const Measurements& b, const PartialFourierOp& op, const SolverConfig& cfg,
    const std::optional<SpectralCoefficients>& init = std::nullopt);

struct Reconstruction {
  RfFrame frame;
  double imag_norm = 0.0;  // Frobenius norm of the discarded imaginary part
};

/// real(Y D) packaged as an RfFrame, with the discarded imaginary part's
/// norm as a diagnostic.
Reconstruction reconstruct(const SpectralCoefficients& d, const PartialFourierOp& op);

/// Columns: iter, objective, residual, rel_change, rank_estimate.
void write_trace_csv(const std::filesystem::path& path, const SolverTrace& trace);

}  // namespace lrjs
