#include "lrjs/solver.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "lrjs/rng.hpp"

namespace lrjs {

namespace {

struct ObjectiveParts {
  double value = 0.0;
  Index rank_estimate = 0;
};

// Objective and numerical rank from one singular value decomposition of D.
// yd must hold Y * d.
ObjectiveParts objective_with_rank(const CMatrix& d, const CMatrix& yd,
                                   const Measurements& b, const SolverConfig& cfg) {
  Eigen::BDCSVD<CMatrix> svd(d);
  const Vector& sigma = svd.singularValues();
  const double nuclear = sigma.sum();
  const double sigma_max = sigma.size() > 0 ? sigma[0] : 0.0;
  const Index rank = sigma_max > 0.0 ? (sigma.array() > 1e-6 * sigma_max).count() : 0;

  double l21 = 0.0;
  for (Index q = 0; q < d.rows(); ++q) l21 += d.row(q).norm();

  const Vector residual = b.values - project(b.pattern, yd.real());
  const double data = residual.squaredNorm() / (2.0 * cfg.mu);

  return {cfg.nuclear_weight * nuclear + cfg.alpha * l21 + data, rank};
}

CMatrix step1_impl(const SdmmState& state, const PartialFourierOp& op) {
  return ((state.w1 - state.b1) + (state.w2 - state.b2) +
          op.apply_adjoint(state.w3 - state.b3)) /
         3.0;
}

std::tuple<CMatrix, CMatrix, CMatrix> step2_impl(const SdmmState& state,
                                                 const SolverConfig& cfg,
                                                 const Measurements& b, const CMatrix& yd) {
  const double tau_nuclear = cfg.gamma * cfg.nuclear_weight;
  CMatrix w1 = tau_nuclear > 0.0 ? prox_nuclear(state.b1 + state.d, tau_nuclear).first
                                 : CMatrix(state.b1 + state.d);
  CMatrix w2 = prox_l21(state.b2 + state.d, cfg.gamma * cfg.alpha);
  CMatrix w3 = prox_data(state.b3 + yd, b, cfg.gamma, cfg.mu);
  return {std::move(w1), std::move(w2), std::move(w3)};
}

std::tuple<CMatrix, CMatrix, CMatrix> step3_impl(const SdmmState& state, const CMatrix& yd) {
  return {state.b1 + (state.d - state.w1), state.b2 + (state.d - state.w2),
          state.b3 + (yd - state.w3)};
}

bool state_finite(const SdmmState& state) {
  return state.d.allFinite() && state.w1.allFinite() && state.w2.allFinite() &&
         state.w3.allFinite() && state.b1.allFinite() && state.b2.allFinite() &&
         state.b3.allFinite();
}

// The closed-form Step 1 divides by 3, which is only the exact minimizer when
// Yt Y = I; probe that contract once per solve.
void verify_orthonormality(const PartialFourierOp& op) {
  std::mt19937_64 rng(0x5eed);
  CMatrix probe(op.k(), 1);
  for (Index q = 0; q < op.k(); ++q) probe(q, 0) = standard_complex_normal(rng);
  const CMatrix round_trip = op.apply_adjoint(op.apply(probe));
  if ((round_trip - probe).norm() > 1e-10 * probe.norm())
    throw std::logic_error("solve: operator violates the Yt Y = I contract");
}

}  // namespace

double objective(const SpectralCoefficients& d, const Measurements& b,
                 const SolverConfig& cfg, const PartialFourierOp& op) {
  cfg.validate();
  if (!(d.support == op.support()))
    throw std::invalid_argument("objective: coefficient support does not match the operator");
  if (b.pattern.m != op.m() || b.pattern.n != d.channels())
    throw std::invalid_argument("objective: measurement grid does not match the problem shape");
  const CMatrix yd = op.apply(d.data);
  return objective_with_rank(d.data, yd, b, cfg).value;
}

CMatrix step1_update_d(const SdmmState& state, const PartialFourierOp& op) {
  return step1_impl(state, op);
}

std::tuple<CMatrix, CMatrix, CMatrix> step2_update_w(const SdmmState& state,
                                                     const SolverConfig& cfg,
                                                     const Measurements& b,
                                                     const PartialFourierOp& op) {
  return step2_impl(state, cfg, b, op.apply(state.d));
}

std::tuple<CMatrix, CMatrix, CMatrix> step3_update_b(const SdmmState& state,
                                                     const PartialFourierOp& op) {
  return step3_impl(state, op.apply(state.d));
}

std::pair<SpectralCoefficients, SolverTrace> solve(
    const Measurements& b, const PartialFourierOp& op, const SolverConfig& cfg,
    const std::optional<SpectralCoefficients>& init) {
  cfg.validate();
  if (b.pattern.m != op.m())
    throw std::invalid_argument("solve: measurement grid rows do not match the operator");
  verify_orthonormality(op);

  const Index n = b.pattern.n;
  SdmmState state;
  if (init.has_value()) {
    if (!(init->support == op.support()))
      throw std::invalid_argument("solve: init support does not match the operator");
    if (init->channels() != n)
      throw std::invalid_argument("solve: init channel count does not match the pattern");
    state.d = init->data;
  } else {
    state.d = op.apply_adjoint(embed(b.pattern, b.values).cast<Complex>());
  }
  state.w1 = state.d;
  state.w2 = state.d;
  state.w3 = op.apply(state.d);
  state.b1 = CMatrix::Zero(op.k(), n);
  state.b2 = CMatrix::Zero(op.k(), n);
  state.b3 = CMatrix::Zero(op.m(), n);

  SolverTrace trace;
  trace.records.reserve(static_cast<std::size_t>(cfg.max_iters));
  trace.initial_objective = objective_with_rank(state.d, state.w3, b, cfg).value;
  trace.terminated_by = TerminationReason::max_iters;

  CMatrix previous_d = state.d;
  for (state.s = 1; state.s <= cfg.max_iters; ++state.s) {
    state.d = step1_impl(state, op);
    if (!state.d.allFinite())
      throw DivergenceError("solve: non-finite iterate at s = " + std::to_string(state.s),
                            std::move(trace));
    const CMatrix yd = op.apply(state.d);
    std::tie(state.w1, state.w2, state.w3) = step2_impl(state, cfg, b, yd);
    std::tie(state.b1, state.b2, state.b3) = step3_impl(state, yd);

    if (!state_finite(state))
      throw DivergenceError("solve: non-finite iterate at s = " + std::to_string(state.s),
                            std::move(trace));

    const double change = (state.d - previous_d).norm();
    const double base = previous_d.norm();
    const double rel_change = change == 0.0 ? 0.0 : (base > 0.0 ? change / base : 1.0);

    const double r1 = (state.d - state.w1).norm();
    const double r2 = (state.d - state.w2).norm();
    const double r3 = (yd - state.w3).norm();
    const auto parts = objective_with_rank(state.d, yd, b, cfg);

    trace.records.push_back({state.s, parts.value,
                             std::sqrt(r1 * r1 + r2 * r2 + r3 * r3), rel_change,
                             parts.rank_estimate});
    trace.final_residual_w1 = r1;
    trace.final_residual_w2 = r2;
    trace.final_residual_w3 = r3;

    previous_d = state.d;
    // The D update is idempotent from the consensus init, so a small change
    // of D alone can fire before the block dynamics have started; converging
    // also requires the feasibility gaps promised at termination.
    const double feasibility = cfg.tol * (1.0 + state.d.norm());
    if (rel_change <= cfg.tol && r1 <= feasibility && r2 <= feasibility && r3 <= feasibility) {
      trace.terminated_by = TerminationReason::tol;
      break;
    }
  }

  return {SpectralCoefficients(std::move(state.d), op.support()), std::move(trace)};
}

Reconstruction reconstruct(const SpectralCoefficients& d, const PartialFourierOp& op) {
  const CMatrix x = op.synthesize(d);
  return {RfFrame(x.real(), d.support.fs, d.support.fc), x.imag().norm()};
}

void write_trace_csv(const std::filesystem::path& path, const SolverTrace& trace) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open trace CSV for writing: " + path.string());
  out << "iter,objective,residual,rel_change,rank_estimate\n";
  char line[256];
  for (const auto& rec : trace.records) {
    std::snprintf(line, sizeof(line), "%d,%.17g,%.17g,%.17g,%lld\n", rec.iter, rec.objective,
                  rec.residual, rec.rel_change, static_cast<long long>(rec.rank_estimate));
    out << line;
  }
  if (!out) throw std::runtime_error("trace CSV write failed: " + path.string());
}

}  // namespace lrjs
