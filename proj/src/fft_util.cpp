#include "fft_util.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace lrjs::detail {

namespace {

// FFTW's planner is not thread-safe; execution via the new-array interface is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(std::complex<double>* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

Dft::Dft(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("Dft: transform length must be positive");
  std::vector<std::complex<double>> a(static_cast<std::size_t>(n));
  std::vector<std::complex<double>> b(static_cast<std::size_t>(n));
  std::scoped_lock lock(planner_mutex());
  fwd_ = fftw_plan_dft_1d(n, as_fftw(a.data()), as_fftw(b.data()), FFTW_FORWARD,
                          FFTW_ESTIMATE | FFTW_UNALIGNED);
  bwd_ = fftw_plan_dft_1d(n, as_fftw(a.data()), as_fftw(b.data()), FFTW_BACKWARD,
                          FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (fwd_ == nullptr || bwd_ == nullptr) throw std::runtime_error("Dft: FFTW planning failed");
}

Dft::~Dft() {
  std::scoped_lock lock(planner_mutex());
  if (fwd_ != nullptr) fftw_destroy_plan(static_cast<fftw_plan>(fwd_));
  if (bwd_ != nullptr) fftw_destroy_plan(static_cast<fftw_plan>(bwd_));
}

void Dft::forward(const std::complex<double>* in, std::complex<double>* out) const {
  fftw_execute_dft(static_cast<fftw_plan>(fwd_),
                   as_fftw(const_cast<std::complex<double>*>(in)), as_fftw(out));
}

void Dft::backward(const std::complex<double>* in, std::complex<double>* out) const {
  fftw_execute_dft(static_cast<fftw_plan>(bwd_),
                   as_fftw(const_cast<std::complex<double>*>(in)), as_fftw(out));
}

int max_threads_from_env() {
  const char* value = std::getenv("LRJS_THREADS");
  if (value == nullptr) return 1;
  try {
    const int n = std::stoi(value);
    return std::max(1, n);
  } catch (const std::exception&) {
    return 1;
  }
}

void parallel_chunks(Eigen::Index count,
                     const std::function<void(Eigen::Index, Eigen::Index)>& fn) {
  const Eigen::Index threads =
      std::min<Eigen::Index>(count, static_cast<Eigen::Index>(max_threads_from_env()));
  if (threads <= 1) {
    if (count > 0) fn(0, count);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(static_cast<std::size_t>(threads));
  const Eigen::Index chunk = (count + threads - 1) / threads;
  for (Eigen::Index t = 0; t < threads; ++t) {
    const Eigen::Index begin = t * chunk;
    const Eigen::Index end = std::min(count, begin + chunk);
    if (begin >= end) break;
    workers.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (auto& w : workers) w.join();
}

}  // namespace lrjs::detail
