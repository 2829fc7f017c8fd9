#pragma once

#include <complex>
#include <functional>

#include <Eigen/Core>

namespace lrjs::detail {

/// Thin RAII wrapper around FFTW's 1D complex-to-complex transforms.
/// Plans are created once (FFTW_ESTIMATE | FFTW_UNALIGNED) under a global
/// planner lock; execution uses the new-array interface, so a single Dft may
/// run concurrently on distinct buffers.
class Dft {
 public:
  explicit Dft(int n);
  ~Dft();
  Dft(const Dft&) = delete;
  Dft& operator=(const Dft&) = delete;

  int size() const { return n_; }

  /// out[j] = sum_m in[m] exp(-2*pi*i*j*m/n), unnormalized. in != out.
  void forward(const std::complex<double>* in, std::complex<double>* out) const;
  /// out[m] = sum_j in[j] exp(+2*pi*i*j*m/n), unnormalized. in != out.
  void backward(const std::complex<double>* in, std::complex<double>* out) const;

 private:
  int n_ = 0;
  void* fwd_ = nullptr;  // fftw_plan
  void* bwd_ = nullptr;
};

/// Number of worker threads allowed by LRJS_THREADS (>= 1; 1 when unset).
int max_threads_from_env();

/// Runs fn(begin, end) over a partition of [0, count) on up to
/// max_threads_from_env() threads. Partition bounds depend only on count and
/// the thread cap, and chunks write disjoint state, so results are
/// schedule-independent.
void parallel_chunks(Eigen::Index count,
                     const std::function<void(Eigen::Index, Eigen::Index)>& fn);

}  // namespace lrjs::detail
