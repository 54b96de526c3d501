#ifndef QFH_FFT_UTILS_HPP
#define QFH_FFT_UTILS_HPP

#include <Eigen/Core>
#include <complex>
#include <memory>

namespace qfh {

// Transform conventions for carrier-resolved envelopes A(t) e^{-i w0 t}:
//   to_freq:  B(W_k) = sum_n A(t_n) e^{+i W_k t_n} dt
//   to_time:  A(t_n) = (1/2pi) sum_k B(W_k) e^{-i W_k t_n} dW
// Arrays are stored in natural (monotonic) order with t_n = (n - N/2) dt and
// W_k = 2 pi (k - N/2) / (N dt); N must be even.
// Move-only: one engine per propagation run, not shared across threads.
class FftEngine {
 public:
  FftEngine();
  ~FftEngine();
  FftEngine(FftEngine&&) noexcept;
  FftEngine& operator=(FftEngine&&) noexcept;
  FftEngine(const FftEngine&) = delete;
  FftEngine& operator=(const FftEngine&) = delete;

  Eigen::VectorXcd to_freq(const Eigen::VectorXcd& time_signal, double dt);
  Eigen::VectorXcd to_time(const Eigen::VectorXcd& spectrum, double dt);

  // lag-domain transform used by the cross-correlation:
  // out(tau_n) = (1/2pi) sum_k x_k e^{-i W_k tau_n} dW
  Eigen::VectorXcd backward_lag(const Eigen::VectorXcd& spectrum, double domega);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

Eigen::VectorXcd fftshift(const Eigen::VectorXcd& v);
Eigen::VectorXcd ifftshift(const Eigen::VectorXcd& v);

}  // namespace qfh

#endif
