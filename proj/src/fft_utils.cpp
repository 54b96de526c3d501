#include "qfh/fft_utils.hpp"

#include <unsupported/Eigen/FFT>

#include "qfh/constants.hpp"
#include "qfh/errors.hpp"

namespace qfh {

struct FftEngine::Impl {
  Eigen::FFT<double> fft;
};

FftEngine::FftEngine() : impl_(std::make_unique<Impl>()) {}
FftEngine::~FftEngine() = default;
FftEngine::FftEngine(FftEngine&&) noexcept = default;
FftEngine& FftEngine::operator=(FftEngine&&) noexcept = default;

Eigen::VectorXcd fftshift(const Eigen::VectorXcd& v) {
  const Eigen::Index n = v.size();
  Eigen::VectorXcd out(n);
  out.head(n / 2) = v.tail(n / 2);
  out.tail(n / 2) = v.head(n / 2);
  return out;
}

Eigen::VectorXcd ifftshift(const Eigen::VectorXcd& v) { return fftshift(v); }

Eigen::VectorXcd FftEngine::to_freq(const Eigen::VectorXcd& a, double dt) {
  if (a.size() % 2 != 0) throw ConfigInvalid("FFT grids must have even length");
  // e^{+i W t} with W, t both centered: ifftshift -> inverse DFT -> fftshift
  Eigen::VectorXcd tmp = ifftshift(a);
  Eigen::VectorXcd out(a.size());
  impl_->fft.inv(out, tmp);
  out *= static_cast<double>(a.size()) * dt;
  return fftshift(out);
}

Eigen::VectorXcd FftEngine::to_time(const Eigen::VectorXcd& b, double dt) {
  if (b.size() % 2 != 0) throw ConfigInvalid("FFT grids must have even length");
  Eigen::VectorXcd tmp = ifftshift(b);
  Eigen::VectorXcd out(b.size());
  impl_->fft.fwd(out, tmp);
  out /= static_cast<double>(b.size()) * dt;
  return fftshift(out);
}

Eigen::VectorXcd FftEngine::backward_lag(const Eigen::VectorXcd& spectrum, double domega) {
  const Eigen::Index n = spectrum.size();
  Eigen::VectorXcd tmp = ifftshift(spectrum);
  Eigen::VectorXcd out(n);
  impl_->fft.fwd(out, tmp);
  out *= domega / (2.0 * pi);
  return fftshift(out);
}

}  // namespace qfh
