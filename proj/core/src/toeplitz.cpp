#include "toeplitz.hpp"

#include <fftw3.h>

#include <complex>
#include <mutex>
#include <stdexcept>

namespace nlac::detail {
namespace {

// The FFTW planner is not thread safe.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::size_t fft_length(std::size_t minimum) {
  std::size_t best = 0;
  for (std::size_t p2 = 1; p2 < 2 * minimum; p2 *= 2) {
    for (std::size_t p3 = p2; p3 < 2 * minimum; p3 *= 3) {
      for (std::size_t p5 = p3; p5 < 2 * minimum; p5 *= 5) {
        if (p5 >= minimum && (best == 0 || p5 < best)) best = p5;
      }
    }
  }
  return best;
}

}  // namespace

struct SymmetricToeplitz::Impl {
  std::size_t n = 0;
  std::size_t len = 0;
  double* real = nullptr;
  fftw_complex* spectrum = nullptr;
  std::vector<std::complex<double>> symbol;
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

SymmetricToeplitz::SymmetricToeplitz(const std::vector<double>& coeffs, std::size_t n)
    : impl_(new Impl) {
  impl_->n = n;
  impl_->len = fft_length(2 * n - 1);
  const std::size_t len = impl_->len;
  const std::size_t bins = len / 2 + 1;
  impl_->real = fftw_alloc_real(len);
  impl_->spectrum = fftw_alloc_complex(bins);
  if (impl_->real == nullptr || impl_->spectrum == nullptr) {
    fftw_free(impl_->real);
    fftw_free(impl_->spectrum);
    delete impl_;
    throw std::bad_alloc();
  }
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    impl_->forward = fftw_plan_dft_r2c_1d(static_cast<int>(len), impl_->real, impl_->spectrum,
                                          FFTW_ESTIMATE);
    impl_->backward = fftw_plan_dft_c2r_1d(static_cast<int>(len), impl_->spectrum, impl_->real,
                                           FFTW_ESTIMATE);
  }
  for (std::size_t k = 0; k < len; ++k) impl_->real[k] = 0.0;
  for (std::size_t m = 1; m < n; ++m) {
    impl_->real[m] = coeffs[m];
    impl_->real[len - m] = coeffs[m];
  }
  fftw_execute(impl_->forward);
  impl_->symbol.resize(bins);
  for (std::size_t k = 0; k < bins; ++k) {
    impl_->symbol[k] = std::complex<double>(impl_->spectrum[k][0], impl_->spectrum[k][1]) /
                       static_cast<double>(len);
  }
}

SymmetricToeplitz::~SymmetricToeplitz() {
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(impl_->forward);
    fftw_destroy_plan(impl_->backward);
  }
  fftw_free(impl_->real);
  fftw_free(impl_->spectrum);
  delete impl_;
}

void SymmetricToeplitz::apply(const std::vector<double>& x, std::vector<double>& y) {
  const std::size_t n = impl_->n;
  const std::size_t len = impl_->len;
  if (x.size() != n) throw std::invalid_argument("Toeplitz operand has the wrong length");
  for (std::size_t k = 0; k < n; ++k) impl_->real[k] = x[k];
  for (std::size_t k = n; k < len; ++k) impl_->real[k] = 0.0;
  fftw_execute(impl_->forward);
  for (std::size_t k = 0; k < impl_->symbol.size(); ++k) {
    const std::complex<double> v =
        std::complex<double>(impl_->spectrum[k][0], impl_->spectrum[k][1]) * impl_->symbol[k];
    impl_->spectrum[k][0] = v.real();
    impl_->spectrum[k][1] = v.imag();
  }
  fftw_execute(impl_->backward);
  y.resize(n);
  for (std::size_t k = 0; k < n; ++k) y[k] = impl_->real[k];
}

}  // namespace nlac::detail
