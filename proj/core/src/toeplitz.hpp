#pragma once

#include <cstddef>
#include <vector>

namespace nlac::detail {

/// y_i = sum_{j != i} c_{|i-j|} x_j for a symmetric Toeplitz matrix of order n
/// with zero diagonal, evaluated by FFT convolution.
class SymmetricToeplitz {
 public:
  /// coeffs[m] is c_m for 1 <= m < n; coeffs[0] is ignored.
  SymmetricToeplitz(const std::vector<double>& coeffs, std::size_t n);
  ~SymmetricToeplitz();
  SymmetricToeplitz(const SymmetricToeplitz&) = delete;
  SymmetricToeplitz& operator=(const SymmetricToeplitz&) = delete;

  void apply(const std::vector<double>& x, std::vector<double>& y);

 private:
  struct Impl;
  Impl* impl_;
};

}  // namespace nlac::detail
