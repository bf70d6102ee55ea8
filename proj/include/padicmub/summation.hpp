#pragma once

#include <cmath>
#include <complex>

namespace padicmub {

/// Neumaier-compensated accumulator. Terms are consumed in call order, so a
/// fixed iteration order gives bit-identical results.
template <typename T>
class CompensatedSum {
 public:
  void add(T term) {
    const T t = sum_ + term;
    if (std::abs(sum_) >= std::abs(term)) {
      compensation_ += (sum_ - t) + term;
    } else {
      compensation_ += (term - t) + sum_;
    }
    sum_ = t;
  }
  T value() const { return sum_ + compensation_; }

 private:
  T sum_{};
  T compensation_{};
};

template <typename T>
class CompensatedSum<std::complex<T>> {
 public:
  void add(std::complex<T> term) {
    re_.add(term.real());
    im_.add(term.imag());
  }
  std::complex<T> value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum<T> re_;
  CompensatedSum<T> im_;
};

}  // namespace padicmub
