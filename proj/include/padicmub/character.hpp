#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <ostream>
#include <string>

#include "padicmub/errors.hpp"
#include "padicmub/integer.hpp"
#include "padicmub/padic.hpp"

namespace padicmub {

/// exp(2πi q) for an exact q in Q/Z with p-power denominator. Phases stay
/// exact through all algebra and become complex numbers only at the end.
class UnitPhase {
 public:
  UnitPhase() = default;
  explicit UnitPhase(const PFraction& q) : q_(q) {}

  /// (m mod p^n) / p^n.
  static UnitPhase of(std::int64_t p, std::uint64_t m, std::int64_t n) {
    return UnitPhase(PFraction::make(p, m, n));
  }

  const PFraction& fraction() const { return q_; }
  bool is_trivial() const { return q_.is_zero(); }
  std::string to_string() const { return q_.to_string(); }

  friend bool operator==(const UnitPhase&, const UnitPhase&) = default;

  /// Phase of the product e(x) e(y): exact addition mod 1.
  friend UnitPhase operator+(const UnitPhase& a, const UnitPhase& b) {
    if (a.is_trivial()) return b;
    if (b.is_trivial()) return a;
    if (a.q_.prime() != b.q_.prime()) throw InvalidArgument("phases with different primes");
    const std::int64_t p = a.q_.prime();
    const std::int64_t n = std::max(a.q_.exponent(), b.q_.exponent());
    const std::uint64_t modulus = checked_pow(static_cast<std::uint64_t>(p), n);
    const std::uint64_t ma = mulmod(a.q_.numerator(), checked_pow(p, n - a.q_.exponent()), modulus);
    const std::uint64_t mb = mulmod(b.q_.numerator(), checked_pow(p, n - b.q_.exponent()), modulus);
    return of(p, static_cast<std::uint64_t>((static_cast<uint128>(ma) + mb) % modulus), n);
  }
  /// Phase of the complex conjugate.
  friend UnitPhase operator-(const UnitPhase& a) {
    if (a.is_trivial()) return a;
    return of(a.q_.prime(), a.q_.denominator() - a.q_.numerator(), a.q_.exponent());
  }
  friend UnitPhase operator-(const UnitPhase& a, const UnitPhase& b) { return a + (-b); }

  friend std::ostream& operator<<(std::ostream& os, const UnitPhase& q) { return os << q.to_string(); }

 private:
  PFraction q_;
};

/// e(x) = exp(2πi {x}); trivial on Z_p. Throws PrecisionError when {x} is not
/// determined by the digits x carries.
inline UnitPhase char_e(const PadicNumber& x) { return UnitPhase(fractional_part(x)); }

inline UnitPhase phase_mul(const UnitPhase& a, const UnitPhase& b) { return a + b; }

inline std::complex<double> phase_to_complex(const UnitPhase& q) {
  if (q.is_trivial()) return {1.0, 0.0};
  const auto& f = q.fraction();
  // Fold into [-1/2, 1/2] before scaling so the angle is as small as possible.
  const long double den = static_cast<long double>(f.denominator());
  long double t = static_cast<long double>(f.numerator()) / den;
  if (t > 0.5L) t -= 1.0L;
  const long double angle = 2.0L * std::numbers::pi_v<long double> * t;
  return {static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle))};
}

}  // namespace padicmub
