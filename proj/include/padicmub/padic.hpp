#pragma once

// Truncated-precision arithmetic in Q_p.
//
// A nonzero value is p^v * (d_0 + d_1 p + ... + d_{N-1} p^{N-1}) with d_0 != 0;
// it is known modulo p^{v+N}, its absolute precision. Precision propagation:
//   * mul, inv: N_result = min(N_x, N_y); valuations add (inv negates).
//   * add, sub: absolute precision is min(abs_x, abs_y), so in the common case
//     N_result = min(N_x, N_y). Leading-digit cancellation strips zeros and
//     shrinks N accordingly. Full cancellation produces a zero that still
//     remembers the absolute precision it is known to, so consumers that need
//     more digits (fractional_part, residue) fail instead of reading padding.
// Values built from rationals or digit strings with no cancellation history
// are exact zeros.

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "padicmub/errors.hpp"
#include "padicmub/integer.hpp"

namespace padicmub {

/// Exact m / p^n with 0 <= m < p^n, reduced (p does not divide m unless m = 0,
/// in which case n = 0). This is an element of Q/Z with p-power denominator.
class PFraction {
 public:
  PFraction() = default;

  /// Builds (m mod p^n) / p^n and reduces it.
  static PFraction make(std::int64_t p, std::uint64_t m, std::int64_t n) {
    if (n < 0) throw InvalidArgument("PFraction: negative denominator exponent");
    PFraction f;
    f.p_ = p;
    f.m_ = m % checked_pow(static_cast<std::uint64_t>(p), n);
    f.n_ = n;
    f.reduce();
    return f;
  }

  std::int64_t prime() const { return p_; }
  std::uint64_t numerator() const { return m_; }
  std::int64_t exponent() const { return n_; }
  std::uint64_t denominator() const { return checked_pow(static_cast<std::uint64_t>(p_), n_); }
  bool is_zero() const { return m_ == 0; }

  double to_double() const {
    return static_cast<double>(m_) / static_cast<double>(denominator());
  }

  /// "m/p^n", or "0".
  std::string to_string() const {
    if (m_ == 0) return "0";
    return std::to_string(m_) + "/" + std::to_string(p_) + "^" + std::to_string(n_);
  }

  friend bool operator==(const PFraction& a, const PFraction& b) {
    if (a.m_ == 0 || b.m_ == 0) return a.m_ == b.m_;
    return a.p_ == b.p_ && a.m_ == b.m_ && a.n_ == b.n_;
  }
  friend std::ostream& operator<<(std::ostream& os, const PFraction& f) {
    return os << f.to_string();
  }

 private:
  void reduce() {
    if (m_ == 0) {
      n_ = 0;
      return;
    }
    const auto p = static_cast<std::uint64_t>(p_);
    while (n_ > 0 && m_ % p == 0) {
      m_ /= p;
      --n_;
    }
  }

  std::int64_t p_ = 0;
  std::uint64_t m_ = 0;
  std::int64_t n_ = 0;
};

/// Exact value p^{e/2} (half-integer exponent allowed) or exactly zero. Used for
/// p-adic norms and the closed-form norms of Gauss sums and integrals.
class PPower {
 public:
  static PPower zero() { return PPower(); }
  static PPower half(std::int64_t p, std::int64_t twice_exponent) {
    PPower x;
    x.p_ = p;
    x.twice_exponent_ = twice_exponent;
    x.zero_ = false;
    return x;
  }
  static PPower power(std::int64_t p, std::int64_t exponent) { return half(p, 2 * exponent); }

  bool is_zero() const { return zero_; }
  std::int64_t prime() const { return p_; }
  std::int64_t twice_exponent() const { return twice_exponent_; }

  double to_double() const {
    if (zero_) return 0.0;
    return std::pow(static_cast<double>(p_), static_cast<double>(twice_exponent_) / 2.0);
  }

  /// The exact square as an integer, when it is one (exponent >= 0).
  std::optional<std::uint64_t> squared_integer() const {
    if (zero_) return 0;
    if (twice_exponent_ < 0) return std::nullopt;
    return checked_pow(static_cast<std::uint64_t>(p_), twice_exponent_);
  }

  /// "3^{1/2}", "5^{-2}", "0".
  std::string to_string() const {
    if (zero_) return "0";
    std::string e;
    if (twice_exponent_ % 2 == 0) {
      e = std::to_string(twice_exponent_ / 2);
    } else {
      e = std::to_string(twice_exponent_) + "/2";
    }
    return std::to_string(p_) + "^{" + e + "}";
  }

  friend bool operator==(const PPower& a, const PPower& b) {
    if (a.zero_ || b.zero_) return a.zero_ == b.zero_;
    return a.p_ == b.p_ && a.twice_exponent_ == b.twice_exponent_;
  }
  /// Ordering by magnitude; both operands must share the prime unless one is zero.
  friend std::strong_ordering operator<=>(const PPower& a, const PPower& b) {
    if (a.zero_ || b.zero_) return b.zero_ <=> a.zero_;
    if (a.p_ != b.p_) throw InvalidArgument("comparing powers of different primes");
    return a.twice_exponent_ <=> b.twice_exponent_;
  }
  friend PPower operator*(const PPower& a, const PPower& b) {
    if (a.zero_ || b.zero_) return zero();
    if (a.p_ != b.p_) throw InvalidArgument("multiplying powers of different primes");
    return half(a.p_, a.twice_exponent_ + b.twice_exponent_);
  }
  friend std::ostream& operator<<(std::ostream& os, const PPower& x) { return os << x.to_string(); }

 private:
  PPower() = default;
  std::int64_t p_ = 0;
  std::int64_t twice_exponent_ = 0;
  bool zero_ = true;
};

class PadicNumber {
 public:
  using Digit = std::uint32_t;

  static PadicNumber zero(std::int64_t p) {
    require_prime(p);
    PadicNumber z;
    z.p_ = p;
    return z;
  }

  static PadicNumber from_rational(std::int64_t num, std::int64_t den, std::int64_t p,
                                   std::int64_t precision) {
    if (den == 0) throw InvalidArgument("from_rational: zero denominator");
    require_prime(p);
    if (precision < 1) throw InvalidArgument("from_rational: precision must be >= 1");
    if (num == 0) return zero(p);

    int128 n = num, d = den;
    std::int64_t v = 0;
    while (n % p == 0) {
      n /= p;
      ++v;
    }
    while (d % p == 0) {
      d /= p;
      --v;
    }
    const std::int64_t d_inv = inverse_mod_prime(static_cast<std::int64_t>(d % p), p);
    std::vector<Digit> digits;
    digits.reserve(static_cast<std::size_t>(precision));
    // n/d = c + p * (n - c d)/(p d): peel one digit at a time. |n| stays
    // bounded by max(|num|, |den|) so 128-bit intermediates cannot overflow.
    for (std::int64_t j = 0; j < precision; ++j) {
      int128 c = (n % p) * d_inv % p;
      if (c < 0) c += p;
      digits.push_back(static_cast<Digit>(c));
      n = (n - c * d) / p;
    }
    return from_digits(p, v, std::move(digits));
  }

  static PadicNumber from_rational(const Rational& q, std::int64_t p, std::int64_t precision) {
    return from_rational(q.num(), q.den(), p, precision);
  }

  /// Significant-digit count chosen so the value is known modulo p^{absolute}.
  static PadicNumber with_absolute_precision(const Rational& q, std::int64_t p,
                                             std::int64_t absolute) {
    const Valuation v = q.valuation(p);
    if (v.is_infinite()) return zero(p);
    return from_rational(q, p, std::max<std::int64_t>(1, absolute - v.value()));
  }

  /// Normalizes leading zero digits into the valuation. An all-zero list is exact zero.
  static PadicNumber from_digits(std::int64_t p, std::int64_t valuation, std::vector<Digit> digits) {
    require_prime(p);
    for (Digit d : digits) {
      if (d >= p) throw InvalidArgument("digit out of range for p = " + std::to_string(p));
    }
    const auto first = std::find_if(digits.begin(), digits.end(), [](Digit d) { return d != 0; });
    PadicNumber x;
    x.p_ = p;
    if (first == digits.end()) return x;
    x.valuation_ = valuation + (first - digits.begin());
    x.digits_.assign(first, digits.end());
    return x;
  }

  /// Parses "num/den" (or an integer) at the given precision, or a digit
  /// string "d0 d1 ... * p^v" whose precision is its digit count.
  static PadicNumber parse(std::string_view text, std::int64_t p, std::int64_t precision) {
    const auto star = text.find('*');
    if (star == std::string_view::npos) return from_rational(Rational::parse(trim(text)), p, precision);

    std::istringstream digit_stream{std::string(text.substr(0, star))};
    std::vector<Digit> digits;
    long long d = 0;
    while (digit_stream >> d) {
      if (d < 0 || d >= p) throw InvalidArgument("digit out of range in '" + std::string(text) + "'");
      digits.push_back(static_cast<Digit>(d));
    }
    if (!digit_stream.eof() || digits.empty()) {
      throw InvalidArgument("cannot parse digit string '" + std::string(text) + "'");
    }
    std::string power;
    for (char c : text.substr(star + 1)) {
      if (c != ' ' && c != '{' && c != '}') power.push_back(c);
    }
    const auto caret = power.find('^');
    try {
      if (caret == std::string::npos || std::stoll(power.substr(0, caret)) != p) {
        throw InvalidArgument("expected '* " + std::to_string(p) + "^v' in '" + std::string(text) + "'");
      }
      std::size_t used = 0;
      const std::int64_t v = std::stoll(power.substr(caret + 1), &used);
      if (used != power.size() - caret - 1) throw InvalidArgument("trailing characters");
      return from_digits(p, v, std::move(digits));
    } catch (const InvalidArgument&) {
      throw;
    } catch (const std::exception&) {
      throw InvalidArgument("cannot parse exponent in '" + std::string(text) + "'");
    }
  }

  std::int64_t prime() const { return p_; }
  bool is_zero() const { return digits_.empty(); }
  Valuation valuation() const { return is_zero() ? Valuation::infinity() : Valuation(valuation_); }
  std::span<const Digit> digits() const { return digits_; }
  /// Number of significant digits N (0 for zero).
  std::int64_t precision() const { return static_cast<std::int64_t>(digits_.size()); }
  /// The value is known modulo p^{absolute_precision()}; +inf for exact zero.
  Valuation absolute_precision() const {
    if (is_zero()) return zero_precision_;
    return valuation_ + precision();
  }

  /// Integer in [0, p^m) congruent to x * p^shift modulo p^m.
  std::uint64_t residue(std::int64_t shift, std::int64_t m) const {
    if (m < 0) throw InvalidArgument("residue: negative modulus exponent");
    if (absolute_precision() < Valuation(m - shift)) {
      throw PrecisionError("residue: value known modulo p^" + absolute_precision().to_string() +
                           " but p^" + std::to_string(m - shift) + " needed");
    }
    if (is_zero() || m == 0) return 0;
    const std::int64_t w = valuation_ + shift;
    if (w < 0) throw InvalidArgument("residue: x * p^shift is not a p-adic integer");
    const std::uint64_t modulus = checked_pow(static_cast<std::uint64_t>(p_), m);
    std::uint64_t result = 0;
    for (std::int64_t j = precision() - 1; j >= 0; --j) {
      if (w + j >= m) continue;
      result = (result * static_cast<std::uint64_t>(p_) + digits_[static_cast<std::size_t>(j)]) % modulus;
    }
    // Horner above stopped at digit 0, i.e. at p^w.
    return mulmod(result, checked_pow(static_cast<std::uint64_t>(p_), std::min(w, m)), modulus);
  }

  /// Σ d_j p^{v+j} as an exact rational, when it fits in 64 bits.
  Rational truncated_value() const {
    if (is_zero()) return Rational(0);
    Rational acc(0);
    Rational scale = valuation_ >= 0 ? Rational(static_cast<std::int64_t>(checked_pow(p_, valuation_)))
                                     : Rational(1, static_cast<std::int64_t>(checked_pow(p_, -valuation_)));
    for (Digit d : digits_) {
      acc = acc + scale * Rational(d);
      scale = scale * Rational(p_);
    }
    return acc;
  }

  /// "d0 d1 ... * p^v", or "0".
  std::string to_string() const {
    if (is_zero()) return "0";
    std::string s;
    for (Digit d : digits_) s += std::to_string(d) + " ";
    return s + "* " + std::to_string(p_) + "^" + std::to_string(valuation_);
  }

  friend bool operator==(const PadicNumber& a, const PadicNumber& b) {
    return a.p_ == b.p_ && a.is_zero() == b.is_zero() &&
           (a.is_zero() || (a.valuation_ == b.valuation_ && a.digits_ == b.digits_));
  }
  friend std::ostream& operator<<(std::ostream& os, const PadicNumber& x) { return os << x.to_string(); }

  friend PadicNumber operator-(const PadicNumber& x) {
    if (x.is_zero()) return x;
    PadicNumber r = x;
    const auto p = static_cast<Digit>(x.p_);
    r.digits_[0] = p - x.digits_[0];
    for (std::size_t j = 1; j < r.digits_.size(); ++j) r.digits_[j] = p - 1 - x.digits_[j];
    return r;
  }

  friend PadicNumber operator+(const PadicNumber& x, const PadicNumber& y) {
    require_same_prime(x, y);
    const Valuation absolute = std::min(x.absolute_precision(), y.absolute_precision());
    if (x.is_zero() && y.is_zero()) return zero_known_to(x.p_, absolute);
    if (x.is_zero() || y.is_zero()) {
      PadicNumber r = x.is_zero() ? y : x;
      return r.truncate_to(absolute);
    }
    const std::int64_t v = std::min(x.valuation_, y.valuation_);
    const std::int64_t length = absolute.value() - v;
    std::vector<Digit> sum(static_cast<std::size_t>(length), 0);
    std::uint64_t carry = 0;
    for (std::int64_t j = 0; j < length; ++j) {
      const std::uint64_t t = x.digit_at(v + j) + y.digit_at(v + j) + carry;
      sum[static_cast<std::size_t>(j)] = static_cast<Digit>(t % static_cast<std::uint64_t>(x.p_));
      carry = t / static_cast<std::uint64_t>(x.p_);
    }
    PadicNumber r = from_digits(x.p_, v, std::move(sum));
    if (r.is_zero()) return zero_known_to(x.p_, absolute);
    return r;
  }
  friend PadicNumber operator-(const PadicNumber& x, const PadicNumber& y) { return x + (-y); }

  friend PadicNumber operator*(const PadicNumber& x, const PadicNumber& y) {
    require_same_prime(x, y);
    if (x.is_zero() || y.is_zero()) {
      // O(p^A) * y is O(p^{A + v(y)}); an exact zero absorbs everything.
      auto lower = [](const PadicNumber& z) { return z.is_zero() ? z.zero_precision_ : z.valuation(); };
      return zero_known_to(x.p_, lower(x) + lower(y));
    }
    const std::size_t n = std::min(x.digits_.size(), y.digits_.size());
    const auto p = static_cast<std::uint64_t>(x.p_);
    std::vector<Digit> prod(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t carry = 0;
      for (std::size_t j = 0; i + j < n; ++j) {
        const std::uint64_t t = prod[i + j] + static_cast<std::uint64_t>(x.digits_[i]) * y.digits_[j] + carry;
        prod[i + j] = static_cast<Digit>(t % p);
        carry = t / p;
      }
    }
    PadicNumber r;
    r.p_ = x.p_;
    r.valuation_ = x.valuation_ + y.valuation_;
    r.digits_ = std::move(prod);  // leading digit d0 * e0 mod p is nonzero
    return r;
  }

  friend PadicNumber inv(const PadicNumber& x) {
    if (x.is_zero()) throw InvalidArgument("inverse of zero");
    const std::size_t n = x.digits_.size();
    const auto p = static_cast<std::int64_t>(x.p_);
    const std::int64_t lead_inv = inverse_mod_prime(x.digits_[0], p);
    // Long division of 1 by the unit part: remainder starts at 1, each step
    // fixes one digit of the quotient and clears one digit of the remainder.
    std::vector<std::int64_t> rem(n, 0);
    rem[0] = 1;
    std::vector<Digit> quotient(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
      const std::int64_t q = mod_floor(mod_floor(rem[j], p) * lead_inv, p);
      quotient[j] = static_cast<Digit>(q);
      std::int64_t borrow = 0;
      for (std::size_t i = j; i < n; ++i) {
        std::int64_t t = rem[i] - q * static_cast<std::int64_t>(x.digits_[i - j]) - borrow;
        const std::int64_t digit = mod_floor(t, p);
        borrow = (digit - t) / p;
        rem[i] = digit;
      }
    }
    PadicNumber r;
    r.p_ = x.p_;
    r.valuation_ = -x.valuation_;
    r.digits_ = std::move(quotient);
    return r;
  }
  friend PadicNumber operator/(const PadicNumber& x, const PadicNumber& y) { return x * inv(y); }

 private:
  PadicNumber() = default;

  static std::string_view trim(std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    return s;
  }

  static void require_same_prime(const PadicNumber& x, const PadicNumber& y) {
    if (x.p_ != y.p_) throw InvalidArgument("mixed primes in p-adic arithmetic");
  }

  static PadicNumber zero_known_to(std::int64_t p, Valuation absolute) {
    PadicNumber z;
    z.p_ = p;
    z.zero_precision_ = absolute;
    return z;
  }

  std::uint64_t digit_at(std::int64_t power) const {
    const std::int64_t j = power - valuation_;
    if (j < 0 || j >= precision()) return 0;
    return digits_[static_cast<std::size_t>(j)];
  }

  PadicNumber truncate_to(Valuation absolute) const {
    if (absolute.is_infinite() || is_zero()) return *this;
    if (absolute.value() <= valuation_) return zero_known_to(p_, absolute);
    PadicNumber r = *this;
    r.digits_.resize(std::min<std::size_t>(digits_.size(), static_cast<std::size_t>(absolute.value() - valuation_)));
    return r;
  }

  std::int64_t p_ = 0;
  std::int64_t valuation_ = 0;
  std::vector<Digit> digits_;
  Valuation zero_precision_ = Valuation::infinity();
};

inline Valuation valuation(const PadicNumber& x) { return x.valuation(); }

/// |x|_p = p^{-v_p(x)}, exactly; 0 for zero.
inline PPower norm_p(const PadicNumber& x) {
  if (x.is_zero()) return PPower::zero();
  return PPower::power(x.prime(), -x.valuation().value());
}

/// {x} = Σ_{j<0} x_j p^j, the representative of x mod Z_p in [0, 1).
inline PFraction fractional_part(const PadicNumber& x) {
  if (x.absolute_precision() < Valuation(0)) {
    throw PrecisionError("fractional part needs x modulo Z_p but x is only known modulo p^" +
                         x.absolute_precision().to_string());
  }
  if (x.is_zero() || x.valuation().value() >= 0) return PFraction::make(x.prime(), 0, 0);
  const std::int64_t v = x.valuation().value();
  const auto p = static_cast<std::uint64_t>(x.prime());
  checked_pow(p, -v);  // the denominator must fit before the numerator is accumulated
  std::uint64_t m = 0;
  for (std::int64_t j = -v - 1; j >= 0; --j) m = m * p + x.digits()[static_cast<std::size_t>(j)];
  return PFraction::make(x.prime(), m, -v);
}

}  // namespace padicmub
