#pragma once

// Finite model of L^2(Q_p): functions on the ball p^{-r} Z_p that are constant
// on cosets of p^k Z_p. Cell X in [0, p^{r+k}) holds the coset of the
// representative x = X p^{-r}; cells are enumerated by ascending X and each
// carries Haar measure p^{-k}.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "padicmub/character.hpp"
#include "padicmub/errors.hpp"
#include "padicmub/gauss.hpp"
#include "padicmub/integer.hpp"
#include "padicmub/padic.hpp"
#include "padicmub/summation.hpp"

namespace padicmub {

inline constexpr std::uint64_t kDefaultCellCap = 100'000;

class Grid {
 public:
  Grid(std::int64_t p, std::int64_t r, std::int64_t k, std::uint64_t cap = kDefaultCellCap) : p_(p), r_(r), k_(k) {
    require_prime(p);
    if (r + k < 1) throw InvalidArgument("grid needs r + k >= 1");
    size_ = static_cast<std::size_t>(capped_pow(p, r + k, cap, "grid"));
  }

  std::int64_t prime() const { return p_; }
  std::int64_t r() const { return r_; }
  std::int64_t k() const { return k_; }
  std::size_t size() const { return size_; }
  double cell_measure() const { return std::pow(static_cast<double>(p_), static_cast<double>(-k_)); }
  /// Domain p^{-k} Z_p at resolution p^r Z_p: where Fourier transforms land.
  Grid dual() const { return Grid(p_, k_, r_, size_); }

  /// x = index * p^{-r}, exact, carrying `digits` significant digits.
  PadicNumber representative(std::size_t index, std::int64_t digits) const {
    std::vector<PadicNumber::Digit> d;
    for (std::size_t i = index; i != 0; i /= static_cast<std::size_t>(p_)) {
      d.push_back(static_cast<PadicNumber::Digit>(i % static_cast<std::size_t>(p_)));
    }
    std::size_t leading = 0;
    while (leading < d.size() && d[leading] == 0) ++leading;
    d.resize(std::max<std::size_t>(d.size(), leading + static_cast<std::size_t>(std::max<std::int64_t>(digits, 1))), 0);
    return PadicNumber::from_digits(p_, -r_, std::move(d));
  }

  /// Index of the cell containing x, which must lie in p^{-r} Z_p.
  std::size_t index_of(const PadicNumber& x) const {
    if (x.valuation() < Valuation(-r_)) throw InvalidArgument("point " + x.to_string() + " lies outside the grid");
    return static_cast<std::size_t>(x.residue(r_, r_ + k_));
  }

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.p_ == b.p_ && a.r_ == b.r_ && a.k_ == b.k_;
  }

 private:
  std::int64_t p_, r_, k_;
  std::size_t size_ = 0;
};

inline Grid make_grid(std::int64_t p, std::int64_t r, std::int64_t k, std::uint64_t cap = kDefaultCellCap) {
  return Grid(p, r, k, cap);
}

struct StateVector {
  Grid grid;
  std::vector<std::complex<double>> amplitudes;

  double norm_squared() const {
    CompensatedSum<double> s;
    for (const auto& z : amplitudes) s.add(std::norm(z));
    return s.value() * grid.cell_measure();
  }
  double norm() const { return std::sqrt(norm_squared()); }
};

inline StateVector to_state(const Grid& grid, std::span<const UnitPhase> phases, double scale = 1.0) {
  StateVector v{grid, std::vector<std::complex<double>>(phases.size())};
  for (std::size_t i = 0; i < phases.size(); ++i) v.amplitudes[i] = scale * phase_to_complex(phases[i]);
  return v;
}

/// Haar-weighted pairing ∫ conj(u) w dx.
inline std::complex<double> inner(const StateVector& u, const StateVector& w) {
  if (!(u.grid == w.grid)) throw InvalidArgument("inner product of states on different grids");
  CompensatedSum<std::complex<double>> s;
  for (std::size_t i = 0; i < u.amplitudes.size(); ++i) s.add(std::conj(u.amplitudes[i]) * w.amplitudes[i]);
  return s.value() * u.grid.cell_measure();
}

// ---------------------------------------------------------------------------
// Resolution bookkeeping.

constexpr std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

/// Smallest k for which e(a x^2 + b x) is constant on every p^k-coset inside
/// p^{-r} Z_p: 2axh + ah^2 + bh in Z_p for all h in p^k Z_p.
inline std::int64_t cell_constancy_resolution(const Valuation& va, const Valuation& vb, std::int64_t r) {
  std::int64_t k = std::numeric_limits<std::int64_t>::min();
  if (va.is_finite()) k = std::max({k, r - va.value(), ceil_div(-va.value(), 2)});
  if (vb.is_finite()) k = std::max(k, -vb.value());
  return k;
}

/// Resolution used for states and pairings: max(2r - v(a), r - v(b), 0), the
/// bound that also makes the grid sum coincide with the Gauss-integral
/// reduction, and never below cell_constancy_resolution (which it only
/// exceeds when r < 0).
inline std::int64_t required_resolution(const Valuation& va, const Valuation& vb, std::int64_t r) {
  std::int64_t k = 0;
  if (va.is_finite()) k = std::max(k, 2 * r - va.value());
  if (vb.is_finite()) k = std::max(k, r - vb.value());
  return std::max(k, cell_constancy_resolution(va, vb, r));
}

inline std::int64_t required_resolution(const PadicNumber& a, const PadicNumber& b, std::int64_t r) {
  return required_resolution(a.valuation(), b.valuation(), r);
}

/// Absolute p-adic precision that parameters need for exact phase evaluation
/// on a grid: a x^2 with v(x) >= -r requires a mod p^{2r}, plus headroom for
/// products of parameters such as a c^2.
inline std::int64_t working_precision(const Grid& grid) {
  return 4 * std::max<std::int64_t>(grid.r(), 0) + 2 * std::max<std::int64_t>(grid.k(), 0) + 4;
}

// ---------------------------------------------------------------------------
// The states.

namespace grid_detail {

inline std::int64_t representative_digits(const Grid& grid, std::initializer_list<const PadicNumber*> params) {
  std::int64_t n = 2 * std::abs(grid.r()) + std::abs(grid.k()) + 2;
  for (const PadicNumber* q : params) n = std::max(n, q->precision());
  return n;
}

/// e(a x^2 + b x) at every representative.
inline std::vector<UnitPhase> quadratic_phases(const PadicNumber& a, const PadicNumber& b, const Grid& grid) {
  const std::int64_t digits = representative_digits(grid, {&a, &b});
  std::vector<UnitPhase> phases(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const PadicNumber x = grid.representative(i, digits);
    PadicNumber arg = PadicNumber::zero(grid.prime());
    if (!a.is_zero()) arg = arg + a * x * x;
    if (!b.is_zero()) arg = arg + b * x;
    phases[i] = char_e(arg);
  }
  return phases;
}

inline void require_prime_match(const PadicNumber& x, const Grid& grid) {
  if (x.prime() != grid.prime()) throw InvalidArgument("parameter and grid use different primes");
}

}  // namespace grid_detail

/// Exact phases of |v(a,b;r)> = ∫_{p^{-r}Z_p} e(a x^2 + b x) |x> dx.
inline std::vector<UnitPhase> vector_v_phases(const PadicNumber& a, const PadicNumber& b, const Grid& grid) {
  grid_detail::require_prime_match(a, grid);
  grid_detail::require_prime_match(b, grid);
  const std::int64_t need = required_resolution(a, b, grid.r());
  if (grid.k() < need) {
    throw ResolutionError("v(a,b) needs resolution k >= " + std::to_string(need) + ", grid has k = " +
                          std::to_string(grid.k()));
  }
  return grid_detail::quadratic_phases(a, b, grid);
}

inline StateVector vector_v(const PadicNumber& a, const PadicNumber& b, const Grid& grid) {
  return to_state(grid, vector_v_phases(a, b, grid));
}

/// Height-h indicator of the ball center + p^ball Z_p.
inline StateVector ball_state(const PadicNumber& center, std::int64_t ball, double height, const Grid& grid) {
  grid_detail::require_prime_match(center, grid);
  if (ball < -grid.r()) throw InvalidArgument("ball p^" + std::to_string(ball) + "Z_p is larger than the grid domain");
  if (grid.k() < ball) {
    throw ResolutionError("ball p^" + std::to_string(ball) + "Z_p is finer than grid resolution k = " +
                          std::to_string(grid.k()));
  }
  if (center.valuation() < Valuation(-grid.r())) throw InvalidArgument("ball center lies outside the grid");
  // x in center + p^ball Z_p  <=>  X = center p^r (mod p^{r+ball}).
  const std::uint64_t period = checked_pow(static_cast<std::uint64_t>(grid.prime()), grid.r() + ball);
  const std::uint64_t offset = center.residue(grid.r(), grid.r() + ball);
  StateVector v{grid, std::vector<std::complex<double>>(grid.size(), 0.0)};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i % period == offset) v.amplitudes[i] = height;
  }
  return v;
}

/// |v(inf,b;r)> = p^r ∫_{p^r Z_p} |x - b> dx: height p^r on -b + p^r Z_p.
/// `ball` defaults to grid.r(); other values serve the dual grids of Fourier
/// transforms.
inline StateVector vector_v_inf(const PadicNumber& b, const Grid& grid, std::optional<std::int64_t> ball = {}) {
  const std::int64_t e = ball.value_or(grid.r());
  return ball_state(-b, e, std::pow(static_cast<double>(grid.prime()), static_cast<double>(e)), grid);
}

// ---------------------------------------------------------------------------
// Fourier transform psi^(y) = ∫ psi(x) e(x y) dx, Grid(p,r,k) -> Grid(p,k,r).

namespace grid_detail {

/// In-place-free radix-p transform: out[Y] = Σ_X in[X] roots[(X Y) mod n].
inline void radix_p_dft(std::span<const std::complex<double>> in, std::size_t stride, std::size_t n, std::size_t p,
                        std::span<const std::complex<double>> roots, std::span<std::complex<double>> out) {
  if (n == 1) {
    out[0] = in[0];
    return;
  }
  const std::size_t sub = n / p;
  const std::size_t root_step = roots.size() / n;
  std::vector<std::complex<double>> parts(n);
  for (std::size_t j = 0; j < p; ++j) {
    radix_p_dft(in.subspan(j * stride), stride * p, sub, p, roots, std::span(parts).subspan(j * sub, sub));
  }
  for (std::size_t y = 0; y < n; ++y) {
    std::complex<double> acc = parts[y % sub];
    for (std::size_t j = 1; j < p; ++j) acc += roots[(j * y % n) * root_step] * parts[j * sub + y % sub];
    out[y] = acc;
  }
}

inline StateVector transform(const StateVector& psi, int sign) {
  const Grid& grid = psi.grid;
  const std::size_t n = grid.size();
  const std::int64_t m = grid.r() + grid.k();
  std::vector<std::complex<double>> roots(n);
  for (std::size_t e = 0; e < n; ++e) {
    const auto z = phase_to_complex(UnitPhase::of(grid.prime(), e, m));
    roots[e] = sign > 0 ? z : std::conj(z);
  }
  StateVector out{grid.dual(), std::vector<std::complex<double>>(n)};
  radix_p_dft(psi.amplitudes, 1, n, static_cast<std::size_t>(grid.prime()), roots, out.amplitudes);
  const double measure = grid.cell_measure();
  for (auto& z : out.amplitudes) z *= measure;
  return out;
}

}  // namespace grid_detail

/// Forward transform with kernel e(+x y). For x = X p^{-r}, y = Y p^{-k} the
/// pairing is exp(2πi X Y / p^{r+k}), so this is a length-p^{r+k} DFT.
inline StateVector fourier(const StateVector& psi) { return grid_detail::transform(psi, +1); }

/// Inverse transform with kernel e(-x y); maps Grid(p,k,r) back to Grid(p,r,k).
inline StateVector inverse_fourier(const StateVector& psi_hat) { return grid_detail::transform(psi_hat, -1); }

/// Closed form of the transform of p^{r/2} 1(z + p^r Z_p): e(y z) p^{-r/2} on
/// p^{-r} Z_p and 0 elsewhere, sampled on `dual`.
inline StateVector fourier_ball_expected(const PadicNumber& z, std::int64_t ball, const Grid& dual) {
  StateVector v{dual, std::vector<std::complex<double>>(dual.size(), 0.0)};
  const double height = std::pow(static_cast<double>(dual.prime()), -static_cast<double>(ball) / 2.0);
  const std::int64_t digits = grid_detail::representative_digits(dual, {&z});
  for (std::size_t i = 0; i < dual.size(); ++i) {
    const PadicNumber y = dual.representative(i, digits);
    if (y.valuation() >= Valuation(-ball)) v.amplitudes[i] = height * phase_to_complex(char_e(y * z));
  }
  return v;
}

// ---------------------------------------------------------------------------
// Monomial unitaries: (U psi)[i] = e(phase[i]) psi[source[i]].

struct MonomialOperator {
  Grid grid;
  std::vector<std::size_t> source;
  std::vector<UnitPhase> phase;

  static MonomialOperator identity(const Grid& grid) {
    MonomialOperator u{grid, std::vector<std::size_t>(grid.size()), std::vector<UnitPhase>(grid.size())};
    for (std::size_t i = 0; i < grid.size(); ++i) u.source[i] = i;
    return u;
  }

  StateVector apply(const StateVector& psi) const {
    if (!(psi.grid == grid)) throw InvalidArgument("operator and state on different grids");
    StateVector out{grid, std::vector<std::complex<double>>(grid.size())};
    for (std::size_t i = 0; i < grid.size(); ++i) out.amplitudes[i] = phase_to_complex(phase[i]) * psi.amplitudes[source[i]];
    return out;
  }

  /// Exact action on a unimodular state given by its phases.
  std::vector<UnitPhase> apply_phases(std::span<const UnitPhase> psi) const {
    if (psi.size() != grid.size()) throw InvalidArgument("phase vector does not match the grid");
    std::vector<UnitPhase> out(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) out[i] = phase[i] + psi[source[i]];
    return out;
  }

  /// Composition U * V = "apply V, then U".
  friend MonomialOperator operator*(const MonomialOperator& u, const MonomialOperator& v) {
    if (!(u.grid == v.grid)) throw InvalidArgument("composing operators on different grids");
    MonomialOperator w{u.grid, std::vector<std::size_t>(u.grid.size()), std::vector<UnitPhase>(u.grid.size())};
    for (std::size_t i = 0; i < u.grid.size(); ++i) {
      w.source[i] = v.source[u.source[i]];
      w.phase[i] = u.phase[i] + v.phase[u.source[i]];
    }
    return w;
  }
};

/// X_c: |y> -> |y + c>, i.e. (X_c psi)(x) = psi(x - c). Needs c in p^{-r} Z_p.
inline MonomialOperator translation(const PadicNumber& c, const Grid& grid) {
  grid_detail::require_prime_match(c, grid);
  if (c.valuation() < Valuation(-grid.r())) {
    throw InvalidArgument("X_c needs v(c) >= -r; got v(c) = " + c.valuation().to_string());
  }
  const std::size_t shift = grid.index_of(c);
  MonomialOperator u = MonomialOperator::identity(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) u.source[i] = (i + grid.size() - shift) % grid.size();
  return u;
}

/// Z_d: |y> -> e(y d)|y>. Needs v(d) >= -k so the phase is constant on cells.
inline MonomialOperator modulation(const PadicNumber& d, const Grid& grid) {
  grid_detail::require_prime_match(d, grid);
  if (d.valuation() < Valuation(-grid.k())) {
    throw ResolutionError("Z_d needs v(d) >= -k; got v(d) = " + d.valuation().to_string());
  }
  MonomialOperator u = MonomialOperator::identity(grid);
  u.phase = grid_detail::quadratic_phases(PadicNumber::zero(grid.prime()), d, grid);
  return u;
}

/// P_d: |x> -> e(d x^2)|x>. Needs v(d) >= r - k and 2k >= -v(d).
inline MonomialOperator chirp(const PadicNumber& d, const Grid& grid) {
  grid_detail::require_prime_match(d, grid);
  const std::int64_t need = cell_constancy_resolution(d.valuation(), Valuation::infinity(), grid.r());
  if (grid.k() < need) {
    throw ResolutionError("P_d needs resolution k >= " + std::to_string(need) + ", grid has k = " +
                          std::to_string(grid.k()));
  }
  MonomialOperator u = MonomialOperator::identity(grid);
  u.phase = grid_detail::quadratic_phases(d, PadicNumber::zero(grid.prime()), grid);
  return u;
}

struct EigenReport {
  UnitPhase expected_phase;  // e(-b c - a c^2)
  double measured_phase = 0.0;  // arg <v|U v> / 2π, in [0, 1)
  double residual = 0.0;  // |U v - e(expected) v| / |v|
  bool exact_match = false;  // phase-level identity holds at every cell
};

/// Checks X_c Z_{2ac} v(a,b) = e(-bc - ac^2) v(a,b) on the grid.
inline EigenReport eigen_check(const PadicNumber& a, const PadicNumber& b, const PadicNumber& c, const Grid& grid) {
  const std::int64_t p = grid.prime();
  const PadicNumber two = PadicNumber::from_rational(2, 1, p, std::max<std::int64_t>({a.precision(), c.precision(), 1}));
  const MonomialOperator u = translation(c, grid) * modulation(two * a * c, grid);
  const std::vector<UnitPhase> psi = vector_v_phases(a, b, grid);

  EigenReport report;
  report.expected_phase = char_e(-(b * c) - a * c * c);
  const std::vector<UnitPhase> image = u.apply_phases(psi);
  report.exact_match = true;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    if (!(image[i] == psi[i] + report.expected_phase)) report.exact_match = false;
  }

  const StateVector v = to_state(grid, psi);
  const StateVector uv = u.apply(v);
  const std::complex<double> lambda = phase_to_complex(report.expected_phase);
  StateVector diff{grid, std::vector<std::complex<double>>(grid.size())};
  for (std::size_t i = 0; i < grid.size(); ++i) diff.amplitudes[i] = uv.amplitudes[i] - lambda * v.amplitudes[i];
  report.residual = diff.norm() / v.norm();
  double turns = std::arg(inner(v, uv)) / (2.0 * std::numbers::pi);
  if (turns < 0) turns += 1.0;
  report.measured_phase = turns >= 1.0 ? 0.0 : turns;
  return report;
}

// ---------------------------------------------------------------------------
// Gram tables for families of V_a^{(r)} and V_inf^{(r)} samples.

struct BasisParam {
  std::optional<Rational> a;  // empty: the V_inf family
  Rational b;

  bool is_infinite() const { return !a.has_value(); }
  std::string family() const { return a ? a->to_string() : "inf"; }
};

/// a in {0, ..., p-1, inf}, each with every b sample.
inline std::vector<BasisParam> canonical_params(std::int64_t p, const std::vector<Rational>& b_samples) {
  std::vector<BasisParam> params;
  for (std::int64_t a = 0; a <= p; ++a) {
    for (const Rational& b : b_samples) {
      params.push_back(a < p ? BasisParam{Rational(a), b} : BasisParam{std::nullopt, b});
    }
  }
  return params;
}

inline std::vector<Rational> default_b_samples(std::int64_t p) {
  std::vector<Rational> b;
  for (std::int64_t i = 0; i < p; ++i) b.emplace_back(i);
  return b;
}

struct GramOptions {
  double tolerance = 1e-9;
  bool auto_raise = true;
  std::uint64_t cell_cap = kDefaultCellCap;
};

struct GramEntry {
  std::size_t i;
  std::size_t j;
  double modulus;
  std::optional<PPower> closed;  // empty: r at or below the pair's threshold
  double deviation;  // |modulus - closed|, 0 when uncertified
};

struct GramReport {
  std::int64_t p = 0;
  std::int64_t requested_r = 0;
  std::int64_t r = 0;
  std::int64_t k = 0;
  std::int64_t certified_from_r = 0;  // smallest r certifying every pair
  std::vector<BasisParam> params;
  std::vector<GramEntry> entries;  // all i <= j
  double max_deviation = 0.0;
  bool all_certified = false;
  bool families_orthogonal = false;  // each family's sample Gram is p^r I
  bool pass = false;
};

namespace grid_detail {

inline Valuation v_of(const Rational& q, std::int64_t p) { return q.valuation(p); }

/// Smallest r at which the closed-form modulus of <u|w> is guaranteed.
inline std::optional<std::int64_t> pair_min_r(const BasisParam& u, const BasisParam& w, std::int64_t p) {
  std::optional<std::int64_t> need;
  auto at_least = [&](std::int64_t r) { need = need ? std::max(*need, r) : r; };
  if (!u.is_infinite() && !w.is_infinite()) {
    const Threshold t = threshold_t(v_of(*u.a - *w.a, p), v_of(u.b - w.b, p));
    if (t.value) at_least(*t.value + 1);
  } else if (u.is_infinite() && w.is_infinite()) {
    const Valuation vb = v_of(u.b - w.b, p);
    if (vb.is_finite()) at_least(vb.value() + 1);
  } else {
    // Ball -b' + p^r Z_p against e(a x^2 + b x): unimodular once
    // r >= max(-v(2ac + b), -v(a)/2) with c = -b'.
    const BasisParam& ball = u.is_infinite() ? u : w;
    const BasisParam& wave = u.is_infinite() ? w : u;
    const Valuation lin = v_of(Rational(2) * *wave.a * (-ball.b) + wave.b, p);
    const Valuation va = v_of(*wave.a, p);
    if (lin.is_finite()) at_least(-lin.value());
    if (va.is_finite()) at_least(ceil_div(-va.value(), 2));
  }
  return need;
}

inline std::optional<std::int64_t> vector_min_r(const BasisParam& u, std::int64_t p) {
  if (!u.is_infinite()) return std::nullopt;
  // The ball -b + p^r Z_p must fit inside p^{-r} Z_p.
  const Valuation vb = v_of(u.b, p);
  return vb.is_finite() ? std::max<std::int64_t>(0, -vb.value()) : 0;
}

inline std::optional<PPower> closed_modulus(const BasisParam& u, const BasisParam& w, std::int64_t p, std::int64_t r) {
  if (u.is_infinite() != w.is_infinite()) return PPower::power(p, 0);
  if (u.is_infinite() || *u.a == *w.a) return u.b == w.b ? PPower::power(p, r) : PPower::zero();
  return PPower::half(p, v_of(*u.a - *w.a, p).value());
}

}  // namespace grid_detail

/// Builds every sample state on one grid and tabulates |<u|w>| against the
/// closed forms. Pairs whose threshold exceeds r are reported but not
/// asserted; with auto_raise, r is lifted until every pair is certified.
inline GramReport gram_report(std::int64_t p, const std::vector<BasisParam>& params, std::int64_t r,
                              const GramOptions& options = {}) {
  require_prime(p);
  if (p == 2) throw LemmaHypothesisError("p-adic MUB Gram report");
  if (params.empty()) throw InvalidArgument("gram_report: no basis parameters");

  std::vector<std::optional<std::int64_t>> pair_need;
  std::int64_t needed = std::numeric_limits<std::int64_t>::min();
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (auto v = grid_detail::vector_min_r(params[i], p)) needed = std::max(needed, *v);
    for (std::size_t j = i; j < params.size(); ++j) {
      pair_need.push_back(grid_detail::pair_min_r(params[i], params[j], p));
      if (pair_need.back()) needed = std::max(needed, *pair_need.back());
    }
  }

  GramReport report;
  report.p = p;
  report.requested_r = r;
  report.certified_from_r = needed == std::numeric_limits<std::int64_t>::min() ? r : needed;
  report.params = params;
  if (options.auto_raise) r = std::max(r, needed);
  for (const auto& u : params) {
    if (auto v = grid_detail::vector_min_r(u, p); v && r < *v) {
      throw InvalidArgument("V_inf sample b = " + u.b.to_string() + " is not representable at r = " + std::to_string(r));
    }
  }
  report.r = r;

  std::int64_t k = 0;
  for (std::size_t i = 0; i < params.size(); ++i) {
    const auto& u = params[i];
    if (u.is_infinite()) {
      k = std::max(k, r);
    } else {
      k = std::max(k, required_resolution(grid_detail::v_of(*u.a, p), grid_detail::v_of(u.b, p), r));
    }
    for (std::size_t j = i + 1; j < params.size(); ++j) {
      const auto& w = params[j];
      if (u.is_infinite() || w.is_infinite()) continue;
      k = std::max(k, required_resolution(grid_detail::v_of(*u.a - *w.a, p), grid_detail::v_of(u.b - w.b, p), r));
    }
  }
  if (r + k < 1) k = 1 - r;
  report.k = k;
  const Grid grid(p, r, k, options.cell_cap);

  const std::int64_t precision = working_precision(grid);
  std::vector<StateVector> states;
  states.reserve(params.size());
  for (const auto& u : params) {
    const PadicNumber b = PadicNumber::with_absolute_precision(u.b, p, precision);
    states.push_back(u.is_infinite() ? vector_v_inf(b, grid)
                                     : vector_v(PadicNumber::with_absolute_precision(*u.a, p, precision), b, grid));
  }

  report.all_certified = true;
  report.families_orthogonal = true;
  report.pass = true;
  std::size_t pair = 0;
  for (std::size_t i = 0; i < params.size(); ++i) {
    for (std::size_t j = i; j < params.size(); ++j, ++pair) {
      GramEntry e{i, j, std::abs(inner(states[i], states[j])), std::nullopt, 0.0};
      const bool certified = !pair_need[pair] || r >= *pair_need[pair];
      if (certified) {
        e.closed = grid_detail::closed_modulus(params[i], params[j], p, r);
        e.deviation = std::abs(e.modulus - e.closed->to_double());
        report.max_deviation = std::max(report.max_deviation, e.deviation);
        if (e.deviation > options.tolerance) report.pass = false;
      } else {
        report.all_certified = false;
      }
      if (params[i].family() == params[j].family() && (!certified || e.deviation > options.tolerance)) {
        report.families_orthogonal = false;
      }
      report.entries.push_back(e);
    }
  }
  return report;
}

}  // namespace padicmub
