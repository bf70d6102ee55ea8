#pragma once

// Named verification sweeps. Each suite walks a fixed grid (plus seeded random
// samples) and counts checks, failures and cap-skipped points.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "padicmub/report.hpp"

namespace padicmub {

struct SuiteResult {
  explicit SuiteResult(std::string suite) : name(std::move(suite)) {}

  std::string name;
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
  std::uint64_t skipped = 0;
  std::vector<std::string> failure_samples;
  Json details = Json::object();

  bool pass() const { return failures == 0 && checks > 0; }

  void check(bool ok, const std::function<std::string()>& describe) {
    ++checks;
    if (ok) return;
    ++failures;
    if (failure_samples.size() < 10) failure_samples.push_back(describe());
  }
};

inline Json to_json(const SuiteResult& s) {
  return {{"suite", s.name},
          {"checks", s.checks},
          {"failures", s.failures},
          {"skipped", s.skipped},
          {"failure_samples", s.failure_samples},
          {"details", s.details},
          {"pass", s.pass()}};
}

namespace sweep_detail {

using Rng = std::mt19937_64;

/// Integer in [lo, hi]; plain modulo keeps results identical across standard libraries.
inline std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline double uniform_real(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0; }

/// Unit of Z_p below p^2.
inline std::int64_t random_unit(Rng& rng, std::int64_t p) {
  std::int64_t u = 0;
  do {
    u = uniform(rng, 1, p * p - 1);
  } while (u % p == 0);
  return u;
}

/// u p^v.
inline Rational scaled(std::int64_t u, std::int64_t v, std::int64_t p) {
  const auto pv = static_cast<std::int64_t>(checked_pow(static_cast<std::uint64_t>(p), std::abs(v)));
  return v >= 0 ? Rational(u * pv) : Rational(u, pv);
}

/// Random element with valuation in [vmin, vmax], or 0 with probability 1/(n+1).
inline Rational random_rational(Rng& rng, std::int64_t p, std::int64_t vmin, std::int64_t vmax, bool allow_zero) {
  if (allow_zero && uniform(rng, 0, vmax - vmin + 1) == 0) return Rational(0);
  const std::int64_t u = random_unit(rng, p) * (uniform(rng, 0, 1) ? 1 : -1);
  return scaled(u, uniform(rng, vmin, vmax), p);
}

inline PadicNumber padic(const Rational& q, std::int64_t p, std::int64_t absolute) {
  return PadicNumber::with_absolute_precision(q, p, absolute);
}

/// Valuations [-3, 3] and +inf, one unit per valuation.
inline std::vector<Rational> valuation_grid(Rng& rng, std::int64_t p) {
  std::vector<Rational> out{Rational(0)};
  for (std::int64_t v = -3; v <= 3; ++v) out.push_back(scaled(random_unit(rng, p), v, p));
  return out;
}

}  // namespace sweep_detail

// ---------------------------------------------------------------------------

/// Ring sums: closed form vs counting identity vs direct sum, exhaustively;
/// the k > l scaling identity; finite-field sums; seeded larger samples.
inline SuiteResult sweep_gauss_grid(std::uint64_t seed) {
  using namespace sweep_detail;
  SuiteResult s{"gauss-grid"};
  for (std::int64_t p : {3, 5, 7}) {
    for (std::int64_t k = 1; k <= 3; ++k) {
      if (checked_pow(p, k) > 400) continue;
      for (std::int64_t l = 1; l <= k; ++l) {
        const auto m = static_cast<std::int64_t>(checked_pow(p, l));
        for (std::int64_t a = 0; a < m; ++a) {
          for (std::int64_t b = 0; b < m; ++b) {
            const RingSumParams rp{p, k, l, a, b};
            const ClosedNorm closed = ring_sum_norm_closed(rp);
            const std::uint64_t exact = ring_sum_normsq_exact(rp);
            const std::complex<double> g = ring_sum_numeric(rp);
            const auto where = [&] {
              return "p=" + std::to_string(p) + " k=" + std::to_string(k) + " l=" + std::to_string(l) +
                     " a=" + std::to_string(a) + " b=" + std::to_string(b);
            };
            s.check(closed.norm.squared_integer() == exact, [&] { return "closed^2 != count at " + where(); });
            s.check(std::abs(std::norm(g) - static_cast<double>(exact)) <= 1e-6 * std::max(1.0, static_cast<double>(exact)),
                    [&] { return "numeric^2 vs count at " + where(); });
            if (k > l) {
              const std::complex<double> base = ring_sum_numeric(RingSumParams{p, l, l, a, b});
              const double scale = static_cast<double>(checked_pow(p, k - l));
              s.check(std::abs(g - scale * base) <= 1e-9 * std::max(1.0, std::abs(g)),
                      [&] { return "k > l scaling at " + where(); });
            }
          }
        }
      }
    }
  }
  for (auto [p, r] : {std::pair{3, 2}, std::pair{5, 2}, std::pair{3, 3}}) {
    const FieldPtr f = build_field(p, r);
    for (std::uint64_t i = 0; i < f->size(); ++i) {
      for (std::uint64_t j = 0; j < f->size(); ++j) {
        const FieldElem alpha = FieldElem::from_index(f, i), beta = FieldElem::from_index(f, j);
        const double numeric = std::abs(field_sum_numeric(alpha, beta));
        const double closed = field_sum_norm_closed(alpha, beta).norm.to_double();
        s.check(std::abs(numeric - closed) <= 1e-9, [&] {
          return "field sum F_" + std::to_string(f->size()) + " alpha=" + alpha.to_string() + " beta=" + beta.to_string();
        });
      }
    }
  }
  Rng rng(seed);
  for (int trial = 0; trial < 40; ++trial) {
    const std::int64_t p = std::array<std::int64_t, 4>{3, 5, 7, 11}[uniform(rng, 0, 3)];
    std::int64_t k = uniform(rng, 1, 6);
    while (checked_pow(p, k) > 20'000) --k;
    const std::int64_t l = uniform(rng, 1, k);
    const auto m = static_cast<std::int64_t>(checked_pow(p, l));
    const RingSumParams rp{p, k, l, uniform(rng, 0, m - 1) * (uniform(rng, 0, 2) ? 1 : p), uniform(rng, 0, m - 1)};
    const ClosedNorm closed = ring_sum_norm_closed(rp);
    s.check(closed.norm.squared_integer() == ring_sum_normsq_exact(rp) &&
                std::abs(std::abs(ring_sum_numeric(rp)) - closed.norm.to_double()) <= 1e-6 * closed.norm.to_double() + 1e-9,
            [&] { return "random ring sum p=" + std::to_string(p) + " k=" + std::to_string(k); });
  }
  return s;
}

/// Integrals over p^{-r} Z_p, closed form vs reduction to a ring sum.
inline SuiteResult sweep_integral_grid(std::uint64_t seed, std::uint64_t cap = kDefaultTermCap) {
  using namespace sweep_detail;
  SuiteResult s{"integral-grid"};
  Rng rng(seed);
  const std::int64_t p = 3;
  const auto values = valuation_grid(rng, p);
  for (const Rational& qa : values) {
    for (const Rational& qb : values) {
      for (std::int64_t r = -2; r <= 3; ++r) {
        const std::int64_t abs = 2 * std::max<std::int64_t>(r, 0) + 4;
        const IntegralParams ip{p, r, padic(qa, p, abs), padic(qb, p, abs)};
        try {
          const double numeric = std::abs(integral_numeric(ip, cap));
          const double closed = integral_norm_closed(ip).norm.to_double();
          s.check(std::abs(numeric - closed) <= 1e-9, [&] {
            return "a=" + qa.to_string() + " b=" + qb.to_string() + " r=" + std::to_string(r) + ": numeric " +
                   format12(numeric) + " closed " + format12(closed);
          });
        } catch (const CapExceeded&) {
          ++s.skipped;
        }
      }
    }
  }
  return s;
}

/// Settled norms above the threshold, "uncertified" at or below it, and at
/// least one point below the threshold where the settled table really fails.
inline SuiteResult sweep_thresholds(std::uint64_t seed, std::uint64_t cap = kDefaultTermCap) {
  using namespace sweep_detail;
  SuiteResult s{"thresholds"};
  Rng rng(seed);
  const std::int64_t p = 3;
  const auto values = valuation_grid(rng, p);
  std::uint64_t below_differs = 0, below_total = 0;
  for (const Rational& qa : values) {
    for (const Rational& qb : values) {
      const Threshold t = threshold_t(qa.valuation(p), qb.valuation(p));
      std::vector<std::int64_t> rs;
      for (std::int64_t r = -2; r <= 3; ++r) rs.push_back(r);
      if (t.value) {
        for (std::int64_t r = *t.value + 1; r <= *t.value + 3; ++r) {
          if (r > 3) rs.push_back(r);
        }
      }
      for (std::int64_t r : rs) {
        const std::int64_t abs = 2 * std::max<std::int64_t>(r, 0) + 4;
        const PadicNumber a = padic(qa, p, abs), b = padic(qb, p, abs);
        const auto settled = settled_integral_norm(a, b, r);
        const auto where = [&] { return "a=" + qa.to_string() + " b=" + qb.to_string() + " r=" + std::to_string(r); };
        s.check(settled.has_value() == t.admits(r), [&] { return "certification flag wrong at " + where(); });
        double numeric = 0.0;
        try {
          numeric = std::abs(integral_numeric(IntegralParams{p, r, a, b}, cap));
        } catch (const CapExceeded&) {
          ++s.skipped;
          continue;
        }
        if (settled) {
          s.check(integral_norm_closed(IntegralParams{p, r, a, b}).norm == settled->norm &&
                      std::abs(numeric - settled->norm.to_double()) <= 1e-9,
                  [&] { return "settled table fails above threshold at " + where(); });
        } else if (!qa.is_zero()) {
          // What the settled table would claim if it were applied anyway.
          ++below_total;
          const double claimed = PPower::half(p, qa.valuation(p).value()).to_double();
          if (std::abs(numeric - claimed) > 1e-9) ++below_differs;
        }
      }
    }
  }
  s.check(below_differs > 0, [] { return "threshold is vacuous: no point at or below t differs"; });
  s.details = {{"below_threshold_points", below_total}, {"below_threshold_differs", below_differs}};
  return s;
}

inline SuiteResult sweep_mub_finite(std::uint64_t /*seed*/) {
  SuiteResult s{"mub-finite"};
  Json runs = Json::array();
  for (auto [p, r] : {std::pair{3, 1}, std::pair{5, 1}, std::pair{7, 1}, std::pair{3, 2}}) {
    const MubReport rep = certify_mub_set(build_field(p, r));
    s.check(rep.pass, [&] { return "MUB set fails for p=" + std::to_string(p) + " r=" + std::to_string(r); });
    runs.push_back({{"p", p}, {"r", r}, {"max_deviation", round12(rep.max_deviation)}, {"pass", rep.pass}});
  }
  // Any other irreducible modulus gives another valid set.
  for (auto [p, r] : {std::pair{3, 2}, std::pair{5, 2}}) {
    const auto moduli = FieldCtx::irreducible_polynomials(p, r);
    const MubReport rep = certify_mub_set(FieldCtx::with_modulus(p, moduli.back()));
    s.check(rep.pass, [&] { return "alternative modulus fails for p=" + std::to_string(p); });
  }
  // Negative control: a basis repeated is not unbiased with itself.
  const auto bases = build_mub_set(build_field(3, 1));
  s.check(!verify_mub({bases[0], bases[0]}).pass, [] { return "verify_mub accepted a repeated basis"; });
  s.details = {{"runs", runs}};
  return s;
}

inline SuiteResult sweep_mub_padic(std::uint64_t seed, std::uint64_t cap = kDefaultCellCap) {
  using namespace sweep_detail;
  SuiteResult s{"mub-padic"};
  Json runs = Json::array();
  GramOptions opts;
  opts.cell_cap = cap;
  for (std::int64_t p : {3, 5}) {
    const GramReport rep = gram_report(p, canonical_params(p, default_b_samples(p)), 1, opts);
    s.check(rep.pass && rep.all_certified && rep.families_orthogonal,
            [&] { return "Gram report fails for p=" + std::to_string(p); });
    runs.push_back({{"p", p}, {"r", rep.r}, {"k", rep.k}, {"max_deviation", round12(rep.max_deviation)}, {"pass", rep.pass}});
  }
  {
    auto samples = default_b_samples(3);
    samples.emplace_back(1, 3);
    const GramReport rep = gram_report(3, canonical_params(3, samples), 0, opts);
    s.check(rep.pass && rep.all_certified && rep.r >= 1, [] { return "Gram report with b = 1/3 fails"; });
    runs.push_back({{"p", 3}, {"r", rep.r}, {"k", rep.k}, {"max_deviation", round12(rep.max_deviation)}, {"pass", rep.pass}});
  }

  // Grid inner products against the ring-sum reduction of the same integral.
  Rng rng(seed);
  for (int trial = 0; trial < 40; ++trial) {
    const std::int64_t p = uniform(rng, 0, 1) ? 3 : 5;
    const std::int64_t r = uniform(rng, -1, 2);
    const Rational a1 = random_rational(rng, p, -2, 2, true), a2 = random_rational(rng, p, -2, 2, true);
    const Rational b1 = random_rational(rng, p, -2, 2, true), b2 = random_rational(rng, p, -2, 2, true);
    std::int64_t k = std::max({required_resolution(a1.valuation(p), b1.valuation(p), r),
                               required_resolution(a2.valuation(p), b2.valuation(p), r),
                               required_resolution((a1 - a2).valuation(p), (b1 - b2).valuation(p), r), 1 - r});
    try {
      const Grid grid(p, r, k, cap);
      const std::int64_t abs = working_precision(grid);
      const StateVector u = vector_v(padic(a2, p, abs), padic(b2, p, abs), grid);
      const StateVector w = vector_v(padic(a1, p, abs), padic(b1, p, abs), grid);
      const std::complex<double> via_grid = inner(u, w);
      const std::complex<double> via_sum =
          integral_numeric(IntegralParams{p, r, padic(a1 - a2, p, abs), padic(b1 - b2, p, abs)});
      s.check(std::abs(via_grid - via_sum) <= 1e-9, [&] {
        return "grid vs reduction p=" + std::to_string(p) + " r=" + std::to_string(r) + " a=" + a1.to_string() + "," +
               a2.to_string() + " b=" + b1.to_string() + "," + b2.to_string();
      });
    } catch (const CapExceeded&) {
      ++s.skipped;
    }
  }

  // Cell values do not depend on which representative is sampled.
  for (int trial = 0; trial < 20; ++trial) {
    const std::int64_t p = 3, r = uniform(rng, 0, 2);
    const Rational qa = random_rational(rng, p, -2, 1, true), qb = random_rational(rng, p, -2, 1, true);
    const std::int64_t k = std::max<std::int64_t>(required_resolution(qa.valuation(p), qb.valuation(p), r), 1 - r);
    const Grid grid(p, r, k, cap);
    const std::int64_t abs = working_precision(grid) + 8;
    const PadicNumber a = padic(qa, p, abs), b = padic(qb, p, abs);
    const auto phases = vector_v_phases(a, b, grid);
    const std::int64_t shift_v = k + uniform(rng, 0, 2);
    const PadicNumber h = padic(scaled(random_unit(rng, p), shift_v, p), p, abs);
    bool same = true;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const PadicNumber x = grid.representative(i, abs + 2 * r + 4) + h;
      same = same && char_e(a * x * x + b * x) == phases[i];
    }
    s.check(same, [&] { return "representative dependence for a=" + qa.to_string() + " b=" + qb.to_string(); });
  }
  s.details = {{"runs", runs}};
  return s;
}

inline SuiteResult sweep_fourier(std::uint64_t seed) {
  using namespace sweep_detail;
  SuiteResult s{"fourier"};
  const std::int64_t p = 3;
  for (std::int64_t r = 0; r <= 2; ++r) {
    const Grid grid(p, r + 1, r + 1);
    for (const Rational& qz : {Rational(0), Rational(1), Rational(1, 3)}) {
      if (qz.valuation(p) < Valuation(-grid.r())) {
        ++s.skipped;
        continue;
      }
      const PadicNumber z = padic(qz, p, working_precision(grid));
      const StateVector psi = ball_state(z, r, std::pow(3.0, r / 2.0), grid);
      const StateVector got = fourier(psi);
      const StateVector want = fourier_ball_expected(z, r, grid.dual());
      double worst = 0.0;
      for (std::size_t i = 0; i < got.amplitudes.size(); ++i) {
        worst = std::max(worst, std::abs(got.amplitudes[i] - want.amplitudes[i]));
      }
      s.check(worst <= 1e-10, [&] { return "ball transform r=" + std::to_string(r) + " z=" + qz.to_string(); });
    }
  }

  Rng rng(seed);
  for (int trial = 0; trial < 100; ++trial) {
    const std::int64_t total = uniform(rng, 1, 8);
    const std::int64_t r = uniform(rng, -1, total + 1);
    const Grid grid(p, r, total - r);
    StateVector psi{grid, std::vector<std::complex<double>>(grid.size())};
    for (auto& z : psi.amplitudes) z = {uniform_real(rng), uniform_real(rng)};
    const StateVector hat = fourier(psi);
    s.check(std::abs(hat.norm() - psi.norm()) <= 1e-9, [&] { return "Plancherel trial " + std::to_string(trial); });
    const StateVector twice = fourier(hat);
    const StateVector back = inverse_fourier(hat);
    double reflect = 0.0, inverse = 0.0;
    const std::size_t n = grid.size();
    for (std::size_t i = 0; i < n; ++i) {
      reflect = std::max(reflect, std::abs(twice.amplitudes[i] - psi.amplitudes[(n - i) % n]));
      inverse = std::max(inverse, std::abs(back.amplitudes[i] - psi.amplitudes[i]));
    }
    s.check(twice.grid == grid && reflect <= 1e-9, [&] { return "double transform trial " + std::to_string(trial); });
    s.check(back.grid == grid && inverse <= 1e-9, [&] { return "inverse transform trial " + std::to_string(trial); });
  }

  // The transform of v(0, b) is v(inf, b).
  for (std::int64_t r = 0; r <= 2; ++r) {
    for (std::int64_t b = 0; b < p; ++b) {
      const Grid grid(p, r, std::max<std::int64_t>(r, 1));
      const PadicNumber pb = padic(Rational(b), p, working_precision(grid));
      const StateVector got = fourier(vector_v(PadicNumber::zero(p), pb, grid));
      const StateVector want = vector_v_inf(pb, grid.dual(), r);
      double worst = 0.0;
      for (std::size_t i = 0; i < got.amplitudes.size(); ++i) {
        worst = std::max(worst, std::abs(got.amplitudes[i] - want.amplitudes[i]));
      }
      s.check(worst <= 1e-9, [&] { return "F v(0,b) != v(inf,b) at r=" + std::to_string(r) + " b=" + std::to_string(b); });
    }
  }
  return s;
}

inline SuiteResult sweep_operators(std::uint64_t seed) {
  using namespace sweep_detail;
  SuiteResult s{"operators"};
  Rng rng(seed);
  const std::int64_t p = 3;

  for (int trial = 0; trial < 50; ++trial) {
    const std::int64_t r = uniform(rng, 0, 2), k = uniform(rng, 1, 3);
    const Grid grid(p, r, k);
    const std::int64_t abs = working_precision(grid);
    const Rational qc = random_rational(rng, p, -r, 2, true), qd = random_rational(rng, p, -k, 2, true);
    const PadicNumber c = padic(qc, p, abs), d = padic(qd, p, abs);
    const MonomialOperator zx = modulation(d, grid) * translation(c, grid);
    const MonomialOperator xz = translation(c, grid) * modulation(d, grid);
    const UnitPhase twist = char_e(c * d);
    bool exact = zx.source == xz.source;
    for (std::size_t i = 0; exact && i < grid.size(); ++i) exact = zx.phase[i] == xz.phase[i] + twist;
    s.check(exact, [&] { return "Z_d X_c != e(cd) X_c Z_d for c=" + qc.to_string() + " d=" + qd.to_string(); });
  }

  for (int trial = 0; trial < 25; ++trial) {
    const std::int64_t r = uniform(rng, 0, 2);
    const Rational qa = random_rational(rng, p, -1, 2, true), qb = random_rational(rng, p, -2, 2, true);
    const Rational qc = random_rational(rng, p, -r, 2, true);
    const Valuation v2ac = (Rational(2) * qa * qc).valuation(p);
    std::int64_t k = std::max<std::int64_t>(required_resolution(qa.valuation(p), qb.valuation(p), r), 1 - r);
    if (v2ac.is_finite()) k = std::max(k, -v2ac.value());
    const Grid grid(p, r, k);
    const std::int64_t abs = working_precision(grid);
    const EigenReport rep = eigen_check(padic(qa, p, abs), padic(qb, p, abs), padic(qc, p, abs), grid);
    s.check(rep.residual < 1e-9 && rep.exact_match, [&] {
      return "eigen relation a=" + qa.to_string() + " b=" + qb.to_string() + " c=" + qc.to_string();
    });
  }

  for (int trial = 0; trial < 25; ++trial) {
    const std::int64_t r = uniform(rng, 0, 2);
    const Rational qa = random_rational(rng, p, -1, 2, true), qb = random_rational(rng, p, -1, 2, true);
    const Rational qd = random_rational(rng, p, -1, 2, true);
    const std::int64_t k = std::max({required_resolution(qa.valuation(p), qb.valuation(p), r),
                                     required_resolution((qa + qd).valuation(p), qb.valuation(p), r),
                                     cell_constancy_resolution(qd.valuation(p), Valuation::infinity(), r), 1 - r});
    const Grid grid(p, r, k);
    const std::int64_t abs = working_precision(grid);
    const PadicNumber a = padic(qa, p, abs), b = padic(qb, p, abs), d = padic(qd, p, abs);
    const auto moved = chirp(d, grid).apply_phases(vector_v_phases(a, b, grid));
    s.check(moved == vector_v_phases(padic(qa + qd, p, abs), b, grid),
            [&] { return "P_d v(a,b) != v(a+d,b) for d=" + qd.to_string(); });
  }

  // Norm preservation: every operator is a permutation times unit phases.
  for (int trial = 0; trial < 10; ++trial) {
    const Grid grid(p, 1, 2);
    const std::int64_t abs = working_precision(grid);
    const MonomialOperator u = chirp(padic(random_rational(rng, p, -1, 1, false), p, abs), grid) *
                               translation(padic(random_rational(rng, p, -1, 1, false), p, abs), grid) *
                               modulation(padic(random_rational(rng, p, -2, 1, false), p, abs), grid);
    std::vector<std::size_t> sorted = u.source;
    std::sort(sorted.begin(), sorted.end());
    bool permutation = true;
    for (std::size_t i = 0; i < sorted.size(); ++i) permutation = permutation && sorted[i] == i;
    StateVector psi{grid, std::vector<std::complex<double>>(grid.size())};
    for (auto& z : psi.amplitudes) z = {uniform_real(rng), uniform_real(rng)};
    s.check(permutation && std::abs(u.apply(psi).norm() - psi.norm()) <= 1e-12,
            [&] { return "operator product is not norm preserving, trial " + std::to_string(trial); });
  }
  return s;
}

/// Exact algebraic identities over small exhaustive domains.
inline SuiteResult sweep_arithmetic(std::uint64_t /*seed*/) {
  SuiteResult s{"arithmetic"};
  for (std::int64_t p : {3, 5}) {
    std::vector<PadicNumber> xs;
    for (std::int64_t j = -2; j <= 2; ++j) {
      for (std::int64_t m = -12; m <= 12; ++m) {
        const Rational q = sweep_detail::scaled(m, j, p);
        xs.push_back(PadicNumber::with_absolute_precision(q, p, 10));
      }
    }
    for (const auto& x : xs) {
      s.check(x.is_zero() || x.valuation() < Valuation(0) || char_e(x).is_trivial(),
              [&] { return "e(x) not trivial on Z_p at x=" + x.to_string(); });
      for (const auto& y : xs) {
        const PadicNumber sum = x + y, prod = x * y;
        const auto where = [&] { return "p=" + std::to_string(p) + " x=" + x.to_string() + " y=" + y.to_string(); };
        const Valuation lo = std::min(x.valuation(), y.valuation());
        s.check(sum.valuation() >= lo && (x.valuation() == y.valuation() || sum.valuation() == lo),
                [&] { return "ultrametric inequality at " + where(); });
        s.check(norm_p(prod) == norm_p(x) * norm_p(y), [&] { return "norm multiplicativity at " + where(); });
        s.check(char_e(sum) == char_e(x) + char_e(y), [&] { return "character homomorphism at " + where(); });
      }
    }
  }
  for (auto [p, r] : {std::pair{3, 2}, std::pair{5, 2}, std::pair{3, 3}}) {
    const FieldPtr f = build_field(p, r);
    std::vector<FieldElem> elems;
    for (std::uint64_t i = 0; i < f->size(); ++i) elems.push_back(FieldElem::from_index(f, i));
    for (const auto& x : elems) {
      s.check(trace(pow(x, static_cast<std::uint64_t>(p))) == trace(x), [&] { return "Frobenius invariance at " + x.to_string(); });
      for (const auto& y : elems) {
        for (std::int64_t c = 0; c < p; ++c) {
          const FieldElem cx = FieldElem::from_int(f, c) * x;
          s.check(trace(cx + y) == (c * trace(x) + trace(y)) % p,
                  [&] { return "trace linearity at " + x.to_string() + ", " + y.to_string(); });
        }
      }
    }
  }
  return s;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"gauss-grid", "integral-grid", "thresholds", "mub-finite",
                                              "mub-padic",  "fourier",       "operators",  "arithmetic"};
  return names;
}

/// Runs one named suite, or every suite for "all".
inline std::vector<SuiteResult> run_suite(const std::string& name, std::uint64_t seed) {
  using Runner = SuiteResult (*)(std::uint64_t);
  static const std::vector<std::pair<std::string, Runner>> table{
      {"gauss-grid", [](std::uint64_t s) { return sweep_gauss_grid(s); }},
      {"integral-grid", [](std::uint64_t s) { return sweep_integral_grid(s); }},
      {"thresholds", [](std::uint64_t s) { return sweep_thresholds(s); }},
      {"mub-finite", sweep_mub_finite},
      {"mub-padic", [](std::uint64_t s) { return sweep_mub_padic(s); }},
      {"fourier", sweep_fourier},
      {"operators", sweep_operators},
      {"arithmetic", sweep_arithmetic},
  };
  std::vector<SuiteResult> out;
  for (const auto& [suite, run] : table) {
    if (name == "all" || name == suite) out.push_back(run(seed));
  }
  if (out.empty()) throw InvalidArgument("unknown sweep suite '" + name + "'");
  return out;
}

}  // namespace padicmub
