#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "padicmub/mub_padic.hpp"

using namespace padicmub;

namespace {

PadicNumber q(std::int64_t n, std::int64_t d = 1, std::int64_t p = 3, std::int64_t abs = 16) {
  return PadicNumber::with_absolute_precision(Rational(n, d), p, abs);
}

std::complex<double> omega(double turns) { return std::polar(1.0, 2.0 * std::numbers::pi * turns); }

double max_diff(const StateVector& u, const StateVector& w) {
  double m = 0.0;
  for (std::size_t i = 0; i < u.amplitudes.size(); ++i) m = std::max(m, std::abs(u.amplitudes[i] - w.amplitudes[i]));
  return m;
}

StateVector random_state(const Grid& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  StateVector v{g, std::vector<std::complex<double>>(g.size())};
  for (auto& z : v.amplitudes) z = {u(rng), u(rng)};
  return v;
}

/// Fourier transform by the defining sum with exact characters.
StateVector direct_fourier(const StateVector& psi) {
  const Grid& g = psi.grid;
  const Grid d = g.dual();
  StateVector out{d, std::vector<std::complex<double>>(d.size())};
  for (std::size_t j = 0; j < d.size(); ++j) {
    const PadicNumber y = d.representative(j, 20);
    std::complex<double> s = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) s += psi.amplitudes[i] * phase_to_complex(char_e(g.representative(i, 20) * y));
    out.amplitudes[j] = s * g.cell_measure();
  }
  return out;
}

}  // namespace

TEST(Grid, Shapes) {
  EXPECT_EQ(make_grid(3, 0, 1).size(), 3U);
  EXPECT_EQ(make_grid(3, 1, 1).size(), 9U);
  const Grid g(3, 1, 0);
  EXPECT_EQ(g.size(), 3U);
  EXPECT_DOUBLE_EQ(g.cell_measure(), 1.0);
  EXPECT_DOUBLE_EQ(g.cell_measure() * g.size(), 3.0);
  EXPECT_EQ(g.dual(), Grid(3, 0, 1));
  EXPECT_THROW(Grid(3, 1, -1), InvalidArgument);
  EXPECT_THROW(Grid(4, 1, 1), InvalidArgument);
  EXPECT_THROW(Grid(3, 6, 6), CapExceeded);
}

TEST(Grid, RepresentativesAreDistinctCosets) {
  const Grid g(3, 1, 2);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const PadicNumber x = g.representative(i, 6);
    EXPECT_GE(x.valuation(), Valuation(-1));
    EXPECT_EQ(g.index_of(x), i);
  }
  EXPECT_EQ(g.representative(1, 4).truncated_value(), Rational(1, 3));
  EXPECT_EQ(g.index_of(q(-1, 3)), g.size() - 1);
  EXPECT_THROW(g.index_of(q(1, 9)), InvalidArgument);
}

TEST(Resolution, Examples) {
  EXPECT_EQ(required_resolution(Valuation(0), Valuation::infinity(), 1), 2);
  EXPECT_EQ(required_resolution(Valuation::infinity(), Valuation::infinity(), 5), 0);
  EXPECT_EQ(required_resolution(Valuation::infinity(), Valuation::infinity(), -3), 0);
  EXPECT_EQ(required_resolution(q(1, 9), q(0), 1), 4);
  // Negative r: a x^2 must still be constant on cells of the smaller ball.
  EXPECT_EQ(required_resolution(Valuation(-3), Valuation::infinity(), -2), 2);
  EXPECT_EQ(cell_constancy_resolution(Valuation(-3), Valuation::infinity(), -2), 2);
}

TEST(Resolution, ConstancyBoundIsTight) {
  // With one cell less, some cell sees two different phases.
  const std::int64_t p = 3;
  for (const Rational& a : {Rational(1), Rational(1, 9), Rational(2, 3)}) {
    for (std::int64_t r = 0; r <= 2; ++r) {
      const std::int64_t k = cell_constancy_resolution(a.valuation(p), Valuation::infinity(), r) - 1;
      if (r + k < 1) continue;
      const Grid g(p, r, k);
      const PadicNumber pa = PadicNumber::with_absolute_precision(a, p, 20);
      const PadicNumber h = PadicNumber::from_digits(p, k, {1});
      bool varies = false;
      for (std::size_t i = 0; i < g.size() && !varies; ++i) {
        const PadicNumber x = g.representative(i, 20);
        varies = !(char_e(pa * x * x) == char_e(pa * (x + h) * (x + h)));
      }
      EXPECT_TRUE(varies) << a << " r=" << r;
    }
  }
}

TEST(VectorV, Examples) {
  const Grid g(3, 1, 2);
  const StateVector flat = vector_v(q(0), q(0), g);
  for (const auto& z : flat.amplitudes) EXPECT_EQ(z, std::complex<double>(1.0, 0.0));
  EXPECT_NEAR(flat.norm_squared(), 3.0, 1e-12);

  const Grid z3(3, 0, 1);
  const StateVector third = vector_v(q(0), q(1, 3), z3);
  for (std::size_t x = 0; x < 3; ++x) EXPECT_LT(std::abs(third.amplitudes[x] - omega(x / 3.0)), 1e-15);
  const StateVector one = vector_v(q(0), q(1), z3);
  for (const auto& z : one.amplitudes) EXPECT_LT(std::abs(z - 1.0), 1e-15);

  for (const Rational& a : {Rational(1), Rational(1, 9), Rational(5, 3)}) {
    for (const Rational& b : {Rational(0), Rational(2, 9)}) {
      for (std::int64_t r = 0; r <= 2; ++r) {
        const Grid grid(3, r, std::max<std::int64_t>(required_resolution(a.valuation(3), b.valuation(3), r), 1 - r));
        const StateVector v = vector_v(q(a.num(), a.den()), q(b.num(), b.den()), grid);
        EXPECT_NEAR(v.norm_squared(), std::pow(3.0, r), 1e-12);
        EXPECT_NEAR(std::abs(inner(v, v)), std::pow(3.0, r), 1e-12);
      }
    }
  }
  EXPECT_THROW(vector_v(q(1, 9), q(0), Grid(3, 1, 3)), ResolutionError);
  EXPECT_THROW(vector_v(q(1, 1, 5), q(0, 1, 5), g), InvalidArgument);
}

TEST(VectorV, CellValueIndependentOfRepresentative) {
  const Grid g(3, 1, 3);
  const PadicNumber a = q(2, 3), b = q(7, 9);
  const auto phases = vector_v_phases(a, b, g);
  for (std::int64_t shift : {1, 2, 5, 13}) {
    const PadicNumber h = q(shift * 27);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const PadicNumber x = g.representative(i, 20) + h;
      EXPECT_EQ(char_e(a * x * x + b * x), phases[i]);
    }
  }
}

TEST(VectorVInf, Examples) {
  const Grid g(3, 1, 1);
  const StateVector v = vector_v_inf(q(0), g);
  EXPECT_EQ(v.amplitudes[0], std::complex<double>(3.0, 0.0));
  for (std::size_t i = 1; i < g.size(); ++i) EXPECT_EQ(v.amplitudes[i], std::complex<double>(0.0, 0.0));
  EXPECT_NEAR(v.norm_squared(), 3.0, 1e-12);

  const Grid h(3, 2, 3);
  for (std::int64_t b = 0; b < 9; ++b) {
    for (std::int64_t c = 0; c < 9; ++c) {
      const auto ip = inner(vector_v_inf(q(c), h), vector_v_inf(q(b), h));
      EXPECT_NEAR(std::abs(ip), b == c ? 9.0 : 0.0, 1e-12) << b << " " << c;
    }
  }
  EXPECT_NEAR(std::abs(inner(vector_v_inf(q(1, 9), h), vector_v_inf(q(1, 9), h))), 9.0, 1e-12);
  EXPECT_THROW(vector_v_inf(q(1, 27), h), InvalidArgument);
  EXPECT_THROW(vector_v_inf(q(0), Grid(3, 2, 1)), ResolutionError);
  EXPECT_THROW(inner(v, vector_v_inf(q(0), h)), InvalidArgument);
}

TEST(Inner, CrossFamiliesAreUnbiased) {
  const Grid g(3, 2, 4);
  for (std::int64_t a = 0; a < 3; ++a) {
    for (std::int64_t a2 = 0; a2 < 3; ++a2) {
      if (a == a2) continue;
      for (std::int64_t b = 0; b < 3; ++b) {
        EXPECT_NEAR(std::abs(inner(vector_v(q(a2), q(b), g), vector_v(q(a), q(0), g))), 1.0, 1e-12);
      }
    }
    EXPECT_NEAR(std::abs(inner(vector_v_inf(q(2), g), vector_v(q(a), q(1), g))), 1.0, 1e-12);
  }
  // a - a' = 9: modulus p^{v/2} = 3.
  EXPECT_NEAR(std::abs(inner(vector_v(q(9), q(0), g), vector_v(q(0), q(1), g))), 3.0, 1e-12);
}

TEST(Gram, CanonicalSets) {
  for (std::int64_t p : {3, 5}) {
    const GramReport rep = gram_report(p, canonical_params(p, default_b_samples(p)), 1);
    EXPECT_TRUE(rep.pass);
    EXPECT_TRUE(rep.all_certified);
    EXPECT_TRUE(rep.families_orthogonal);
    EXPECT_EQ(rep.r, 1);
    for (const auto& e : rep.entries) {
      const auto& u = rep.params[e.i];
      const auto& w = rep.params[e.j];
      const double want = e.i == e.j ? p : (u.family() == w.family() ? 0.0 : 1.0);
      EXPECT_NEAR(e.modulus, want, 1e-9) << u.family() << "," << u.b << " vs " << w.family() << "," << w.b;
    }
  }
}

TEST(Gram, ThresholdFlagsAndAutoRaise) {
  const auto params = canonical_params(3, default_b_samples(3));
  GramOptions fixed;
  fixed.auto_raise = false;
  const GramReport low = gram_report(3, params, 0, fixed);
  EXPECT_EQ(low.r, 0);
  EXPECT_FALSE(low.all_certified);
  EXPECT_FALSE(low.families_orthogonal);
  std::size_t flagged = 0;
  for (const auto& e : low.entries) flagged += !e.closed.has_value();
  EXPECT_GT(flagged, 0U);

  const GramReport raised = gram_report(3, params, 0);
  EXPECT_EQ(raised.requested_r, 0);
  EXPECT_EQ(raised.r, 1);
  EXPECT_TRUE(raised.pass && raised.all_certified);

  auto samples = default_b_samples(3);
  samples.emplace_back(1, 3);
  const GramReport with_third = gram_report(3, canonical_params(3, samples), 1);
  EXPECT_TRUE(with_third.pass && with_third.all_certified);
  EXPECT_EQ(with_third.r, 2);
  EXPECT_THROW(gram_report(3, canonical_params(3, samples), 0, fixed), InvalidArgument);
  EXPECT_THROW(gram_report(2, canonical_params(2, default_b_samples(2)), 1), LemmaHypothesisError);
  GramOptions tiny;
  tiny.cell_cap = 10;
  EXPECT_THROW(gram_report(5, canonical_params(5, default_b_samples(5)), 1, tiny), CapExceeded);
}

TEST(Gram, AgreesWithIntegralReduction) {
  const std::int64_t p = 3;
  for (const Rational& da : {Rational(0), Rational(1), Rational(1, 3), Rational(9), Rational(2, 27)}) {
    for (const Rational& db : {Rational(0), Rational(1, 9), Rational(3)}) {
      for (std::int64_t r = -1; r <= 2; ++r) {
        const std::int64_t k = std::max<std::int64_t>(required_resolution(da.valuation(p), db.valuation(p), r), 1 - r);
        const Grid g(p, r, k);
        const PadicNumber a0 = q(1, 3), b0 = q(2);
        const PadicNumber a1 = a0 + q(da.num(), da.den()), b1 = b0 + q(db.num(), db.den());
        if (k < required_resolution(a0, b0, r) || k < required_resolution(a1, b1, r)) continue;
        const auto via_grid = inner(vector_v(a0, b0, g), vector_v(a1, b1, g));
        const auto via_sum = integral_numeric({p, r, q(da.num(), da.den()), q(db.num(), db.den())});
        EXPECT_LT(std::abs(via_grid - via_sum), 1e-9) << da << " " << db << " r=" << r;
      }
    }
  }
}

TEST(Fourier, BallExample) {
  for (std::int64_t r = 0; r <= 2; ++r) {
    const Grid g(3, r + 1, r + 1);
    for (const Rational& z : {Rational(0), Rational(1), Rational(1, 3)}) {
      const PadicNumber pz = q(z.num(), z.den());
      const StateVector psi = ball_state(pz, r, std::pow(3.0, r / 2.0), g);
      EXPECT_LT(max_diff(fourier(psi), fourier_ball_expected(pz, r, g.dual())), 1e-10) << r << " " << z;
    }
  }
  const Grid z(3, 0, 2);
  const StateVector ind = ball_state(q(0), 0, 1.0, z);
  const StateVector hat = fourier(ind);
  EXPECT_EQ(hat.grid, Grid(3, 2, 0));
  for (std::size_t i = 0; i < hat.amplitudes.size(); ++i) {
    EXPECT_NEAR(std::abs(hat.amplitudes[i]), i % 9 == 0 ? 1.0 : 0.0, 1e-12);
  }
}

TEST(Fourier, MatchesDefiningSum) {
  std::mt19937_64 rng(11);
  for (auto [p, r, k] : {std::tuple{3, 1, 1}, std::tuple{3, 0, 2}, std::tuple{5, 1, 1}, std::tuple{3, -1, 3}, std::tuple{7, 2, -1}}) {
    const StateVector psi = random_state(Grid(p, r, k), rng);
    EXPECT_LT(max_diff(fourier(psi), direct_fourier(psi)), 1e-12) << p << " " << r << " " << k;
  }
}

TEST(Fourier, PlancherelAndInversion) {
  std::mt19937_64 rng(5);
  for (auto [r, k] : {std::pair{0, 1}, std::pair{2, 3}, std::pair{4, 4}, std::pair{-2, 5}}) {
    const Grid g(3, r, k);
    const StateVector psi = random_state(g, rng);
    const StateVector hat = fourier(psi);
    EXPECT_NEAR(hat.norm(), psi.norm(), 1e-9);
    EXPECT_LT(max_diff(inverse_fourier(hat), psi), 1e-12);
    const StateVector twice = fourier(hat);
    const std::size_t n = g.size();
    for (std::size_t i = 0; i < n; ++i) EXPECT_LT(std::abs(twice.amplitudes[i] - psi.amplitudes[(n - i) % n]), 1e-12);
  }
}

TEST(Fourier, ZeroFamilyMapsToDeltaFamily) {
  for (std::int64_t r = 0; r <= 2; ++r) {
    const Grid g(3, r, r + 1);
    for (std::int64_t b = 0; b < 9; ++b) {
      const StateVector hat = fourier(vector_v(q(0), q(b), g));
      EXPECT_LT(max_diff(hat, vector_v_inf(q(b), g.dual(), r)), 1e-12) << r << " " << b;
    }
  }
}

TEST(Operators, Preconditions) {
  const Grid g(3, 1, 2);
  EXPECT_THROW(translation(q(1, 9), g), InvalidArgument);
  EXPECT_THROW(modulation(q(1, 27), g), ResolutionError);
  EXPECT_THROW(chirp(q(1, 9), g), ResolutionError);
}

TEST(Operators, CommutationPhaseIsExact) {
  const Grid g(3, 2, 3);
  for (const Rational& c : {Rational(1, 9), Rational(2, 3), Rational(5)}) {
    for (const Rational& d : {Rational(1, 27), Rational(4, 9), Rational(1)}) {
      const PadicNumber pc = q(c.num(), c.den()), pd = q(d.num(), d.den());
      const MonomialOperator zx = modulation(pd, g) * translation(pc, g);
      const MonomialOperator xz = translation(pc, g) * modulation(pd, g);
      ASSERT_EQ(zx.source, xz.source);
      for (std::size_t i = 0; i < g.size(); ++i) EXPECT_EQ(zx.phase[i], xz.phase[i] + char_e(pc * pd));
    }
  }
}

TEST(Operators, TranslationShiftsArgument) {
  const Grid g(3, 1, 2);
  const StateVector psi = vector_v_inf(q(0), g, 1);  // indicator-like bump at 0
  const StateVector moved = translation(q(1, 3), g).apply(psi);
  EXPECT_LT(max_diff(moved, vector_v_inf(q(-1, 3), g, 1)), 1e-15);
}

TEST(Operators, EigenRelation) {
  const EigenReport plain = eigen_check(q(0), q(2), q(1, 3), Grid(3, 1, 2));
  EXPECT_LT(plain.residual, 1e-12);
  EXPECT_TRUE(plain.exact_match);
  EXPECT_EQ(plain.expected_phase, char_e(q(-2, 3)));

  const EigenReport trivial = eigen_check(q(1), q(0), q(1), Grid(3, 1, 2));
  EXPECT_TRUE(trivial.expected_phase.is_trivial());
  EXPECT_LT(trivial.residual, 1e-9);

  const EigenReport third = eigen_check(q(1), q(0), q(1, 3), Grid(3, 1, 2));
  EXPECT_EQ(third.expected_phase, UnitPhase::of(3, 8, 2));
  EXPECT_LT(third.residual, 1e-9);
  EXPECT_NEAR(third.measured_phase, 8.0 / 9.0, 1e-12);
  EXPECT_TRUE(third.exact_match);
}

TEST(Operators, ChirpShiftsQuadraticCoefficient) {
  const Grid g(3, 1, 4);
  for (const Rational& d : {Rational(1), Rational(1, 3), Rational(2, 9)}) {
    for (const Rational& a : {Rational(0), Rational(1), Rational(1, 3)}) {
      const PadicNumber pa = q(a.num(), a.den()), pd = q(d.num(), d.den()), b = q(1, 3);
      const auto moved = chirp(pd, g).apply_phases(vector_v_phases(pa, b, g));
      EXPECT_EQ(moved, vector_v_phases(pa + pd, b, g)) << a << " + " << d;
    }
  }
}

TEST(Operators, NormPreserving) {
  std::mt19937_64 rng(3);
  const Grid g(5, 1, 2);
  const MonomialOperator u = chirp(q(1, 5, 5), g) * translation(q(3, 5, 5), g) * modulation(q(2, 25, 5), g);
  const StateVector psi = random_state(g, rng);
  EXPECT_NEAR(u.apply(psi).norm(), psi.norm(), 1e-12);
  const MonomialOperator id = MonomialOperator::identity(g);
  EXPECT_LT(max_diff((u * id).apply(psi), u.apply(psi)), 1e-15);
}
