#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ffcov/arith_fn.hpp"
#include "ffcov/error.hpp"
#include "ffcov/intervals.hpp"

#include <random>

using namespace ffcov;

namespace {
Poly P(const char* s) { return Poly::parse(s); }
}  // namespace

TEST_CASE("interval members") {
  auto m = interval_members(IntervalSpec(P("0,0,1@2"), 0));
  REQUIRE(m.size() == 2);
  CHECK(m[0] == P("0,0,1@2"));
  CHECK(m[1] == P("1,0,1@2"));
  CHECK(interval_members(IntervalSpec(P("0,0,0,1@3"), 1)).size() == 9);
  auto full = interval_members(IntervalSpec(P("0,0,0,1@3"), 2));
  CHECK(full.size() == 27);
  for (std::size_t i = 0; i < full.size(); ++i) CHECK(full[i] == monic_from_index(Field(3), 3, i));
  for (const auto& g : m) CHECK(g.is_monic());

  CHECK_THROWS_AS(IntervalSpec(P("0,0,1@2"), 2), DomainError);
  CHECK_THROWS_AS(IntervalSpec(P("0,0,1@2"), -1), DomainError);
  CHECK_THROWS_AS(IntervalSpec(P("0,0,2@3"), 0), DomainError);
  CHECK(IntervalSpec(P("1,1,0,1@3"), 1) == IntervalSpec(P("0,2,0,1@3"), 1));
}

TEST_CASE("psi tilde") {
  CHECK(psi_j_tilde(1, IntervalSpec(P("0,0,1@2"), 1)) == 0);
  CHECK(psi_j_tilde(1, IntervalSpec(P("0,0,1@2"), 0)) == 0);
  // Full interval: the prime number theorem makes Psi~_1 vanish.
  for (std::uint32_t q : {2u, 3u, 5u})
    for (int n = 1; n <= 4; ++n)
      CHECK(psi_j_tilde(1, IntervalSpec(Poly::monomial(Field(q), 1, n), n - 1)) == 0);
}

TEST_CASE("psi tilde natural") {
  CHECK(psi_j_tilde_natural(1, IntervalSpec(P("0,0,1@2"), 1)) == 0);
  CHECK(psi_j_tilde_natural(0, IntervalSpec(P("0,0,0,1@3"), 1)) == 0);
  // Members with g(0) != 0: T^2+1 (irreducible, Lambda 2) and T^2+2 = (T+1)(T+2) (Lambda 0);
  // E_1(2) = 8/6 over F_3, so (2 - 4/3) + (0 - 4/3).
  CHECK(psi_j_tilde_natural(1, IntervalSpec(P("0,0,1@3"), 0)) == Rational(-2, 3));
  CHECK(lambda_j_mobius(1, P("1,0,1@3")) == 2);
  CHECK(lambda_j_mobius(1, P("2,0,1@3")) == 0);
}

TEST_CASE("involution and shift") {
  CHECK(involution_star(P("1,0,2@3")) == P("2,0,1@3"));
  CHECK(involution_star(P("1,1,1@2")) == P("1,1,1@2"));
  const Poly f = P("1,1@2");
  CHECK(involution_star(f * f) == involution_star(f) * involution_star(f));
  CHECK_THROWS_AS(involution_star(P("0,1@2")), DomainError);

  CHECK(shift_map(P("0,1,1@2"), 1) == P("1,1@2"));
  CHECK(shift_map(P("1,1@2"), 0) == P("1,1@2"));
  CHECK(shift_map(P("0,0,0,2@3"), 2) == P("0,2@3"));
  CHECK_THROWS_AS(shift_map(P("1,1@2"), 1), DomainError);
  CHECK(drop_low(P("1,2,0,1@3"), 2) == P("0,1@3"));

  std::mt19937_64 rng(5);
  for (std::uint32_t q : {2u, 3u, 5u}) {
    Field F(q);
    for (int trial = 0; trial < 100; ++trial) {
      Poly a = monic_from_index(F, 3, rng() % monic_count(q, 3)).scaled(1 + rng() % (q - 1));
      Poly b = monic_from_index(F, 2, rng() % monic_count(q, 2));
      if (a.coeff(0) == 0 || b.coeff(0) == 0) continue;
      CHECK(involution_star(involution_star(a)) == a);
      CHECK(involution_star(a * b) == involution_star(a) * involution_star(b));
    }
  }
}

TEST_CASE("star preserves degree and the arithmetic functions") {
  for (std::uint32_t q : {2u, 3u}) {
    Field F(q);
    for (int n = 1; n <= 5; ++n)
      for (const Poly& m : enumerate_monics(F, n))
        for (Residue c = 1; c < q; ++c) {
          const Poly f = m.scaled(c);
          if (f.coeff(0) == 0) continue;
          const Poly s = involution_star(f);
          CHECK(s.degree() == n);
          CHECK(mobius(s) == mobius(f));
          for (int j = 1; j <= 3; ++j) CHECK(lambda_j_mobius(j, s) == lambda_j_mobius(j, f));
        }
  }
}

TEST_CASE("short-interval closeness is star congruence mod T^{n-h}") {
  for (std::uint32_t q : {2u, 3u}) {
    Field F(q);
    for (int n = 1; n <= (q == 2 ? 5 : 4); ++n) {
      std::vector<Poly> pn;
      for (const Poly& m : enumerate_monics(F, n))
        for (Residue c = 1; c < q; ++c)
          if (m.coeff(0) != 0) pn.push_back(m.scaled(c));
      for (int h = 0; h < n; ++h)
        for (const auto& f1 : pn)
          for (const auto& f2 : pn) {
            const bool close = (f1 - f2).degree() <= h;
            const Poly diff = involution_star(f1) - involution_star(f2);
            bool congruent = true;
            for (int i = 0; i < n - h; ++i) congruent = congruent && diff.coeff(i) == 0;
            REQUIRE(close == congruent);
          }
    }
  }
}

TEST_CASE("intervals are buckets of consecutive indices") {
  Field F(3);
  const int n = 4;
  for (int h = 0; h < n; ++h)
    for (std::uint64_t i = 0; i < monic_count(3, n); ++i) {
      const Poly f = monic_from_index(F, n, i);
      IntervalSpec spec(f, h);
      CHECK(spec.bucket() == i / monic_count(3, h + 1));
      CHECK(spec.size() == monic_count(3, h + 1));
    }
  FactorSieve sieve(F, n);
  const auto lam = lambda_values(sieve, 2, n);
  const auto sums = interval_sums(lam, 3, 1);
  for (std::uint64_t b = 0; b < sums.size(); ++b) {
    IntervalSpec spec(monic_from_index(F, n, b * 9), 1);
    CHECK(sums[b] == psi_j(2, spec));
  }
}

TEST_CASE("valuation decomposition") {
  CHECK(valuation_decomposition_check(1, IntervalSpec(P("0,0,1@2"), 1)));
  CHECK(valuation_decomposition_check(2, IntervalSpec(P("0,0,0,1@3"), 1)));
  CHECK(valuation_decomposition_check(0, IntervalSpec(P("0,0,0,1@3"), 1)));
  for (std::uint32_t q : {2u, 3u})
    for (int n = 2; n <= 4; ++n)
      for (int h = 0; h < n; ++h)
        for (const Poly& f : enumerate_monics(Field(q), n))
          for (int j = 0; j <= 3; ++j) REQUIRE(valuation_decomposition_check(j, IntervalSpec(f, h)));
}
