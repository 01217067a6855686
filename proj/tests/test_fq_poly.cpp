#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ffcov/error.hpp"
#include "ffcov/factor.hpp"
#include "ffcov/fq_poly.hpp"

#include <random>
#include <set>
#include <string>

using namespace ffcov;

namespace {

Poly P(const char* s) { return Poly::parse(s); }

// Classical count of monic irreducibles: (1/n) sum_{d | n} mu_Z(d) q^{n/d}.
std::int64_t necklace_count(std::int64_t q, int n) {
  auto mu = [](int d) {
    int r = 1;
    for (int p = 2; p * p <= d; ++p) {
      if (d % p) continue;
      d /= p;
      if (d % p == 0) return 0;
      r = -r;
    }
    return d > 1 ? -r : r;
  };
  std::int64_t s = 0;
  for (int d = 1; d <= n; ++d)
    if (n % d == 0) {
      std::int64_t pw = 1;
      for (int i = 0; i < n / d; ++i) pw *= q;
      s += mu(d) * pw;
    }
  return s / n;
}

}  // namespace

TEST_CASE("field arithmetic") {
  CHECK(Field(5).inv(2) == 3);
  CHECK(Field(2).add(1, 1) == 0);
  CHECK(Field(7).mul(3, 5) == 1);
  CHECK(Field(7).sub(2, 5) == 4);
  CHECK_THROWS_AS(Field(7).inv(0), DomainError);
  CHECK_THROWS_AS(Field(4), DomainError);
  CHECK_THROWS_AS(Field(1), DomainError);
  CHECK_THROWS_AS(Field(65537 + 2), DomainError);
  CHECK(Field(65521).q() == 65521);
}

TEST_CASE("polynomial arithmetic") {
  CHECK(gcd(P("0,0,1@2"), P("0,1@2")) == P("0,1@2"));
  CHECK(P("0,1@2") * P("1,1@2") == P("0,1,1@2"));
  auto [quo, rem] = P("1,0,0,1@3").divmod(P("1,1@3"));
  CHECK(quo == P("1,2,1@3"));  // T^2 - T + 1
  CHECK(rem.is_zero());
  CHECK(quo * P("1,1@3") == P("1,0,0,1@3"));
  CHECK_THROWS_AS(P("1,1@3").divmod(Poly(Field(3))), DomainError);
  CHECK(P("2,0,4@5").eval(3) == (2 + 4 * 9) % 5);
  CHECK(P("1,1@2").shifted(2) == P("0,0,1,1@2"));
  CHECK(gcd(P("0,0,2@3"), P("0,2@3")).is_monic());

  SUBCASE("zero degree sentinel is below every degree") {
    Poly z(Field(3));
    CHECK(z.degree() == kZeroDegree);
    CHECK(z.degree() < Poly::constant(Field(3), 1).degree());
  }
}

TEST_CASE("text format") {
  CHECK(P("0,1,1@2").to_string() == "0,1,1@2");
  CHECK(Poly(Field(5)).to_string() == "0@5");
  CHECK(P("0@5").is_zero());
  CHECK_THROWS(P("1,0@2"));
  CHECK_THROWS(P("1,2@2"));
  CHECK_THROWS(P("1,1"));
  CHECK_THROWS(P("1,,1@3"));
  CHECK_THROWS(P("1,1@4"));

  // Property: print . parse is the identity on random canonical polynomials.
  std::mt19937_64 rng(17);
  for (std::uint32_t q : {2u, 3u, 7u, 65521u}) {
    Field F(q);
    std::uniform_int_distribution<Residue> digit(0, q - 1);
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<Residue> c(rng() % 9);
      for (auto& x : c) x = digit(rng);
      Poly f(F, c);
      CHECK(Poly::parse(f.to_string()) == f);
      CHECK(Poly::parse(f.to_string()).to_string() == f.to_string());
    }
  }
}

TEST_CASE("factor examples") {
  auto f = factor(P("0,1,1@2"));
  CHECK(f.unit == 1);
  REQUIRE(f.factors.size() == 2);
  CHECK(f.factors[0] == std::pair{P("0,1@2"), 1});
  CHECK(f.factors[1] == std::pair{P("1,1@2"), 1});

  auto g = factor(P("1,1,1@2"));
  REQUIRE(g.factors.size() == 1);
  CHECK(g.factors[0].second == 1);
  CHECK(g.factors[0].first == P("1,1,1@2"));

  auto h = factor(P("0,0,2@3"));
  CHECK(h.unit == 2);
  REQUIRE(h.factors.size() == 1);
  CHECK(h.factors[0] == std::pair{P("0,1@3"), 2});

  CHECK_THROWS_AS(factor(Poly(Field(3))), DomainError);

  // Characteristic-p powers exercise the p-th root branch.
  Poly x = P("1,1@3") * P("1,1@3") * P("1,1@3") * P("2,0,1@3") * P("2,0,1@3");
  auto fx = factor(x);
  CHECK(fx.product(x.field()) == x);
}

TEST_CASE("factor reconstructs every nonzero polynomial of degree <= 6") {
  for (std::uint32_t q : {2u, 3u, 5u}) {
    Field F(q);
    for (int n = 0; n <= 6; ++n) {
      for (const Poly& m : enumerate_monics(F, n)) {
        for (Residue c = 1; c < q; ++c) {
          const Poly f = m.scaled(c);
          const auto fac = factor(f, 99 + c);
          CHECK(fac.unit == c);
          REQUIRE(fac.product(F) == f);
          std::set<std::string> seen;
          for (const auto& [p, e] : fac.factors) {
            CHECK(p.is_monic());
            CHECK(e >= 1);
            CHECK(is_irreducible(p));
            CHECK(seen.insert(p.to_string()).second);
          }
        }
      }
    }
  }
}

TEST_CASE("factorization is independent of the splitting seed") {
  Field F(7);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const Poly f = monic_from_index(F, 8, rng() % monic_count(7, 8));
    const auto a = factor(f, 1);
    const auto b = factor(f, 123456);
    CHECK(a.factors == b.factors);
  }
}

TEST_CASE("irreducible counts match the necklace formula") {
  for (std::uint32_t q : {2u, 3u}) {
    Field F(q);
    FactorSieve sieve(F, 6);
    for (int n = 1; n <= 6; ++n) {
      std::int64_t by_enum = 0;
      for (const Poly& f : enumerate_monics(F, n)) by_enum += is_irreducible(f) ? 1 : 0;
      CHECK(by_enum == necklace_count(q, n));
      CHECK(static_cast<std::int64_t>(sieve.irreducibles(n).size()) == necklace_count(q, n));
    }
  }
}

TEST_CASE("enumerate_monics") {
  CHECK(enumerate_monics(Field(2), 2).size() == 4);
  CHECK(monic_from_index(Field(3), 2, 8) == Poly::parse("2,2,1@3"));
  CHECK_THROWS_AS(monic_from_index(Field(3), 2, 9), DomainError);
  {
    auto r = enumerate_monics(Field(3), 0);
    std::vector<Poly> all(r.begin(), r.end());
    REQUIRE(all.size() == 1);
    CHECK(all[0].is_one());
  }
  {
    auto r = enumerate_monics(Field(5), 1);
    std::vector<Poly> all(r.begin(), r.end());
    REQUIRE(all.size() == 5);
    for (Residue a = 0; a < 5; ++a) CHECK(all[a] == Poly(Field(5), {a, 1}));
  }
  for (std::uint32_t q : {2u, 3u, 5u, 7u}) {
    for (int n = 0; n <= 5; ++n) {
      std::set<std::string> seen;
      std::uint64_t i = 0;
      for (const Poly& f : enumerate_monics(Field(q), n)) {
        CHECK(f.is_monic());
        CHECK(f.degree() == n);
        CHECK(monic_index(f) == i++);
        seen.insert(f.to_string());
      }
      CHECK(seen.size() == monic_count(q, n));
    }
  }
}

TEST_CASE("factor sieve agrees with direct factorization") {
  for (std::uint32_t q : {2u, 3u, 5u}) {
    Field F(q);
    FactorSieve sieve(F, q == 5 ? 5 : 6);
    for (int n = 0; n <= sieve.max_degree(); ++n) {
      for (std::uint64_t i = 0; i < monic_count(q, n); ++i) {
        const Poly f = monic_from_index(F, n, i);
        REQUIRE(sieve.shape(n, i) == factor(f).shape());
      }
    }
  }
  CHECK_THROWS_AS(FactorSieve(Field(11), 9, 1000), ResourceError);
}
