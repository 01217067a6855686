#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ffcov/arith_fn.hpp"
#include "ffcov/error.hpp"
#include "ffcov/factor.hpp"

#include <map>
#include <random>

using namespace ffcov;

namespace {

Poly P(const char* s) { return Poly::parse(s); }

// Brute-force oracle: divisors by trial division, mu by its defining recursion
// sum_{e | d} mu(e) = [d = 1]. Never touches factor() or FactorShape.
struct BruteForce {
  Field F;
  std::map<std::string, std::int64_t> mu_memo;

  std::vector<Poly> monic_divisors(const Poly& f) const {
    std::vector<Poly> out;
    for (int d = 0; d <= f.degree(); ++d)
      for (const Poly& g : enumerate_monics(F, d))
        if ((f % g).is_zero()) out.push_back(g);
    return out;
  }

  std::int64_t mu(const Poly& f) {
    const Poly m = f.monic();
    if (m.degree() == 0) return 1;
    auto key = m.to_string();
    if (auto it = mu_memo.find(key); it != mu_memo.end()) return it->second;
    std::int64_t s = 0;
    for (const Poly& e : monic_divisors(m))
      if (e != m) s += mu(e);
    mu_memo[key] = -s;
    return -s;
  }

  std::int64_t lambda_j(int j, const Poly& f) {
    std::int64_t s = 0;
    for (const Poly& d : monic_divisors(f.monic())) s += mu(d) * ipow64(f.degree() - d.degree(), j);
    return s;
  }
};

}  // namespace

TEST_CASE("mobius examples") {
  CHECK(mobius(P("0,1@2")) == -1);
  CHECK(mobius(P("0,0,1@2")) == 0);
  CHECK(mobius(P("0,1,1@2")) == 1);
  CHECK(mobius(P("1@2")) == 1);
  CHECK(mobius(P("2@3")) == 1);
  CHECK_THROWS_AS(mobius(Poly(Field(2))), DomainError);
}

TEST_CASE("lambda_j examples") {
  CHECK(lambda_j_recursive(1, P("1,1,1@2")) == 2);
  CHECK(lambda_j_recursive(2, P("0,1,1@2")) == 2);
  CHECK(lambda_j_mobius(2, P("0,1,1@2")) == 2);
  CHECK(lambda_j_mobius(2, P("0,0,1@2")) == 3);
  CHECK(lambda_j_mobius(2, P("1,1,1@2")) == 4);
  for (int j = 1; j <= 4; ++j) {
    CHECK(lambda_j_recursive(j, P("1@2")) == 0);
    CHECK(lambda_j_mobius(j, P("2@3")) == 0);
  }
  CHECK(lambda_j_recursive(0, P("2@3")) == 1);
  CHECK(lambda_j_recursive(0, P("0,1@3")) == 0);
  CHECK_THROWS_AS(lambda_j_mobius(1, Poly(Field(2))), DomainError);
  CHECK_THROWS_AS(lambda_j_recursive(2, Poly(Field(2))), DomainError);

  // Unit invariance Lambda_j(cf) = Lambda_j(f).
  Field F(5);
  for (const Poly& f : enumerate_monics(F, 4))
    for (Residue c = 2; c < 5; ++c) CHECK(lambda_j_mobius(3, f.scaled(c)) == lambda_j_mobius(3, f));
}

TEST_CASE("lambda_tilde, delta_m, closed average") {
  CHECK(lambda_tilde(1, P("1,1,1@2")) == 1);
  CHECK(lambda_tilde(1, P("0,1,1@2")) == -1);
  CHECK(lambda_tilde(1, P("0,1@2")) == 0);

  Field F(3);
  for (int n = 1; n <= 4; ++n)
    for (const Poly& f : enumerate_monics(F, n)) CHECK(delta_m(1, f) == 1);
  CHECK(delta_m(2, P("0,1,1@2")) == -1);
  CHECK(delta_m(2, P("1,1,1@2")) == 1);
  CHECK_THROWS_AS(delta_m(0, P("1,1@2")), DomainError);

  CHECK(vm_average_closed(2, 2, 2) == 12);
  CHECK(vm_average_closed(3, 1, 4) == 81);
  CHECK(vm_average_closed(2, 3, 1) == 2);
}

TEST_CASE("e_natural") {
  CHECK(e_natural(Field(2), 1, 1) == Rational(1));
  CHECK(e_natural(Field(2), 1, 2) == Rational(3, 2));
  CHECK(e_natural(Field(3), 1, 2) == Rational(4, 3));  // 3 irreducibles, 2 squares, 1 split
  for (int n = 1; n <= 4; ++n) CHECK(e_natural(Field(3), 0, n) == 0);
}

TEST_CASE("shape functions agree with the brute-force divisor oracle") {
  for (std::uint32_t q : {2u, 3u}) {
    BruteForce bf{Field(q), {}};
    for (int n = 0; n <= 4; ++n)
      for (const Poly& f : enumerate_monics(bf.F, n)) {
        REQUIRE(mobius(f) == bf.mu(f));
        for (int j = 1; j <= 3; ++j) REQUIRE(lambda_j_mobius(j, f) == bf.lambda_j(j, f));
      }
  }
}

TEST_CASE("recursion equals Möbius form, bound holds, divisor sums are deg^j") {
  for (std::uint32_t q : {2u, 3u}) {
    Field F(q);
    FactorSieve sieve(F, 6);
    for (int n = 0; n <= 6; ++n)
      for (std::uint64_t i = 0; i < monic_count(q, n); ++i) {
        const auto& s = sieve.shape(n, i);
        for (int j = 0; j <= 4; ++j) {
          const auto v = lambda_j_mobius(j, s);
          REQUIRE(v == lambda_j_recursive(j, s));
          CHECK(v >= 0);
          CHECK(v <= ipow64(n, j));
        }
      }
  }
  // sum_{d | f} Lambda_j(d) = deg^j f, with divisors found by trial division.
  BruteForce bf{Field(3), {}};
  for (const Poly& f : enumerate_monics(bf.F, 4))
    for (int j = 1; j <= 3; ++j) {
      std::int64_t s = 0;
      for (const Poly& d : bf.monic_divisors(f)) s += lambda_j_mobius(j, d);
      CHECK(s == ipow64(4, j));
    }
}

TEST_CASE("coprime factorization identity") {
  std::mt19937_64 rng(2024);
  auto binom = [](int n, int k) {
    std::int64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
  };
  for (std::uint32_t q : {2u, 3u, 5u}) {
    Field F(q);
    int done = 0;
    while (done < 200) {
      const int df = 1 + static_cast<int>(rng() % 4), dg = 1 + static_cast<int>(rng() % 4);
      const Poly f = monic_from_index(F, df, rng() % monic_count(q, df));
      const Poly g = monic_from_index(F, dg, rng() % monic_count(q, dg));
      if (!gcd(f, g).is_one()) continue;
      ++done;
      for (int j = 0; j <= 4; ++j) {
        std::int64_t rhs = 0;
        for (int l = 0; l <= j; ++l) rhs += binom(j, l) * lambda_j_mobius(l, f) * lambda_j_mobius(j - l, g);
        CHECK(lambda_j_mobius(j, f * g) == rhs);
      }
    }
  }
}

TEST_CASE("sum over M_n equals q^n (n^j - (n-1)^j)") {
  for (std::uint32_t q : {2u, 3u, 5u}) {
    FactorSieve sieve(Field(q), 6);
    for (int n = 1; n <= 6; ++n)
      for (int j = 1; j <= 4; ++j) {
        BigInt s = 0;
        for (auto v : lambda_values(sieve, j, n)) s += v;
        CHECK(s == vm_average_closed(q, j, n));
      }
  }
}
