#pragma once

#include "ffcov/factor.hpp"
#include "ffcov/fq_poly.hpp"
#include "ffcov/numeric.hpp"

#include <cstdint>
#include <vector>

namespace ffcov {

// All functions below see a polynomial only through its factor shape, so the
// shape overloads are what hot loops call (shapes come from a FactorSieve);
// the Poly overloads factor first and throw DomainError on the zero polynomial.

int mobius(const FactorShape& s);
int mobius(const Poly& f);

/// deg P on prime powers c P^k, else 0.
std::int64_t von_mangoldt(const FactorShape& s);
std::int64_t von_mangoldt(const Poly& f);

/// Lambda_j(f) = sum over monic d | f of mu(d) deg(f/d)^j.
std::int64_t lambda_j_mobius(int j, const FactorShape& s);
std::int64_t lambda_j_mobius(int j, const Poly& f);

/// Lambda_j through the divisor-sum recursion
///   Lambda_j(f) = sum_{d | f} Lambda_{j-1}(d) Lambda(f/d) + Lambda_{j-1}(f) deg f,
/// with Lambda_0 the indicator of constants. Kept independent of the Möbius form.
std::int64_t lambda_j_recursive(int j, const FactorShape& s);
std::int64_t lambda_j_recursive(int j, const Poly& f);

/// n^j - (n-1)^j: the mean of Lambda_j over M_n (0 for n = 0 and j >= 1).
std::int64_t lambda_mean(int j, int n);

/// Lambda_j(f) - (n^j - (n-1)^j), n = deg f.
std::int64_t lambda_tilde(int j, const FactorShape& s);
std::int64_t lambda_tilde(int j, const Poly& f);

/// Sum over monic d | f with deg d < m of mu(d).
std::int64_t delta_m(int m, const FactorShape& s);
std::int64_t delta_m(int m, const Poly& f);

/// q^n (n^j - (n-1)^j).
BigInt vm_average_closed(std::uint32_t q, int j, int n);

/// Average of Lambda_j over monic degree-n polynomials with f(0) != 0.
/// Memoized per (q, j, n); thread-safe.
Rational e_natural(const Field& field, int j, int n);
Rational e_natural(const FactorSieve& sieve, int j, int n);

/// Lambda_j for every monic polynomial of degree n, indexed like monic_from_index.
std::vector<std::int64_t> lambda_values(const FactorSieve& sieve, int j, int n);
/// delta_m for every monic polynomial of degree n.
std::vector<std::int64_t> delta_values(const FactorSieve& sieve, int m, int n);

}  // namespace ffcov
