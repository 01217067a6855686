#pragma once

#include "ffcov/characters.hpp"
#include "ffcov/factor.hpp"
#include "ffcov/rmt.hpp"
#include "ffcov/tolerances.hpp"

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace ffcov {

/// L(u, chi) = sum_n c_n u^n with c_n = sum over monic f of degree n of chi(f).
struct LPolynomial {
  std::uint32_t q = 0;
  int m = 0;
  std::uint64_t char_id = 0;
  std::vector<Complex> coeffs;

  /// Index of the last coefficient above `zero_tol` (scaled by q^{n/2}).
  int degree(double zero_tol = default_tolerances().coefficient_zero) const;
  Complex operator()(Complex u) const;
};

/// Coefficients c_0 .. c_{m-1+extra} by direct summation; DomainError for the trivial character.
LPolynomial l_polynomial(const Character& chi, int extra = 0);

/// Same coefficients from the Euler product over irreducibles of degree < m,
/// expanded as a power series through degree m - 1.
std::vector<Complex> euler_product_coeffs(const Character& chi, const FactorSieve& sieve);

/// Inverse roots alpha of L (L(u) = c_D prod (1 - alpha u) / ...), from the
/// companion matrix of u^D L(1/u) normalized to be monic.
std::vector<Complex> inverse_roots(const LPolynomial& L, double zero_tol = default_tolerances().coefficient_zero);

struct RhReport {
  bool pass = false;
  int degree = 0;
  int unit_circle_roots = 0;  // roots with |u| = 1
  double max_deviation = 0;   // distance of |u| from the nearer of q^{-1/2} and 1
};

/// Every zero u of L satisfies |u| = q^{-1/2} or |u| = 1 within `tol`.
RhReport rh_check(const LPolynomial& L, double tol = default_tolerances().root);

struct FrobeniusSpectrum {
  std::uint32_t q = 0;
  int m = 0;
  std::uint64_t char_id = 0;
  int lambda_chi = 0;
  std::vector<double> angles;  // sorted, in [0, 1)

  int dimension() const { return static_cast<int>(angles.size()); }
  SpectrumStats stats(int max_power) const { return SpectrumStats::from_angles(angles, max_power); }
  /// (1 - lambda u) prod (1 - sqrt(q) e^{2 pi i theta} u).
  std::vector<Complex> reconstruct() const;
};

/// Primitive chi, m >= 2. The zero at u = 1 of an even character is divided
/// out before root finding. IntegrityError if a root leaves the critical
/// circle, the trivial zero is missing, or reconstruction disagrees with L.
FrobeniusSpectrum frobenius_spectrum(const Character& chi, const Tolerances& tol = default_tolerances());

/// Aggregates per-polynomial weights over M_n (indexed like monic_from_index)
/// by residue mod T^m: w[r] = sum of a(f) over f = r mod T^m.
std::vector<std::int64_t> residue_weights(std::span<const std::int64_t> values, std::uint32_t q, int n, int m);
/// Residue code mod T^m of the monic polynomial of degree n with the given index.
std::uint64_t monic_residue_code(std::uint32_t q, int n, std::uint64_t index, int m);
/// sum_r w[r] chi(r).
Complex twisted_sum(const Character& chi, std::span<const std::int64_t> weights);

/// Variants taking residue_weights of Lambda_j (resp. delta_m) on M_n, for
/// loops over many characters of one modulus.
double explicit_formula_residual(const Character& chi, const FrobeniusSpectrum& spec,
                                 std::span<const std::int64_t> lambda_weights, int n);
double delta_schur_residual(const Character& chi, const FrobeniusSpectrum& spec,
                            std::span<const std::int64_t> delta_weights, int m, int k);

/// |sum_{M_n} Lambda(f) chi(f) + q^{n/2} Tr(Theta^n) + lambda_chi|.
double explicit_formula_residual(const Character& chi, const FrobeniusSpectrum& spec, const FactorSieve& sieve, int n);
/// |q^{-n/2} sum_{M_n} Lambda_j(f) chi(f) - H_j^{(n)}(Theta)|.
double explicit_formula_j_residual(const Character& chi, const FrobeniusSpectrum& spec, const FactorSieve& sieve,
                                   int j, int n);
/// (-1)^{k+1} q^{-(m+k)/2} sum_{M_{m+k}} delta_m(f) chi(f).
Complex delta_sum_normalized(const Character& chi, const FactorSieve& sieve, int m, int k);
/// |delta_sum_normalized - s_{(m,1^k)}(Theta)|, with the hook Schur function 0 when k + 1 > dim Theta.
double delta_schur_residual(const Character& chi, const FrobeniusSpectrum& spec, const FactorSieve& sieve, int m,
                            int k);

/// CSV with header q,m,char_id,lambda_chi,theta_1..theta_W, W the widest
/// spectrum; shorter rows leave trailing fields empty. Angles printed with %.17g.
void write_spectra_csv(std::ostream& os, std::span<const FrobeniusSpectrum> spectra);
std::vector<FrobeniusSpectrum> read_spectra_csv(std::istream& is);

}  // namespace ffcov
