#pragma once

#include "ffcov/fq_poly.hpp"
#include "ffcov/numeric.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace ffcov {

/// The short interval I(f; h) = { g : deg(f - g) <= h } around a monic f of
/// degree n > h. The center is stored with its low h + 1 coefficients zeroed,
/// so equal specs describe equal intervals.
class IntervalSpec {
 public:
  /// Throws DomainError unless f is monic and 0 <= h < deg f.
  IntervalSpec(const Poly& center, int h);

  const Poly& center() const { return center_; }
  int h() const { return h_; }
  int degree() const { return center_.degree(); }
  /// q^{h+1}.
  std::uint64_t size() const;
  /// Index of this interval among the q^{n-h-1} intervals partitioning M_n.
  std::uint64_t bucket() const;

  friend bool operator==(const IntervalSpec&, const IntervalSpec&) = default;

 private:
  Poly center_;
  int h_;
};

/// Members in order of their low coefficients, a_0 fastest. All are monic.
std::vector<Poly> interval_members(const IntervalSpec& spec);

/// Sum of Lambda_j over the interval.
std::int64_t psi_j(int j, const IntervalSpec& spec);
/// Sum of Lambda_j - (n^j - (n-1)^j) over the interval.
std::int64_t psi_j_tilde(int j, const IntervalSpec& spec);
/// Sum over members g with g(0) != 0 of Lambda_j(g) - E_j^natural(n).
Rational psi_j_tilde_natural(int j, const IntervalSpec& spec);

/// Coefficient reversal a_0 + ... + a_n T^n -> a_n + ... + a_0 T^n. Requires f(0) != 0.
Poly involution_star(const Poly& f);

/// f^{[i]} = a_i + a_{i+1} T + ... + a_n T^{n-i}, defined for every f.
Poly drop_low(const Poly& f, int i);
/// f / T^i; throws DomainError unless T^i divides f.
Poly shift_map(const Poly& f, int i);

/// Verifies, by enumerating both sides, the split of Psi_j(f; h) by T-adic
/// valuation of the members:
///   Psi_j(f;h) = sum_{i=0}^{h} sum_{g in M_{n-i}, g(0)!=0, deg(T^i g - f) <= h} Lambda_j(T^i g)
///                + Lambda_j(T^{h+1} f^{[h+1]}).
bool valuation_decomposition_check(int j, const IntervalSpec& spec);

/// Sums `values` (indexed like monic_from_index for degree n) over each of the
/// q^{n-h-1} intervals of radius h: the bucket of index i is i / q^{h+1}.
std::vector<std::int64_t> interval_sums(std::span<const std::int64_t> values, std::uint32_t q, int h);

}  // namespace ffcov
