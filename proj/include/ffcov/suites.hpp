#pragma once

#include "ffcov/rmt.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace ffcov {

/// Outcome of one batch of checks. `worst` is the largest observed residual
/// (or residual / tolerance for scaled checks) where that is meaningful.
struct CheckTally {
  explicit CheckTally(std::string n = {}) : name(std::move(n)) {}

  std::string name;
  std::uint64_t checked = 0;
  std::uint64_t failed = 0;
  double worst = 0;
  std::string first_failure;

  bool ok() const { return failed == 0 && checked > 0; }
  void record(bool pass, const std::string& what);
};

/// Exact suites over every monic polynomial of degree <= max_deg:
/// recursion vs Mobius form, 0 <= Lambda_j <= deg^j, the M_n sum of Lambda_j,
/// and the coprime convolution identity on `pairs` random coprime pairs per q.
std::vector<CheckTally> identity_suites(const std::vector<std::uint32_t>& qs, int max_deg, int max_j, int pairs,
                                        std::uint64_t seed);

/// Character class sizes against the counting formulas, and orthogonality
/// residuals on random residue pairs, for every (q, m <= max_m) with Phi <= max_phi.
std::vector<CheckTally> character_suites(const std::vector<std::uint32_t>& qs, int max_m, std::uint64_t max_phi,
                                         int pairs, std::uint64_t seed);

/// Every nontrivial character mod T^m: zeros on |u| = q^{-1/2} or |u| = 1;
/// primitive ones have degree m - 1 and the zero at u = 1 exactly when even.
std::vector<CheckTally> rh_suites(const std::vector<std::uint32_t>& qs, const std::vector<int>& ms, unsigned threads);

/// Primitive characters mod T^m: explicit formula for n <= max_n, and the
/// delta_m / hook Schur equality for odd ones with m' + k <= max_mk.
std::vector<CheckTally> explicit_suites(const std::vector<std::uint32_t>& qs, int m, int max_n, int max_mk,
                                        unsigned threads);

/// step_identity_check for n <= max_n, 0 <= h <= n - 4, 1 <= j, k <= max_jk.
std::vector<CheckTally> step_suites(const std::vector<std::uint32_t>& qs, int max_n, int max_jk, unsigned threads);

struct McRow {
  std::string statistic;
  int N = 0;
  std::string params;
  McEstimate estimate;
  Complex exact;
  bool pass = false;
};

/// Monte Carlo checks on U(N), N = 1..max_N: |Tr g^n|^2 (n <= 6), hook Schur
/// orthonormality (|lambda|, |mu| <= 5), H_j^{(n)} covariances (j, k <= 3,
/// n, m <= 6) and the ratio theorem at fixed parameter points.
std::vector<McRow> rmt_mc_suite(int max_N, std::uint64_t samples, std::uint64_t seed, unsigned threads);

}  // namespace ffcov
