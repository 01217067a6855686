#pragma once

#include "ffcov/rng.hpp"

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace ffcov {

using Complex = std::complex<double>;

/// Eigenvalues of a unitary conjugacy class together with its power traces
/// p_k = Tr(g^k), k = 0..K. Every statistic below is a class function, so
/// nothing else about the matrix is kept.
class SpectrumStats {
 public:
  SpectrumStats(std::vector<Complex> eigenvalues, int max_power);
  /// Eigenvalues e^{2 pi i theta}.
  static SpectrumStats from_angles(std::span<const double> angles, int max_power);

  int dimension() const { return static_cast<int>(eigenvalues_.size()); }
  int max_power() const { return static_cast<int>(powers_.size()) - 1; }
  /// Throws DomainError past max_power().
  Complex power(int k) const;
  const std::vector<Complex>& eigenvalues() const { return eigenvalues_; }
  const std::vector<Complex>& powers() const { return powers_; }

 private:
  std::vector<Complex> eigenvalues_;
  std::vector<Complex> powers_;
};

/// A hook partition (arm, 1^leg): one row of length `arm` over a column of `leg` ones.
struct HookPartition {
  int arm = 1;
  int leg = 0;

  int size() const { return arm + leg; }
  int length() const { return leg + 1; }
  friend bool operator==(const HookPartition&, const HookPartition&) = default;
};

/// e_0..e_K and h_0..h_K of a spectrum (e_k = 0 for k > N).
struct SymFnValues {
  int dimension = 0;
  std::vector<Complex> e;
  std::vector<Complex> h;
};

/// Newton's identities from the power traces, up to the spectrum's max_power.
SymFnValues sym_fn_values(const SpectrumStats& s);

/// H_j^{(n)} from H_1^{(n)} = -p_n and
///   H_j^{(n)} = sum_{l + m = n, l, m >= 1} H_1^{(m)} H_{j-1}^{(l)} + n H_{j-1}^{(n)}.
Complex h_statistic(int j, int n, const SpectrumStats& s);
/// Table t[j][n] for 1 <= j <= max_j, 1 <= n <= max_n (row/column 0 unused).
std::vector<std::vector<Complex>> h_table(int max_j, int max_n, const SpectrumStats& s);

/// Hook Schur function by the alternating Pieri telescope
///   s_{(m,1^k)} = sum_{i=0}^{k} (-1)^i e_{k-i} h_{m+i},
/// and 0 when the hook is longer than the dimension.
Complex hook_schur(HookPartition hook, const SymFnValues& v);
Complex hook_schur(HookPartition hook, const SpectrumStats& s);

/// Integer hook expansion of H_j^{(r)} in U(N):
///   sum_{nu=1}^{min(r,N)} (-1)^nu (nu^j - (nu-1)^j) s_{(r-nu+1, 1^{nu-1})}.
std::vector<std::pair<HookPartition, std::int64_t>> h_to_schur_coeffs(int j, int r, int N);

/// Closed form of the Haar integral of H_j^{(n)} conj(H_k^{(m)}) over U(N).
std::int64_t h_covariance_exact(int j, int k, int n, int m, int N);
/// The same integral from h_to_schur_coeffs and orthonormality of Schur functions.
std::int64_t h_covariance_via_schur(int j, int k, int n, int m, int N);

/// Eigenvalues of one Haar-distributed U(N) element: complex Ginibre matrix,
/// Householder QR, then the phase correction Q diag(R_ii / |R_ii|).
SpectrumStats haar_sample(int N, int max_power, Rng& rng);

/// `samples` Haar spectra, generated in fixed shards each with its own split
/// stream and concatenated in shard order: output independent of `threads`.
std::vector<SpectrumStats> haar_ensemble(int N, int max_power, std::uint64_t samples, std::uint64_t seed,
                                         unsigned threads = 1);

struct McEstimate {
  Complex mean;
  double stderr = 0.0;
  std::uint64_t samples = 0;

  double deviation(Complex exact) const { return std::abs(mean - exact); }
  /// |mean - exact| within n_se standard errors (plus rounding slack for
  /// integrands that are constant up to floating-point noise).
  bool within(Complex exact, double n_se = 5.0) const;
};

using ClassStatistic = std::function<Complex(const SpectrumStats&)>;

McEstimate estimate(std::span<const SpectrumStats> ensemble, const ClassStatistic& f);
McEstimate mc_integrate(const ClassStatistic& f, int N, int max_power, std::uint64_t samples, std::uint64_t seed,
                        unsigned threads = 1);

/// Right-hand side of the 2x2 ratio theorem; DomainError if AB = 1 or CD = 1.
Complex ratio_closed_form(Complex A, Complex B, Complex C, Complex D, int N);
/// det(1 - A g) det(1 - B g^{-1}) / (det(1 - C g) det(1 - D g^{-1})) for one spectrum.
Complex ratio_integrand(Complex A, Complex B, Complex C, Complex D, const SpectrumStats& s);

struct RatioCheck {
  McEstimate lhs;
  Complex rhs;
  bool pass = false;
};

/// Requires |C|, |D| < 1 and AB != 1, CD != 1 (DomainError otherwise).
RatioCheck ratio_theorem_check(Complex A, Complex B, Complex C, Complex D, int N, std::uint64_t samples,
                               std::uint64_t seed, unsigned threads = 1);

}  // namespace ffcov
