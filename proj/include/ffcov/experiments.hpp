#pragma once

#include "ffcov/factor.hpp"
#include "ffcov/numeric.hpp"
#include "ffcov/rmt.hpp"

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace ffcov {

/// Caps the number of polynomials an experiment may visit.
struct Budget {
  std::uint64_t max_enum = 10'000'000;
  /// ResourceError unless `visits` fits.
  void require(std::uint64_t visits, const std::string& what) const;
};

/// sum_{d=1}^{upper} (d^j - (d-1)^j)(d^k - (d-1)^k); 0 when upper <= 0.
std::int64_t limit_sum(int j, int k, int upper);

/// (1/q^n) sum_{M_n} Lambda_j Lambda_k.
Rational covar1_empirical(const FactorSieve& sieve, int n, int j, int k);
/// (1/q^n) sum_{M_n} Lambda~_j Lambda~_k, summed directly.
Rational covar2_direct(const FactorSieve& sieve, int n, int j, int k);
/// covar1 - (n^j - (n-1)^j)(n^k - (n-1)^k).
Rational covar2_subtracted(const FactorSieve& sieve, int n, int j, int k);
/// covar2_direct after checking it equals covar2_subtracted (IntegrityError otherwise).
Rational covar2_empirical(const FactorSieve& sieve, int n, int j, int k);
/// (1/q^{h+1}) (1/q^n) sum_{f in M_n} Psi~_j(f;h) Psi~_k(f;h), one pass over
/// M_n accumulating per-interval sums. h = -1 gives covar2.
Rational covar3_empirical(const FactorSieve& sieve, int n, int h, int j, int k);
/// The same quantity by a double loop over f and the members of I(f;h). Tiny inputs only.
Rational covar3_naive(const Field& field, int n, int h, int j, int k);

struct StepIdentity {
  Rational lhs_intervals;    // sum_{f in M_n} Psi~nat_j(f;h) Psi~nat_k(f;h)
  Rational lhs_congruences;  // q^{h+1}/(q-1) sum over g1 = g2 mod T^{n-h} in P_n^nat
  Complex rhs;               // q^{h+1}(q-1)/Phi sum over even chi != chi_0 of S_j conj(S_k)
  double residual = 0;       // |lhs - rhs|
  double tolerance = 0;      // 1e-6 q^{n+h+1}
  bool pass = false;         // both exact forms equal and residual <= tolerance
};

/// Modulus T^{n-h}; requires 0 <= h < n and j, k >= 0.
StepIdentity step_identity_check(const FactorSieve& sieve, int n, int h, int j, int k, unsigned threads = 1);

struct EnsembleAverage {
  std::uint32_t q = 0;
  int M = 0;
  int j = 0, k = 0, n = 0;
  std::uint64_t characters = 0;
  Complex average;
  std::int64_t haar = 0;
  double deviation = 0;
};

/// Average of H_j^{(n)}(Theta) conj(H_k^{(n)}(Theta)) over the primitive even
/// characters mod T^{M+1}, against the U(M-1) value. Requires M >= 3.
EnsembleAverage frobenius_ensemble_average(std::uint32_t q, int M, int j, int k, int n, unsigned threads = 1);

struct CovarReport {
  std::string experiment;  // covar1 | covar2 | covar3
  std::uint32_t q = 0;
  int n = 0, h = 0, j = 0, k = 0;
  std::optional<Rational> empirical;
  std::int64_t limit = 0;
  double deviation = 0;
  std::uint64_t seed = 0;
  std::int64_t millis = 0;
  std::string warning;
  std::string error;
};

/// experiment in {1, 2, 3}. For 3, h = -1 is computed as covar2 and h > n - 4
/// sets a warning. Budget errors are recorded in the report, not thrown.
CovarReport run_covar(int experiment, std::uint32_t q, int n, int h, int j, int k, std::uint64_t seed,
                      const Budget& budget, bool timing = false);
/// One report per q, in grid order.
std::vector<CovarReport> q_sweep(int experiment, const std::vector<std::uint32_t>& qs, int n, int h, int j, int k,
                                 std::uint64_t seed, const Budget& budget, bool timing = false);

/// experiment,q,n,h,j,k,empirical_num,empirical_den,empirical_f64,limit,deviation,seed,millis
void write_covar_csv(std::ostream& os, const std::vector<CovarReport>& rows);
nlohmann::json covar_json(const std::vector<CovarReport>& rows);

/// Printable %.17g.
std::string format_double(double x);

}  // namespace ffcov
