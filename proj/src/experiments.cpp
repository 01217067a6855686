#include "ffcov/experiments.hpp"

#include "ffcov/arith_fn.hpp"
#include "ffcov/characters.hpp"
#include "ffcov/error.hpp"
#include "ffcov/intervals.hpp"
#include "ffcov/lfunc.hpp"
#include "ffcov/parallel.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace ffcov {

void Budget::require(std::uint64_t visits, const std::string& what) const {
  if (visits > max_enum)
    throw ResourceError(what + " needs " + std::to_string(visits) + " polynomial visits; budget is " +
                        std::to_string(max_enum));
}

std::int64_t limit_sum(int j, int k, int upper) {
  std::int64_t s = 0;
  for (int d = 1; d <= upper; ++d) s += lambda_mean(j, d) * lambda_mean(k, d);
  return s;
}

namespace {

void check_args(const FactorSieve& sieve, int n, int j, int k) {
  if (n < 1) throw DomainError("covariance needs n >= 1");
  if (j < 0 || k < 0) throw DomainError("negative order");
  if (n > sieve.max_degree()) throw DomainError("sieve does not reach degree " + std::to_string(n));
}

BigInt qn(const FactorSieve& sieve, int n) { return ipow(sieve.field().q(), n); }

BigInt dot(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
  BigInt s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::int64_t p = a[i] * b[i];
    if (p != 0) s += p;
  }
  return s;
}

std::vector<std::int64_t> tilde_values(const FactorSieve& sieve, int j, int n) {
  auto v = lambda_values(sieve, j, n);
  const std::int64_t mean = lambda_mean(j, n);
  for (auto& x : v) x -= mean;
  return v;
}

}  // namespace

Rational covar1_empirical(const FactorSieve& sieve, int n, int j, int k) {
  check_args(sieve, n, j, k);
  return Rational(dot(lambda_values(sieve, j, n), lambda_values(sieve, k, n)), qn(sieve, n));
}

Rational covar2_direct(const FactorSieve& sieve, int n, int j, int k) {
  check_args(sieve, n, j, k);
  return Rational(dot(tilde_values(sieve, j, n), tilde_values(sieve, k, n)), qn(sieve, n));
}

Rational covar2_subtracted(const FactorSieve& sieve, int n, int j, int k) {
  return covar1_empirical(sieve, n, j, k) - Rational(lambda_mean(j, n) * lambda_mean(k, n));
}

Rational covar2_empirical(const FactorSieve& sieve, int n, int j, int k) {
  const Rational direct = covar2_direct(sieve, n, j, k);
  if (direct != covar2_subtracted(sieve, n, j, k))
    throw IntegrityError("direct and subtracted Lambda~ covariances differ");
  return direct;
}

Rational covar3_empirical(const FactorSieve& sieve, int n, int h, int j, int k) {
  if (h == -1) return covar2_empirical(sieve, n, j, k);
  check_args(sieve, n, j, k);
  if (h < 0 || h >= n) throw DomainError("interval radius needs -1 <= h < n");
  const std::uint32_t q = sieve.field().q();
  const auto a = interval_sums(tilde_values(sieve, j, n), q, h);
  const auto b = interval_sums(tilde_values(sieve, k, n), q, h);
  // Every f in a bucket sees the same interval: q^{h+1} copies, cancelled by the 1/q^{h+1}.
  return Rational(dot(a, b), qn(sieve, n));
}

Rational covar3_naive(const Field& field, int n, int h, int j, int k) {
  if (h < -1 || h >= n) throw DomainError("interval radius needs -1 <= h < n");
  BigInt total = 0;
  for (const Poly& f : enumerate_monics(field, n)) {
    if (h == -1) {
      total += BigInt(lambda_tilde(j, f)) * lambda_tilde(k, f);
    } else {
      const IntervalSpec spec(f, h);
      total += BigInt(psi_j_tilde(j, spec)) * psi_j_tilde(k, spec);
    }
  }
  return Rational(total, ipow(field.q(), n + std::max(h, -1) + 1));
}

namespace {

// Digits of a residue mod T^w scaled by c.
std::uint64_t scale_residue(std::uint64_t code, std::uint32_t c, std::uint32_t q, int w) {
  std::uint64_t out = 0, place = 1;
  for (int i = 0; i < w; ++i) {
    out += (code % q) * c % q * place;
    code /= q;
    place *= q;
  }
  return out;
}

}  // namespace

StepIdentity step_identity_check(const FactorSieve& sieve, int n, int h, int j, int k, unsigned threads) {
  check_args(sieve, n, j, k);
  if (h < 0 || h >= n) throw DomainError("step identity needs 0 <= h < n");
  const std::uint32_t q = sieve.field().q();
  const int w = n - h;
  const auto lj = lambda_values(sieve, j, n);
  const auto lk = lambda_values(sieve, k, n);
  const Rational Ej = e_natural(sieve, j, n);
  const Rational Ek = e_natural(sieve, k, n);
  const BigInt qh1 = ipow(q, h + 1);
  StepIdentity out;

  // Interval form: q^{h+1} sum over buckets of the natural Psi~ products.
  {
    const std::uint64_t width = monic_count(q, h + 1);
    const std::uint64_t buckets = lj.size() / width;
    std::vector<std::int64_t> sj(buckets, 0), sk(buckets, 0), cnt(buckets, 0);
    for (std::uint64_t i = 0; i < lj.size(); ++i) {
      if (i % q == 0) continue;
      sj[i / width] += lj[i];
      sk[i / width] += lk[i];
      ++cnt[i / width];
    }
    Rational acc = 0;
    for (std::uint64_t b = 0; b < buckets; ++b) acc += (sj[b] - cnt[b] * Ej) * (sk[b] - cnt[b] * Ek);
    out.lhs_intervals = acc * qh1;
  }

  // Congruence form over P_n^nat = c M_n^nat, classes mod T^{n-h}.
  {
    const std::uint64_t R = monic_count(q, w);
    std::vector<std::int64_t> sj(R, 0), sk(R, 0), cnt(R, 0);
    for (std::uint64_t i = 0; i < lj.size(); ++i) {
      if (i % q == 0) continue;
      const std::uint64_t r = i % R;
      for (std::uint32_t c = 1; c < q; ++c) {
        const std::uint64_t rc = scale_residue(r, c, q, w);
        sj[rc] += lj[i];
        sk[rc] += lk[i];
        ++cnt[rc];
      }
    }
    Rational acc = 0;
    for (std::uint64_t r = 0; r < R; ++r)
      if (cnt[r] != 0) acc += (sj[r] - cnt[r] * Ej) * (sk[r] - cnt[r] * Ek);
    out.lhs_congruences = acc * Rational(qh1, BigInt(q - 1));
  }

  // Character form.
  {
    const auto G = UnitGroup::build(q, w);
    const auto wj = residue_weights(lj, q, n, w);
    const auto wk = residue_weights(lk, q, n, w);
    const auto ids = character_ids(*G, [](const CharacterFlags& f) { return f.is_even && !f.is_trivial; });
    std::vector<Complex> terms(ids.size());
    parallel_for(ids.size(), threads, [&](std::size_t i) {
      const auto chi = character_from_id(G, ids[i]);
      terms[i] = twisted_sum(chi, wj) * std::conj(twisted_sum(chi, wk));
    });
    Complex sum = 0;
    for (const auto& t : terms) sum += t;
    out.rhs = to_double(Rational(qh1 * (q - 1), BigInt(G->order()))) * sum;
  }

  out.residual = std::abs(to_double(out.lhs_intervals) - out.rhs);
  out.tolerance = 1e-6 * std::pow(static_cast<double>(q), n + h + 1);
  out.pass = out.lhs_intervals == out.lhs_congruences && out.residual <= out.tolerance;
  return out;
}

EnsembleAverage frobenius_ensemble_average(std::uint32_t q, int M, int j, int k, int n, unsigned threads) {
  if (M < 3) throw DomainError("ensemble average needs M >= 3");
  if (j < 1 || k < 1 || n < 1) throw DomainError("ensemble average needs j, k, n >= 1");
  const auto G = UnitGroup::build(q, M + 1);
  const auto ids = character_ids(*G, [](const CharacterFlags& f) { return f.is_even && f.is_primitive; });
  std::vector<Complex> values(ids.size());
  const int top = std::max(j, k);
  parallel_for(ids.size(), threads, [&](std::size_t i) {
    const auto spec = frobenius_spectrum(character_from_id(G, ids[i]));
    const auto H = h_table(top, n, spec.stats(n));
    values[i] = H[static_cast<std::size_t>(j)][static_cast<std::size_t>(n)] *
                std::conj(H[static_cast<std::size_t>(k)][static_cast<std::size_t>(n)]);
  });
  EnsembleAverage out;
  out.q = q;
  out.M = M;
  out.j = j;
  out.k = k;
  out.n = n;
  out.characters = ids.size();
  Complex sum = 0;
  for (const auto& v : values) sum += v;
  out.average = ids.empty() ? Complex(0) : sum / static_cast<double>(ids.size());
  out.haar = h_covariance_exact(j, k, n, n, M - 1);
  out.deviation = std::abs(out.average - static_cast<double>(out.haar));
  return out;
}

CovarReport run_covar(int experiment, std::uint32_t q, int n, int h, int j, int k, std::uint64_t seed,
                      const Budget& budget, bool timing) {
  if (experiment < 1 || experiment > 3) throw DomainError("experiment must be 1, 2 or 3");
  if (j < 1 || k < 1) throw DomainError("covariances need j, k >= 1");
  if (n < 1) throw DomainError("covariances need n >= 1");
  CovarReport r;
  r.experiment = "covar" + std::to_string(experiment);
  r.q = q;
  r.n = n;
  r.h = experiment == 3 ? h : (experiment == 2 ? -1 : 0);
  r.j = j;
  r.k = k;
  r.seed = seed;
  const int upper = experiment == 1 ? n : experiment == 2 ? n - 1 : n - h - 2;
  if (experiment == 3 && (h < -1 || h >= n)) throw DomainError("interval radius needs -1 <= h < n");
  r.limit = limit_sum(j, k, upper);
  if (experiment == 3 && h > n - 4) r.warning = "h > n - 4: outside the range of the limit theorem";
  const auto start = std::chrono::steady_clock::now();
  try {
    Field F(q);
    std::uint64_t visits = 0;
    for (int d = 0; d <= n; ++d) visits += monic_count(q, d);
    budget.require(visits, "enumeration of degree <= " + std::to_string(n) + " over F_" + std::to_string(q));
    const FactorSieve sieve(F, n);
    switch (experiment) {
      case 1: r.empirical = covar1_empirical(sieve, n, j, k); break;
      case 2: r.empirical = covar2_empirical(sieve, n, j, k); break;
      default: r.empirical = covar3_empirical(sieve, n, h, j, k); break;
    }
    r.deviation = std::abs(to_double(*r.empirical - Rational(r.limit)));
  } catch (const ResourceError& e) {
    r.error = e.what();
    r.deviation = std::nan("");
  }
  if (timing)
    r.millis = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<CovarReport> q_sweep(int experiment, const std::vector<std::uint32_t>& qs, int n, int h, int j, int k,
                                 std::uint64_t seed, const Budget& budget, bool timing) {
  std::vector<CovarReport> out;
  for (std::uint32_t q : qs) out.push_back(run_covar(experiment, q, n, h, j, k, seed, budget, timing));
  return out;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_covar_csv(std::ostream& os, const std::vector<CovarReport>& rows) {
  os << "experiment,q,n,h,j,k,empirical_num,empirical_den,empirical_f64,limit,deviation,seed,millis\n";
  for (const auto& r : rows) {
    os << r.experiment << ',' << r.q << ',' << r.n << ',' << r.h << ',' << r.j << ',' << r.k << ',';
    if (r.empirical)
      os << numerator(*r.empirical) << ',' << denominator(*r.empirical) << ',' << format_double(to_double(*r.empirical));
    else
      os << ",,";
    os << ',' << r.limit << ',' << format_double(r.deviation) << ',' << r.seed << ',' << r.millis << '\n';
  }
}

nlohmann::json covar_json(const std::vector<CovarReport>& rows) {
  auto arr = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json o{{"experiment", r.experiment}, {"q", r.q}, {"n", r.n}, {"h", r.h}, {"j", r.j}, {"k", r.k}};
    if (r.empirical) {
      o["empirical_num"] = to_string(numerator(*r.empirical));
      o["empirical_den"] = to_string(denominator(*r.empirical));
      o["empirical_f64"] = to_double(*r.empirical);
    } else {
      o["empirical_num"] = nullptr;
      o["empirical_den"] = nullptr;
      o["empirical_f64"] = nullptr;
    }
    o["limit"] = r.limit;
    o["deviation"] = std::isnan(r.deviation) ? nlohmann::json(nullptr) : nlohmann::json(r.deviation);
    o["seed"] = r.seed;
    o["millis"] = r.millis;
    if (!r.warning.empty()) o["warning"] = r.warning;
    if (!r.error.empty()) o["error"] = r.error;
    arr.push_back(std::move(o));
  }
  return arr;
}

}  // namespace ffcov
