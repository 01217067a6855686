#include "ffcov/rmt.hpp"

#include "ffcov/error.hpp"
#include "ffcov/numeric.hpp"
#include "ffcov/parallel.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ffcov {

SpectrumStats::SpectrumStats(std::vector<Complex> eigenvalues, int max_power)
    : eigenvalues_(std::move(eigenvalues)) {
  if (max_power < 0) throw DomainError("negative max_power");
  powers_.assign(static_cast<std::size_t>(max_power) + 1, Complex(0));
  for (const Complex& w : eigenvalues_) {
    Complex z = 1.0;
    for (int k = 0; k <= max_power; ++k) {
      powers_[static_cast<std::size_t>(k)] += z;
      z *= w;
    }
  }
}

SpectrumStats SpectrumStats::from_angles(std::span<const double> angles, int max_power) {
  std::vector<Complex> w;
  w.reserve(angles.size());
  for (double t : angles) w.push_back(std::polar(1.0, 2 * std::numbers::pi * t));
  return SpectrumStats(std::move(w), max_power);
}

Complex SpectrumStats::power(int k) const {
  if (k < 0 || k > max_power())
    throw DomainError("power trace p_" + std::to_string(k) + " not available (max " +
                      std::to_string(max_power()) + ")");
  return powers_[static_cast<std::size_t>(k)];
}

SymFnValues sym_fn_values(const SpectrumStats& s) {
  const int K = s.max_power();
  const int N = s.dimension();
  SymFnValues v;
  v.dimension = N;
  v.e.assign(static_cast<std::size_t>(K) + 1, Complex(0));
  v.h.assign(static_cast<std::size_t>(K) + 1, Complex(0));
  v.e[0] = v.h[0] = 1.0;
  for (int k = 1; k <= K; ++k) {
    Complex se = 0;
    Complex sh = 0;
    for (int i = 1; i <= k; ++i) {
      const Complex p = s.power(i);
      se += (i % 2 == 1 ? 1.0 : -1.0) * v.e[static_cast<std::size_t>(k - i)] * p;
      sh += v.h[static_cast<std::size_t>(k - i)] * p;
    }
    v.e[static_cast<std::size_t>(k)] = k > N ? Complex(0) : se / static_cast<double>(k);
    v.h[static_cast<std::size_t>(k)] = sh / static_cast<double>(k);
  }
  return v;
}

std::vector<std::vector<Complex>> h_table(int max_j, int max_n, const SpectrumStats& s) {
  if (max_j < 1 || max_n < 1) throw DomainError("h_table needs j, n >= 1");
  if (max_n > s.max_power()) throw DomainError("insufficient power traces for H_j^{(n)}");
  std::vector<std::vector<Complex>> H(static_cast<std::size_t>(max_j) + 1,
                                      std::vector<Complex>(static_cast<std::size_t>(max_n) + 1, Complex(0)));
  for (int n = 1; n <= max_n; ++n) H[1][static_cast<std::size_t>(n)] = -s.power(n);
  for (int j = 2; j <= max_j; ++j) {
    const auto js = static_cast<std::size_t>(j);
    for (int n = 1; n <= max_n; ++n) {
      Complex acc = static_cast<double>(n) * H[js - 1][static_cast<std::size_t>(n)];
      for (int m = 1; m < n; ++m)
        acc += H[1][static_cast<std::size_t>(m)] * H[js - 1][static_cast<std::size_t>(n - m)];
      H[js][static_cast<std::size_t>(n)] = acc;
    }
  }
  return H;
}

Complex h_statistic(int j, int n, const SpectrumStats& s) {
  return h_table(j, n, s)[static_cast<std::size_t>(j)][static_cast<std::size_t>(n)];
}

Complex hook_schur(HookPartition hook, const SymFnValues& v) {
  if (hook.arm < 1 || hook.leg < 0) throw DomainError("hook needs arm >= 1 and leg >= 0");
  if (hook.length() > v.dimension) return 0;
  if (hook.size() >= static_cast<int>(v.h.size()))
    throw DomainError("insufficient power traces for the hook Schur function");
  Complex acc = 0;
  for (int i = 0; i <= hook.leg; ++i)
    acc += (i % 2 == 0 ? 1.0 : -1.0) * v.e[static_cast<std::size_t>(hook.leg - i)] *
           v.h[static_cast<std::size_t>(hook.arm + i)];
  return acc;
}

Complex hook_schur(HookPartition hook, const SpectrumStats& s) { return hook_schur(hook, sym_fn_values(s)); }

std::vector<std::pair<HookPartition, std::int64_t>> h_to_schur_coeffs(int j, int r, int N) {
  if (j < 1 || r < 1 || N < 1) throw DomainError("h_to_schur_coeffs needs j, r, N >= 1");
  std::vector<std::pair<HookPartition, std::int64_t>> out;
  for (int nu = 1; nu <= std::min(r, N); ++nu) {
    const std::int64_t c = ipow64(nu, j) - ipow64(nu - 1, j);
    out.push_back({HookPartition{r - nu + 1, nu - 1}, nu % 2 == 0 ? c : -c});
  }
  return out;
}

std::int64_t h_covariance_exact(int j, int k, int n, int m, int N) {
  if (j < 1 || k < 1 || n < 1 || m < 1 || N < 1) throw DomainError("h_covariance_exact needs positive arguments");
  if (n != m) return 0;
  std::int64_t s = 0;
  for (int d = 1; d <= std::min(n, N); ++d)
    s += (ipow64(d, j) - ipow64(d - 1, j)) * (ipow64(d, k) - ipow64(d - 1, k));
  return s;
}

std::int64_t h_covariance_via_schur(int j, int k, int n, int m, int N) {
  const auto a = h_to_schur_coeffs(j, n, N);
  const auto b = h_to_schur_coeffs(k, m, N);
  std::int64_t s = 0;
  for (const auto& [la, ca] : a)
    for (const auto& [lb, cb] : b)
      if (la == lb) s += ca * cb;
  return s;
}

SpectrumStats haar_sample(int N, int max_power, Rng& rng) {
  if (N < 1) throw DomainError("Haar sample needs N >= 1");
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  while (true) {
    Eigen::MatrixXcd Z(N, N);
    for (int c = 0; c < N; ++c)
      for (int r = 0; r < N; ++r) {
        const double re = gauss(rng.engine());
        const double im = gauss(rng.engine());
        Z(r, c) = Complex(re, im);
      }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(Z);
    const Eigen::MatrixXcd R = qr.matrixQR().triangularView<Eigen::Upper>();
    Eigen::MatrixXcd Q = qr.householderQ();
    bool degenerate = false;
    for (int i = 0; i < N; ++i) {
      const double a = std::abs(R(i, i));
      if (a < 1e-12) {
        degenerate = true;
        break;
      }
      Q.col(i) *= R(i, i) / a;
    }
    if (degenerate) continue;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(Q, false);
    if (es.info() != Eigen::Success) continue;
    std::vector<Complex> w(es.eigenvalues().data(), es.eigenvalues().data() + N);
    return SpectrumStats(std::move(w), max_power);
  }
}

namespace {
constexpr std::uint64_t kShards = 64;
}

std::vector<SpectrumStats> haar_ensemble(int N, int max_power, std::uint64_t samples, std::uint64_t seed,
                                         unsigned threads) {
  std::vector<std::vector<SpectrumStats>> shards(kShards);
  const Rng root(seed);
  parallel_for(kShards, threads, [&](std::size_t s) {
    const std::uint64_t count = samples / kShards + (s < samples % kShards ? 1 : 0);
    Rng rng = root.split(s);
    shards[s].reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) shards[s].push_back(haar_sample(N, max_power, rng));
  });
  std::vector<SpectrumStats> out;
  out.reserve(samples);
  for (auto& sh : shards)
    for (auto& x : sh) out.push_back(std::move(x));
  return out;
}

bool McEstimate::within(Complex exact, double n_se) const {
  return deviation(exact) <= n_se * stderr + 1e-12 * (1.0 + std::abs(exact));
}

McEstimate estimate(std::span<const SpectrumStats> ensemble, const ClassStatistic& f) {
  McEstimate est;
  est.samples = ensemble.size();
  if (ensemble.empty()) throw DomainError("Monte Carlo estimate needs at least one sample");
  std::vector<Complex> values;
  values.reserve(ensemble.size());
  Complex sum = 0;
  for (const auto& s : ensemble) {
    values.push_back(f(s));
    sum += values.back();
  }
  const double n = static_cast<double>(ensemble.size());
  est.mean = sum / n;
  if (ensemble.size() > 1) {
    double ss = 0;
    for (const auto& v : values) ss += std::norm(v - est.mean);
    est.stderr = std::sqrt(ss / (n - 1) / n);
  }
  return est;
}

McEstimate mc_integrate(const ClassStatistic& f, int N, int max_power, std::uint64_t samples, std::uint64_t seed,
                        unsigned threads) {
  const auto ensemble = haar_ensemble(N, max_power, samples, seed, threads);
  return estimate(ensemble, f);
}

Complex ratio_closed_form(Complex A, Complex B, Complex C, Complex D, int N) {
  if (N < 1) throw DomainError("ratio theorem needs N >= 1");
  const Complex AB = A * B;
  const Complex CD = C * D;
  if (std::abs(1.0 - AB) < 1e-14 || std::abs(1.0 - CD) < 1e-14)
    throw DomainError("ratio theorem pole: AB = 1 or CD = 1");
  const Complex first = (1.0 - B * C) * (1.0 - A * D) / ((1.0 - AB) * (1.0 - CD));
  // (AB)^N (1 - C/A)(1 - D/B) / ((1 - 1/(AB))(1 - CD)), cleared of the 1/A, 1/B.
  const Complex second = std::pow(AB, N) * (A - C) * (B - D) / ((AB - 1.0) * (1.0 - CD));
  return first + second;
}

Complex ratio_integrand(Complex A, Complex B, Complex C, Complex D, const SpectrumStats& s) {
  Complex num = 1.0;
  Complex den = 1.0;
  for (const Complex& w : s.eigenvalues()) {
    const Complex wi = std::conj(w);
    num *= (1.0 - A * w) * (1.0 - B * wi);
    den *= (1.0 - C * w) * (1.0 - D * wi);
  }
  return num / den;
}

RatioCheck ratio_theorem_check(Complex A, Complex B, Complex C, Complex D, int N, std::uint64_t samples,
                               std::uint64_t seed, unsigned threads) {
  if (std::abs(C) >= 1.0 || std::abs(D) >= 1.0) throw DomainError("ratio theorem needs |C|, |D| < 1");
  RatioCheck out;
  out.rhs = ratio_closed_form(A, B, C, D, N);
  out.lhs = mc_integrate([&](const SpectrumStats& s) { return ratio_integrand(A, B, C, D, s); }, N, 1, samples, seed,
                         threads);
  out.pass = out.lhs.within(out.rhs);
  return out;
}

}  // namespace ffcov
