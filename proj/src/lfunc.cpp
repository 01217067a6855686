#include "ffcov/lfunc.hpp"

#include "ffcov/arith_fn.hpp"
#include "ffcov/error.hpp"
#include "ffcov/numeric.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

namespace ffcov {

int LPolynomial::degree(double zero_tol) const {
  for (int n = static_cast<int>(coeffs.size()) - 1; n > 0; --n)
    if (std::abs(coeffs[static_cast<std::size_t>(n)]) > zero_tol * std::max(1.0, std::pow(q, n / 2.0))) return n;
  return 0;
}

Complex LPolynomial::operator()(Complex u) const {
  Complex acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * u + *it;
  return acc;
}

std::uint64_t monic_residue_code(std::uint32_t q, int n, std::uint64_t index, int m) {
  if (n < m) return index + static_cast<std::uint64_t>(ipow64(q, n));
  return index % static_cast<std::uint64_t>(ipow64(q, m));
}

LPolynomial l_polynomial(const Character& chi, int extra) {
  if (chi.is_trivial()) throw DomainError("L-polynomial of the trivial character is not supported");
  if (extra < 0) throw DomainError("negative extra degree");
  const auto& G = chi.group();
  LPolynomial L;
  L.q = G.q();
  L.m = G.modulus_degree();
  L.char_id = chi.id();
  const int top = L.m - 1 + extra;
  for (int n = 0; n <= top; ++n) {
    Complex c = 0;
    const std::uint64_t count = monic_count(L.q, n);
    for (std::uint64_t i = 0; i < count; ++i) c += chi.at(monic_residue_code(L.q, n, i, L.m));
    L.coeffs.push_back(c);
  }
  return L;
}

std::vector<Complex> euler_product_coeffs(const Character& chi, const FactorSieve& sieve) {
  const auto& G = chi.group();
  const int D = G.modulus_degree() - 1;
  if (sieve.field() != G.field() || sieve.max_degree() < D) throw DomainError("sieve does not cover the modulus");
  std::vector<Complex> series(static_cast<std::size_t>(D) + 1, Complex(0));
  series[0] = 1;
  for (int d = 1; d <= D; ++d)
    for (std::uint64_t idx : sieve.irreducibles(d)) {
      const Complex x = chi.at(monic_residue_code(G.q(), d, idx, G.modulus_degree()));
      if (x == Complex(0)) continue;
      // multiply by 1 / (1 - x u^d)
      for (int n = d; n <= D; ++n) series[static_cast<std::size_t>(n)] += x * series[static_cast<std::size_t>(n - d)];
    }
  return series;
}

std::vector<Complex> inverse_roots(const LPolynomial& L, double zero_tol) {
  const int D = L.degree(zero_tol);
  if (D == 0) return {};
  const Complex lead = L.coeffs[0];
  if (std::abs(lead) == 0) throw IntegrityError("L-polynomial has vanishing constant term");
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(D, D);
  for (int i = 0; i < D; ++i) C(0, i) = -L.coeffs[static_cast<std::size_t>(i + 1)] / lead;
  for (int i = 1; i < D; ++i) C(i, i - 1) = 1;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, false);
  if (es.info() != Eigen::Success) throw IntegrityError("companion eigenvalue computation failed");
  return std::vector<Complex>(es.eigenvalues().data(), es.eigenvalues().data() + D);
}

RhReport rh_check(const LPolynomial& L, double tol) {
  RhReport r;
  const auto alpha = inverse_roots(L);
  r.degree = static_cast<int>(alpha.size());
  const double crit = 1.0 / std::sqrt(static_cast<double>(L.q));
  for (const auto& a : alpha) {
    const double u = 1.0 / std::abs(a);
    const double dc = std::abs(u - crit), d1 = std::abs(u - 1.0);
    if (d1 < dc) ++r.unit_circle_roots;
    r.max_deviation = std::max(r.max_deviation, std::min(dc, d1));
  }
  r.pass = r.max_deviation <= tol;
  return r;
}

std::vector<Complex> FrobeniusSpectrum::reconstruct() const {
  std::vector<Complex> poly{1.0};
  auto times_linear = [&](Complex a) {  // poly *= (1 - a u)
    poly.push_back(0);
    for (std::size_t n = poly.size() - 1; n > 0; --n) poly[n] -= a * poly[n - 1];
  };
  if (lambda_chi) times_linear(1.0);
  const double s = std::sqrt(static_cast<double>(q));
  for (double t : angles) times_linear(std::polar(s, 2 * std::numbers::pi * t));
  return poly;
}

FrobeniusSpectrum frobenius_spectrum(const Character& chi, const Tolerances& tol) {
  if (!chi.is_primitive()) throw DomainError("Frobenius spectrum needs a primitive character");
  if (chi.group().modulus_degree() < 2) throw DomainError("Frobenius spectrum needs modulus degree >= 2");
  const LPolynomial L = l_polynomial(chi);
  FrobeniusSpectrum spec;
  spec.q = L.q;
  spec.m = L.m;
  spec.char_id = L.char_id;
  spec.lambda_chi = chi.is_even() ? 1 : 0;
  const int D = L.m - 1;
  if (std::abs(L.coeffs[static_cast<std::size_t>(D)]) < 1e-6)
    throw IntegrityError("primitive L-polynomial has degree below m - 1");

  LPolynomial reduced = L;
  if (spec.lambda_chi) {
    double scale = 0;
    for (const auto& c : L.coeffs) scale += std::abs(c);
    if (std::abs(L(1.0)) > tol.root * (1 + scale)) throw IntegrityError("even character without the zero at u = 1");
    // L(u) = (1 - u) L'(u): l'_n = c_n + l'_{n-1}
    reduced.coeffs.assign(static_cast<std::size_t>(D), Complex(0));
    Complex run = 0;
    for (int n = 0; n < D; ++n) reduced.coeffs[static_cast<std::size_t>(n)] = run += L.coeffs[static_cast<std::size_t>(n)];
  }
  const int N = D - spec.lambda_chi;
  std::vector<Complex> alpha;
  if (N > 0) {
    // Degree is known exactly here; do not let the zero threshold trim it.
    LPolynomial exact = reduced;
    alpha = inverse_roots(exact, 0.0);
  }
  if (static_cast<int>(alpha.size()) != N) throw IntegrityError("wrong number of L-polynomial roots");
  const double crit = 1.0 / std::sqrt(static_cast<double>(L.q));
  for (const auto& a : alpha) {
    if (std::abs(1.0 / std::abs(a) - crit) > tol.root)
      throw IntegrityError("L-polynomial root off the circle |u| = q^{-1/2} (q=" + std::to_string(L.q) +
                           ", m=" + std::to_string(L.m) + ", char " + std::to_string(L.char_id) + ")");
    double t = std::arg(a) / (2 * std::numbers::pi);
    if (t < 0) t += 1.0;
    if (t >= 1.0) t = 0.0;
    spec.angles.push_back(t);
  }
  std::sort(spec.angles.begin(), spec.angles.end());

  const auto rec = spec.reconstruct();
  for (int n = 0; n <= D; ++n) {
    const Complex c = L.coeffs[static_cast<std::size_t>(n)];
    if (std::abs(rec[static_cast<std::size_t>(n)] - c) > tol.reconstruction * std::max(1.0, std::abs(c)))
      throw IntegrityError("spectrum does not reconstruct the L-polynomial");
  }
  return spec;
}

std::vector<std::int64_t> residue_weights(std::span<const std::int64_t> values, std::uint32_t q, int n, int m) {
  if (values.size() != monic_count(q, n)) throw DomainError("value table does not cover M_n");
  std::vector<std::int64_t> w(static_cast<std::size_t>(ipow64(q, m)), 0);
  for (std::uint64_t i = 0; i < values.size(); ++i) w[monic_residue_code(q, n, i, m)] += values[i];
  return w;
}

Complex twisted_sum(const Character& chi, std::span<const std::int64_t> weights) {
  if (weights.size() != chi.group().residue_count()) throw DomainError("weights do not match the modulus");
  Complex acc = 0;
  for (std::uint64_t r = 0; r < weights.size(); ++r)
    if (weights[r] != 0) acc += static_cast<double>(weights[r]) * chi.at(r);
  return acc;
}

namespace {

Complex lambda_twist(const Character& chi, const FactorSieve& sieve, int j, int n) {
  const auto& G = chi.group();
  const auto values = lambda_values(sieve, j, n);
  return twisted_sum(chi, residue_weights(values, G.q(), n, G.modulus_degree()));
}

void check_spectrum(const Character& chi, const FrobeniusSpectrum& spec) {
  if (spec.q != chi.group().q() || spec.m != chi.group().modulus_degree() || spec.char_id != chi.id())
    throw DomainError("spectrum belongs to a different character");
}

}  // namespace

double explicit_formula_residual(const Character& chi, const FrobeniusSpectrum& spec, const FactorSieve& sieve, int n) {
  if (n < 1) throw DomainError("explicit formula needs n >= 1");
  const auto& G = chi.group();
  return explicit_formula_residual(chi, spec, residue_weights(lambda_values(sieve, 1, n), G.q(), n, G.modulus_degree()),
                                   n);
}

double explicit_formula_residual(const Character& chi, const FrobeniusSpectrum& spec,
                                 std::span<const std::int64_t> lambda_weights, int n) {
  check_spectrum(chi, spec);
  if (n < 1) throw DomainError("explicit formula needs n >= 1");
  const Complex S = twisted_sum(chi, lambda_weights);
  const Complex tr = spec.stats(n).power(n);
  return std::abs(S + std::pow(static_cast<double>(spec.q), n / 2.0) * tr + static_cast<double>(spec.lambda_chi));
}

double explicit_formula_j_residual(const Character& chi, const FrobeniusSpectrum& spec, const FactorSieve& sieve,
                                   int j, int n) {
  check_spectrum(chi, spec);
  if (n < 1 || j < 1) throw DomainError("explicit formula needs j, n >= 1");
  const Complex S = lambda_twist(chi, sieve, j, n);
  return std::abs(S / std::pow(static_cast<double>(spec.q), n / 2.0) - h_statistic(j, n, spec.stats(n)));
}

namespace {

Complex delta_sum_from_weights(const Character& chi, std::span<const std::int64_t> w, int m, int k) {
  if (m < 1 || k < 0) throw DomainError("delta sum needs m >= 1 and k >= 0");
  const auto& G = chi.group();
  const int n = m + k;
  const Complex S = twisted_sum(chi, w);
  const double sign = k % 2 == 0 ? -1.0 : 1.0;
  return sign * S / std::pow(static_cast<double>(G.q()), n / 2.0);
}

}  // namespace

Complex delta_sum_normalized(const Character& chi, const FactorSieve& sieve, int m, int k) {
  if (m < 1 || k < 0) throw DomainError("delta sum needs m >= 1 and k >= 0");
  const auto& G = chi.group();
  const auto values = delta_values(sieve, m, m + k);
  return delta_sum_from_weights(chi, residue_weights(values, G.q(), m + k, G.modulus_degree()), m, k);
}

double delta_schur_residual(const Character& chi, const FrobeniusSpectrum& spec,
                            std::span<const std::int64_t> delta_weights, int m, int k) {
  check_spectrum(chi, spec);
  const Complex lhs = delta_sum_from_weights(chi, delta_weights, m, k);
  return std::abs(lhs - hook_schur(HookPartition{m, k}, spec.stats(m + k)));
}

double delta_schur_residual(const Character& chi, const FrobeniusSpectrum& spec, const FactorSieve& sieve, int m,
                            int k) {
  check_spectrum(chi, spec);
  const Complex lhs = delta_sum_normalized(chi, sieve, m, k);
  const Complex rhs = hook_schur(HookPartition{m, k}, spec.stats(m + k));
  return std::abs(lhs - rhs);
}

void write_spectra_csv(std::ostream& os, std::span<const FrobeniusSpectrum> spectra) {
  int width = 0;
  for (const auto& s : spectra) width = std::max(width, s.dimension());
  os << "q,m,char_id,lambda_chi";
  for (int i = 1; i <= width; ++i) os << ",theta_" << i;
  os << '\n';
  char buf[40];
  for (const auto& s : spectra) {
    os << s.q << ',' << s.m << ',' << s.char_id << ',' << s.lambda_chi;
    for (int i = 0; i < width; ++i) {
      os << ',';
      if (i < s.dimension()) {
        std::snprintf(buf, sizeof buf, "%.17g", s.angles[static_cast<std::size_t>(i)]);
        os << buf;
      }
    }
    os << '\n';
  }
}

std::vector<FrobeniusSpectrum> read_spectra_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("q,m,char_id,lambda_chi", 0) != 0)
    throw DomainError("spectrum CSV: missing header");
  std::vector<FrobeniusSpectrum> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    if (fields.size() < 4) throw DomainError("spectrum CSV: short row: " + line);
    try {
      FrobeniusSpectrum s;
      s.q = static_cast<std::uint32_t>(std::stoul(fields[0]));
      s.m = std::stoi(fields[1]);
      s.char_id = std::stoull(fields[2]);
      s.lambda_chi = std::stoi(fields[3]);
      for (std::size_t i = 4; i < fields.size() && !fields[i].empty(); ++i) s.angles.push_back(std::stod(fields[i]));
      out.push_back(std::move(s));
    } catch (const std::logic_error&) {
      throw DomainError("spectrum CSV: malformed row: " + line);
    }
  }
  return out;
}

}  // namespace ffcov
