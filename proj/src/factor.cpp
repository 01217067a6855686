#include "ffcov/factor.hpp"

#include "ffcov/error.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <map>
#include <random>
#include <tuple>

namespace ffcov {

int FactorShape::degree() const {
  int d = 0;
  for (auto [deg, mult] : parts) d += deg * mult;
  return d;
}

Poly Factorization::product(const Field& field) const {
  Poly r = Poly::constant(field, unit);
  for (const auto& [p, e] : factors)
    for (int i = 0; i < e; ++i) r = r * p;
  return r;
}

FactorShape Factorization::shape() const {
  FactorShape s;
  for (const auto& [p, e] : factors) s.parts.emplace_back(p.degree(), e);
  std::sort(s.parts.begin(), s.parts.end());
  return s;
}

namespace {

// g(T) with g(T^p) = f; valid over F_p since a^p = a.
Poly pth_root(const Poly& f) {
  const auto p = static_cast<int>(f.q());
  std::vector<Residue> c;
  for (int i = 0; i <= f.degree(); i += p) c.push_back(f.coeff(i));
  return Poly(f.field(), std::move(c));
}

void squarefree_parts(const Poly& f, int scale, std::vector<std::pair<Poly, int>>& out) {
  if (f.degree() < 1) return;
  const Poly fp = f.derivative();
  if (fp.is_zero()) {
    squarefree_parts(pth_root(f), scale * static_cast<int>(f.q()), out);
    return;
  }
  Poly c = gcd(f, fp);
  Poly w = f / c;
  int i = 1;
  while (!w.is_one()) {
    Poly y = gcd(w, c);
    Poly fac = w / y;
    if (!fac.is_one()) out.emplace_back(fac.monic(), i * scale);
    w = std::move(y);
    c = c / w;
    ++i;
  }
  if (!c.is_one() && c.degree() > 0)
    squarefree_parts(pth_root(c.monic()), scale * static_cast<int>(f.q()), out);
}

std::vector<std::pair<Poly, int>> distinct_degree(Poly g) {
  std::vector<std::pair<Poly, int>> out;
  const Poly t = Poly::t(g.field());
  Poly h = t % g;
  for (int d = 1; g.degree() >= 2 * d; ++d) {
    h = powmod(h, g.q(), g);
    Poly gd = gcd(h - t, g);
    if (!gd.is_one()) {
      out.emplace_back(gd, d);
      g = g / gd;
      h = h % g;
    }
  }
  if (g.degree() > 0) out.emplace_back(g, g.degree());
  return out;
}

void equal_degree(const Poly& g, int d, std::mt19937_64& rng, std::vector<Poly>& out) {
  if (g.degree() == d) {
    out.push_back(g);
    return;
  }
  const Field& F = g.field();
  std::uniform_int_distribution<Residue> digit(0, F.q() - 1);
  while (true) {
    std::vector<Residue> c(static_cast<std::size_t>(g.degree()));
    for (auto& x : c) x = digit(rng);
    const Poly a(F, std::move(c));
    if (a.degree() < 1) continue;
    Poly b(F);
    if (F.q() == 2) {
      // Absolute trace a + a^2 + ... + a^(2^(d-1)).
      Poly t = a;
      b = a;
      for (int i = 1; i < d; ++i) {
        t = (t * t) % g;
        b = b + t;
      }
    } else {
      // a^((q^d - 1)/2) = (a^(1 + q + ... + q^(d-1)))^((q - 1)/2).
      Poly t = a;
      Poly norm = a;
      for (int i = 1; i < d; ++i) {
        t = powmod(t, F.q(), g);
        norm = (norm * t) % g;
      }
      b = powmod(norm, (F.q() - 1) / 2, g) - Poly::constant(F, 1);
    }
    Poly s = gcd(b, g);
    if (s.degree() > 0 && s.degree() < g.degree()) {
      equal_degree(s, d, rng, out);
      equal_degree(g / s, d, rng, out);
      return;
    }
  }
}

}  // namespace

Factorization factor(const Poly& f, std::uint64_t seed) {
  if (f.is_zero()) throw DomainError("factor of the zero polynomial");
  Factorization result;
  result.unit = f.leading();
  const Poly m = f.monic();
  std::vector<std::pair<Poly, int>> sqf;
  squarefree_parts(m, 1, sqf);
  std::mt19937_64 rng(seed);
  for (const auto& [part, mult] : sqf) {
    for (const auto& [block, d] : distinct_degree(part)) {
      std::vector<Poly> irr;
      equal_degree(block, d, rng, irr);
      for (auto& p : irr) result.factors.emplace_back(std::move(p), mult);
    }
  }
  std::sort(result.factors.begin(), result.factors.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return result;
}

bool is_irreducible(const Poly& f) {
  if (f.degree() < 1) return false;
  const Poly g = f.monic();
  const int n = g.degree();
  const Poly t = Poly::t(g.field());
  // T^(q^k) mod g for k = 0..n.
  std::vector<Poly> frob{t % g};
  for (int k = 1; k <= n; ++k) frob.push_back(powmod(frob.back(), g.q(), g));
  if (!(frob[static_cast<std::size_t>(n)] - t % g).is_zero()) return false;
  for (int r = 2; r <= n; ++r) {
    if (n % r != 0 || !is_prime(static_cast<std::uint64_t>(r))) continue;
    if (!gcd(frob[static_cast<std::size_t>(n / r)] - t, g).is_one()) return false;
  }
  return true;
}

namespace {

constexpr std::uint32_t kNoPrime = std::numeric_limits<std::uint32_t>::max();
constexpr int kMaxSieveDegree = 62;

// Index of the product of two monic polynomials given by (degree, index) pairs.
std::uint64_t product_index(std::uint32_t q, int d1, std::uint64_t i1, int d2, std::uint64_t i2) {
  std::array<std::uint64_t, kMaxSieveDegree + 1> a{}, b{}, c{};
  for (int i = 0; i < d1; ++i, i1 /= q) a[static_cast<std::size_t>(i)] = i1 % q;
  a[static_cast<std::size_t>(d1)] = 1;
  for (int i = 0; i < d2; ++i, i2 /= q) b[static_cast<std::size_t>(i)] = i2 % q;
  b[static_cast<std::size_t>(d2)] = 1;
  const int t = d1 + d2;
  for (int i = 0; i <= d1; ++i) {
    if (a[static_cast<std::size_t>(i)] == 0) continue;
    for (int k = 0; k <= d2; ++k)
      c[static_cast<std::size_t>(i + k)] += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(k)];
  }
  std::uint64_t idx = 0;
  for (int i = t - 1; i >= 0; --i) idx = idx * q + c[static_cast<std::size_t>(i)] % q;
  return idx;
}

}  // namespace

FactorSieve::FactorSieve(Field field, int max_degree, std::uint64_t max_entries)
    : field_(field), max_degree_(max_degree) {
  if (max_degree < 0 || max_degree > kMaxSieveDegree) throw DomainError("sieve degree out of range");
  const std::uint32_t q = field.q();
  std::uint64_t total = 0;
  for (int d = 0; d <= max_degree; ++d) total += monic_count(q, d);
  if (total > max_entries)
    throw ResourceError("factor sieve needs " + std::to_string(total) + " entries (limit " +
                        std::to_string(max_entries) + ")");

  ids_.resize(static_cast<std::size_t>(max_degree) + 1);
  irreducibles_.resize(static_cast<std::size_t>(max_degree) + 1);
  // Per degree: smallest prime factor id, its multiplicity, and the shape of
  // the cofactor with that prime removed entirely.
  std::vector<std::vector<std::uint32_t>> spf(ids_.size()), rest(ids_.size());
  std::vector<std::vector<std::uint8_t>> mult(ids_.size());
  std::vector<std::pair<int, std::uint64_t>> primes;  // (degree, index), ordered by id

  std::map<FactorShape, std::uint32_t> by_shape;
  std::map<std::tuple<std::uint32_t, int, int>, std::uint32_t> extend_memo;
  shapes_.push_back(FactorShape{});
  by_shape.emplace(FactorShape{}, 0);
  auto extend = [&](std::uint32_t base, int d, int m) {
    auto key = std::make_tuple(base, d, m);
    if (auto it = extend_memo.find(key); it != extend_memo.end()) return it->second;
    FactorShape s = shapes_[base];
    s.parts.emplace_back(d, m);
    std::sort(s.parts.begin(), s.parts.end());
    auto [it, inserted] = by_shape.emplace(s, static_cast<std::uint32_t>(shapes_.size()));
    if (inserted) shapes_.push_back(std::move(s));
    extend_memo.emplace(key, it->second);
    return it->second;
  };

  ids_[0] = {0};
  spf[0] = {kNoPrime};
  rest[0] = {0};
  mult[0] = {0};
  for (int t = 1; t <= max_degree; ++t) {
    const auto ts = static_cast<std::size_t>(t);
    const std::uint64_t count = monic_count(q, t);
    spf[ts].assign(count, kNoPrime);
    rest[ts].assign(count, 0);
    mult[ts].assign(count, 0);
    ids_[ts].assign(count, 0);
    for (std::uint32_t pid = 0; pid < primes.size(); ++pid) {
      const auto [d, pidx] = primes[pid];
      if (2 * d > t) break;
      const int e = t - d;
      const auto es = static_cast<std::size_t>(e);
      const std::uint64_t gcount = monic_count(q, e);
      for (std::uint64_t g = 0; g < gcount; ++g) {
        const std::uint32_t gp = spf[es][g];
        if (gp < pid) continue;
        const std::uint64_t f = product_index(q, d, pidx, e, g);
        spf[ts][f] = pid;
        if (gp == pid) {
          mult[ts][f] = static_cast<std::uint8_t>(mult[es][g] + 1);
          rest[ts][f] = rest[es][g];
        } else {
          mult[ts][f] = 1;
          rest[ts][f] = ids_[es][g];
        }
        ids_[ts][f] = extend(rest[ts][f], d, mult[ts][f]);
      }
    }
    for (std::uint64_t f = 0; f < count; ++f) {
      if (spf[ts][f] != kNoPrime) continue;
      spf[ts][f] = static_cast<std::uint32_t>(primes.size());
      primes.emplace_back(t, f);
      irreducibles_[ts].push_back(f);
      mult[ts][f] = 1;
      rest[ts][f] = 0;
      ids_[ts][f] = extend(0, t, 1);
    }
  }
}

}  // namespace ffcov
