#include "ffcov/arith_fn.hpp"

#include "ffcov/error.hpp"

#include <map>
#include <mutex>
#include <tuple>

namespace ffcov {

namespace {

FactorShape shape_of(const Poly& f) {
  if (f.is_zero()) throw DomainError("arithmetic function of the zero polynomial");
  return factor(f).shape();
}

void check_order(int j) {
  if (j < 0) throw DomainError("negative order j");
}

}  // namespace

int mobius(const FactorShape& s) {
  for (auto [deg, mult] : s.parts)
    if (mult > 1) return 0;
  return s.parts.size() % 2 == 0 ? 1 : -1;
}

int mobius(const Poly& f) { return mobius(shape_of(f)); }

std::int64_t von_mangoldt(const FactorShape& s) {
  return s.parts.size() == 1 ? s.parts[0].first : 0;
}

std::int64_t von_mangoldt(const Poly& f) { return von_mangoldt(shape_of(f)); }

std::int64_t lambda_j_mobius(int j, const FactorShape& s) {
  check_order(j);
  // Only squarefree divisors carry mu != 0: one subset of the distinct primes each.
  const int n = s.degree();
  const std::size_t k = s.parts.size();
  std::int64_t total = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    int deg_d = 0;
    int sign = 1;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask >> i & 1) {
        deg_d += s.parts[i].first;
        sign = -sign;
      }
    }
    total += sign * ipow64(n - deg_d, j);
  }
  return total;
}

std::int64_t lambda_j_mobius(int j, const Poly& f) { return lambda_j_mobius(j, shape_of(f)); }

namespace {

class Recursion {
 public:
  explicit Recursion(const FactorShape& s) : s_(s) {}

  std::int64_t lambda(int j, const std::vector<int>& e) {
    if (j == 0) return degree(e) == 0 ? 1 : 0;
    if (j == 1) return von_mangoldt_exp(e);
    auto key = std::make_pair(j, e);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::int64_t total = lambda(j - 1, e) * degree(e);
    // Every monic divisor d of f, as an exponent vector d <= e.
    std::vector<int> d(e.size(), 0);
    while (true) {
      std::vector<int> cof(e.size());
      for (std::size_t i = 0; i < e.size(); ++i) cof[i] = e[i] - d[i];
      const auto vm = von_mangoldt_exp(cof);
      if (vm != 0) total += lambda(j - 1, d) * vm;
      std::size_t i = 0;
      while (i < d.size() && d[i] == e[i]) d[i++] = 0;
      if (i == d.size()) break;
      ++d[i];
    }
    memo_.emplace(std::move(key), total);
    return total;
  }

 private:
  int degree(const std::vector<int>& e) const {
    int d = 0;
    for (std::size_t i = 0; i < e.size(); ++i) d += e[i] * s_.parts[i].first;
    return d;
  }
  std::int64_t von_mangoldt_exp(const std::vector<int>& e) const {
    int nonzero = 0;
    std::int64_t deg = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] > 0) {
        ++nonzero;
        deg = s_.parts[i].first;
      }
    }
    return nonzero == 1 ? deg : 0;
  }

  const FactorShape& s_;
  std::map<std::pair<int, std::vector<int>>, std::int64_t> memo_;
};

}  // namespace

std::int64_t lambda_j_recursive(int j, const FactorShape& s) {
  check_order(j);
  std::vector<int> e;
  for (auto [deg, mult] : s.parts) e.push_back(mult);
  return Recursion(s).lambda(j, e);
}

std::int64_t lambda_j_recursive(int j, const Poly& f) { return lambda_j_recursive(j, shape_of(f)); }

std::int64_t lambda_mean(int j, int n) {
  check_order(j);
  if (n <= 0) return 0;
  return ipow64(n, j) - ipow64(n - 1, j);
}

std::int64_t lambda_tilde(int j, const FactorShape& s) {
  return lambda_j_mobius(j, s) - lambda_mean(j, s.degree());
}

std::int64_t lambda_tilde(int j, const Poly& f) { return lambda_tilde(j, shape_of(f)); }

std::int64_t delta_m(int m, const FactorShape& s) {
  if (m < 1) throw DomainError("delta_m needs m >= 1");
  const std::size_t k = s.parts.size();
  std::int64_t total = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    int deg_d = 0;
    int sign = 1;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask >> i & 1) {
        deg_d += s.parts[i].first;
        sign = -sign;
      }
    }
    if (deg_d < m) total += sign;
  }
  return total;
}

std::int64_t delta_m(int m, const Poly& f) { return delta_m(m, shape_of(f)); }

BigInt vm_average_closed(std::uint32_t q, int j, int n) {
  if (n < 1 || j < 1) throw DomainError("vm_average_closed needs n >= 1 and j >= 1");
  return ipow(q, n) * (ipow(static_cast<std::uint64_t>(n), j) - ipow(static_cast<std::uint64_t>(n - 1), j));
}

namespace {

template <class Fn>
std::vector<std::int64_t> per_shape_values(const FactorSieve& sieve, int n, Fn&& fn) {
  if (n < 0 || n > sieve.max_degree()) throw DomainError("degree outside the sieve");
  std::vector<std::int64_t> by_shape(sieve.shapes().size());
  std::vector<bool> known(by_shape.size(), false);
  const std::uint64_t count = monic_count(sieve.field().q(), n);
  std::vector<std::int64_t> out(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    const auto id = sieve.shape_id(n, i);
    if (!known[id]) {
      by_shape[id] = fn(sieve.shapes()[id]);
      known[id] = true;
    }
    out[i] = by_shape[id];
  }
  return out;
}

}  // namespace

std::vector<std::int64_t> lambda_values(const FactorSieve& sieve, int j, int n) {
  check_order(j);
  return per_shape_values(sieve, n, [j](const FactorShape& s) { return lambda_j_mobius(j, s); });
}

std::vector<std::int64_t> delta_values(const FactorSieve& sieve, int m, int n) {
  return per_shape_values(sieve, n, [m](const FactorShape& s) { return delta_m(m, s); });
}

Rational e_natural(const FactorSieve& sieve, int j, int n) {
  if (n < 1) throw DomainError("e_natural needs n >= 1");
  const auto values = lambda_values(sieve, j, n);
  const std::uint32_t q = sieve.field().q();
  BigInt sum = 0;
  std::uint64_t count = 0;
  for (std::uint64_t i = 0; i < values.size(); ++i) {
    if (i % q == 0) continue;  // a_0 = 0
    sum += values[i];
    ++count;
  }
  return Rational(sum, BigInt(count));
}

Rational e_natural(const Field& field, int j, int n) {
  static std::mutex mu;
  static std::map<std::tuple<std::uint32_t, int, int>, Rational> memo;
  const auto key = std::make_tuple(field.q(), j, n);
  {
    std::lock_guard lock(mu);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
  }
  FactorSieve sieve(field, n);
  Rational v = e_natural(sieve, j, n);
  std::lock_guard lock(mu);
  memo.emplace(key, v);
  return v;
}

}  // namespace ffcov
