#include "ffcov/fq_poly.hpp"

#include "ffcov/error.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <ostream>

namespace ffcov {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Field::Field(std::uint32_t q) : q_(q) {
  if (q < 2 || q > (1u << 16) || !is_prime(q))
    throw DomainError("field size must be a prime in [2, 65536], got " + std::to_string(q));
}

Residue Field::pow(Residue a, std::uint64_t e) const {
  Residue result = 1 % q_;
  Residue base = a % q_;
  while (e) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

Residue Field::inv(Residue a) const {
  if (a % q_ == 0) throw DomainError("inverse of zero in F_" + std::to_string(q_));
  return pow(a, q_ - 2);
}

Residue Field::reduce(std::int64_t v) const {
  const auto m = static_cast<std::int64_t>(q_);
  auto r = v % m;
  if (r < 0) r += m;
  return static_cast<Residue>(r);
}

Poly::Poly(Field field, std::vector<Residue> coeffs) : field_(field), c_(std::move(coeffs)) {
  for (auto& c : c_) c %= field_.q();
  trim();
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::constant(Field field, Residue c) { return Poly(field, {c}); }

Poly Poly::monomial(Field field, Residue c, int degree) {
  std::vector<Residue> v(static_cast<std::size_t>(degree) + 1, 0);
  v.back() = c;
  return Poly(field, std::move(v));
}

Residue Poly::eval(Residue x) const {
  Residue acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = field_.add(field_.mul(acc, x), *it);
  return acc;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return scaled(field_.inv(leading()));
}

Poly Poly::scaled(Residue c) const {
  Poly r(field_);
  if (c % field_.q() == 0) return r;
  r.c_.reserve(c_.size());
  for (auto a : c_) r.c_.push_back(field_.mul(a, c));
  return r;
}

Poly Poly::shifted(int i) const {
  if (is_zero() || i == 0) return *this;
  Poly r(field_);
  r.c_.assign(static_cast<std::size_t>(i), 0);
  r.c_.insert(r.c_.end(), c_.begin(), c_.end());
  return r;
}

Poly Poly::derivative() const {
  Poly r(field_);
  if (c_.size() <= 1) return r;
  r.c_.resize(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i)
    r.c_[i - 1] = field_.mul(c_[i], static_cast<Residue>(i % field_.q()));
  r.trim();
  return r;
}

Poly Poly::operator+(const Poly& g) const {
  Poly r(field_);
  r.c_.resize(std::max(c_.size(), g.c_.size()), 0);
  for (std::size_t i = 0; i < r.c_.size(); ++i)
    r.c_[i] = field_.add(coeff(static_cast<int>(i)), g.coeff(static_cast<int>(i)));
  r.trim();
  return r;
}

Poly Poly::operator-(const Poly& g) const {
  Poly r(field_);
  r.c_.resize(std::max(c_.size(), g.c_.size()), 0);
  for (std::size_t i = 0; i < r.c_.size(); ++i)
    r.c_[i] = field_.sub(coeff(static_cast<int>(i)), g.coeff(static_cast<int>(i)));
  r.trim();
  return r;
}

Poly Poly::operator*(const Poly& g) const {
  Poly r(field_);
  if (is_zero() || g.is_zero()) return r;
  // Products are < 2^32, so a degree-bounded run of them fits in 64 bits.
  std::vector<std::uint64_t> acc(c_.size() + g.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t k = 0; k < g.c_.size(); ++k)
      acc[i + k] += static_cast<std::uint64_t>(c_[i]) * g.c_[k];
  }
  r.c_.resize(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) r.c_[i] = static_cast<Residue>(acc[i] % field_.q());
  r.trim();
  return r;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& g) const {
  if (g.is_zero()) throw DomainError("polynomial division by zero");
  if (degree() < g.degree()) return {Poly(field_), *this};
  const Residue lead_inv = field_.inv(g.leading());
  std::vector<Residue> rem = c_;
  std::vector<Residue> quo(c_.size() - g.c_.size() + 1, 0);
  const auto dg = g.c_.size() - 1;
  for (std::size_t i = quo.size(); i-- > 0;) {
    const Residue c = field_.mul(rem[i + dg], lead_inv);
    quo[i] = c;
    if (c == 0) continue;
    for (std::size_t k = 0; k <= dg; ++k) rem[i + k] = field_.sub(rem[i + k], field_.mul(c, g.c_[k]));
  }
  return {Poly(field_, std::move(quo)), Poly(field_, std::move(rem))};
}

bool operator<(const Poly& a, const Poly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  return std::lexicographical_compare(a.c_.rbegin(), a.c_.rend(), b.c_.rbegin(), b.c_.rend());
}

std::string Poly::to_string() const {
  std::string s;
  if (c_.empty()) {
    s = "0";
  } else {
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(c_[i]);
    }
  }
  s += '@';
  s += std::to_string(field_.q());
  return s;
}

namespace {

std::uint64_t parse_uint(std::string_view tok, std::string_view whole) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size())
    throw std::invalid_argument("malformed polynomial '" + std::string(whole) + "'");
  return v;
}

}  // namespace

Poly Poly::parse(std::string_view text) {
  const auto at = text.find('@');
  if (at == std::string_view::npos)
    throw std::invalid_argument("malformed polynomial '" + std::string(text) + "': missing '@q'");
  const auto qv = parse_uint(text.substr(at + 1), text);
  if (qv > std::numeric_limits<std::uint32_t>::max())
    throw std::invalid_argument("field size out of range in '" + std::string(text) + "'");
  Field field(static_cast<std::uint32_t>(qv));
  std::vector<Residue> coeffs;
  std::string_view body = text.substr(0, at);
  while (true) {
    const auto comma = body.find(',');
    const auto v = parse_uint(body.substr(0, comma), text);
    if (v >= field.q())
      throw std::invalid_argument("coefficient out of range in '" + std::string(text) + "'");
    coeffs.push_back(static_cast<Residue>(v));
    if (comma == std::string_view::npos) break;
    body = body.substr(comma + 1);
  }
  const bool zero = coeffs.size() == 1 && coeffs[0] == 0;
  if (!zero && coeffs.back() == 0)
    throw std::invalid_argument("non-canonical polynomial '" + std::string(text) + "' (trailing zero)");
  return Poly(field, std::move(coeffs));
}

std::ostream& operator<<(std::ostream& os, const Poly& f) { return os << f.to_string(); }

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a;
  Poly y = b;
  while (!y.is_zero()) {
    Poly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

Poly powmod(const Poly& base, std::span<const std::uint64_t> exponent, const Poly& m) {
  Poly result = Poly::constant(m.field(), 1) % m;
  Poly b = base % m;
  for (auto limb : exponent) {
    for (int bit = 0; bit < 64; ++bit) {
      if (limb & 1) result = (result * b) % m;
      b = (b * b) % m;
      limb >>= 1;
    }
  }
  return result;
}

Poly powmod(const Poly& base, std::uint64_t e, const Poly& m) {
  const std::uint64_t limbs[1] = {e};
  return powmod(base, limbs, m);
}

std::uint64_t monic_count(std::uint32_t q, int n) {
  std::uint64_t r = 1;
  for (int i = 0; i < n; ++i) {
    if (r > (std::uint64_t{1} << 63) / q) throw ResourceError("q^n overflows 63 bits");
    r *= q;
  }
  return r;
}

Poly monic_from_index(const Field& field, int n, std::uint64_t index) {
  std::vector<Residue> c(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i < n; ++i) {
    c[static_cast<std::size_t>(i)] = static_cast<Residue>(index % field.q());
    index /= field.q();
  }
  if (index != 0) throw DomainError("monic index out of range for degree " + std::to_string(n));
  c.back() = 1;
  return Poly(field, std::move(c));
}

std::uint64_t monic_index(const Poly& f) {
  if (!f.is_monic()) throw DomainError("monic_index of a non-monic polynomial");
  std::uint64_t idx = 0;
  for (int i = f.degree() - 1; i >= 0; --i) idx = idx * f.q() + f.coeff(i);
  return idx;
}

MonicRange::MonicRange(Field field, int n) : field_(field), n_(n), count_(0) {
  if (n < 0) throw DomainError("negative degree");
  count_ = monic_count(field.q(), n);
}

MonicRange::iterator::iterator(const MonicRange* range, std::uint64_t index)
    : range_(range), index_(index), current_(range->field_) {
  if (index_ < range_->count_) current_ = monic_from_index(range_->field_, range_->n_, index_);
}

MonicRange::iterator& MonicRange::iterator::operator++() {
  ++index_;
  if (index_ < range_->count_) current_ = monic_from_index(range_->field_, range_->n_, index_);
  return *this;
}

}  // namespace ffcov
