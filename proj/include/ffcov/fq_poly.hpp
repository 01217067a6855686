#pragma once

#include <cstdint>
#include <iosfwd>
#include <iterator>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ffcov {

using Residue = std::uint32_t;

/// The prime field F_q, 2 <= q <= 2^16.
class Field {
 public:
  explicit Field(std::uint32_t q);

  std::uint32_t q() const { return q_; }

  Residue add(Residue a, Residue b) const {
    const Residue s = a + b;
    return s >= q_ ? s - q_ : s;
  }
  Residue sub(Residue a, Residue b) const { return a >= b ? a - b : a + q_ - b; }
  Residue neg(Residue a) const { return a == 0 ? 0 : q_ - a; }
  Residue mul(Residue a, Residue b) const {
    return static_cast<Residue>(static_cast<std::uint64_t>(a) * b % q_);
  }
  Residue pow(Residue a, std::uint64_t e) const;
  /// Throws DomainError for a == 0.
  Residue inv(Residue a) const;
  Residue reduce(std::int64_t v) const;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  std::uint32_t q_;
};

bool is_prime(std::uint64_t n);

/// deg(0). Compares below every genuine degree.
inline constexpr int kZeroDegree = -1;

/// Dense polynomial over F_q, lowest coefficient first, no trailing zeros.
class Poly {
 public:
  explicit Poly(Field field) : field_(field) {}
  Poly(Field field, std::vector<Residue> coeffs);

  static Poly constant(Field field, Residue c);
  static Poly monomial(Field field, Residue c, int degree);
  static Poly t(Field field) { return monomial(field, 1, 1); }

  const Field& field() const { return field_; }
  std::uint32_t q() const { return field_.q(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  Residue coeff(int i) const {
    return i >= 0 && i < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(i)] : 0;
  }
  Residue leading() const { return c_.empty() ? 0 : c_.back(); }
  std::span<const Residue> coeffs() const { return c_; }

  Residue eval(Residue x) const;
  Poly monic() const;
  Poly scaled(Residue c) const;
  /// f * T^i.
  Poly shifted(int i) const;
  Poly derivative() const;

  Poly operator+(const Poly& g) const;
  Poly operator-(const Poly& g) const;
  Poly operator*(const Poly& g) const;
  Poly operator/(const Poly& g) const { return divmod(g).first; }
  Poly operator%(const Poly& g) const { return divmod(g).second; }
  /// (quotient, remainder) with deg(remainder) < deg(g). Throws DomainError if g == 0.
  std::pair<Poly, Poly> divmod(const Poly& g) const;

  friend bool operator==(const Poly&, const Poly&) = default;
  friend bool operator<(const Poly& a, const Poly& b);

  /// `c0,c1,...,cn@q`; the zero polynomial is `0@q`.
  std::string to_string() const;
  /// Strict inverse of to_string(): rejects trailing zeros and out-of-range digits.
  static Poly parse(std::string_view text);

 private:
  void trim();

  Field field_;
  std::vector<Residue> c_;
};

std::ostream& operator<<(std::ostream& os, const Poly& f);

/// Monic gcd; gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);

/// base^e mod m for an exponent given as little-endian 64-bit limbs.
Poly powmod(const Poly& base, std::span<const std::uint64_t> exponent, const Poly& m);
Poly powmod(const Poly& base, std::uint64_t e, const Poly& m);

/// q^n, throwing ResourceError past 2^63.
std::uint64_t monic_count(std::uint32_t q, int n);

/// The index-th monic polynomial of degree n, digits a_0 (fastest) .. a_{n-1} in base q.
Poly monic_from_index(const Field& field, int n, std::uint64_t index);
/// Inverse of monic_from_index. Requires a monic argument.
std::uint64_t monic_index(const Poly& f);

/// Forward range over the q^n monic polynomials of degree n, a_0 varying fastest.
class MonicRange {
 public:
  class iterator {
   public:
    using value_type = Poly;
    using difference_type = std::ptrdiff_t;
    using iterator_category = std::input_iterator_tag;

    iterator() = default;
    iterator(const MonicRange* range, std::uint64_t index);
    const Poly& operator*() const { return current_; }
    const Poly* operator->() const { return &current_; }
    iterator& operator++();
    iterator operator++(int) {
      auto tmp = *this;
      ++*this;
      return tmp;
    }
    bool operator==(const iterator& o) const { return index_ == o.index_; }

   private:
    const MonicRange* range_ = nullptr;
    std::uint64_t index_ = 0;
    Poly current_{Field(2)};
  };

  MonicRange(Field field, int n);
  iterator begin() const { return iterator(this, 0); }
  iterator end() const { return iterator(this, count_); }
  std::uint64_t size() const { return count_; }
  int degree() const { return n_; }
  const Field& field() const { return field_; }

 private:
  Field field_;
  int n_;
  std::uint64_t count_;
};

inline MonicRange enumerate_monics(const Field& field, int n) { return MonicRange(field, n); }

}  // namespace ffcov
