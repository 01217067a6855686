#pragma once

#include "ffcov/fq_poly.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace ffcov {

/// Degrees and multiplicities of the distinct monic irreducible factors, sorted.
/// Every function in arith_fn depends on a polynomial only through its shape.
struct FactorShape {
  std::vector<std::pair<int, int>> parts;  // (deg P, multiplicity)

  int degree() const;
  friend bool operator==(const FactorShape&, const FactorShape&) = default;
  friend auto operator<=>(const FactorShape&, const FactorShape&) = default;
};

struct Factorization {
  Residue unit = 1;
  std::vector<std::pair<Poly, int>> factors;  // distinct monic irreducibles, sorted

  Poly product(const Field& field) const;
  FactorShape shape() const;
};

/// Complete factorization via squarefree, distinct-degree and equal-degree
/// (Cantor-Zassenhaus) splitting. `seed` drives the equal-degree stage only;
/// the result itself is canonical. Throws DomainError for f == 0.
Factorization factor(const Poly& f, std::uint64_t seed = 0x5eed);

/// Rabin-style irreducibility via distinct-degree factorization.
bool is_irreducible(const Poly& f);

/// Factor shapes of every monic polynomial of degree <= max_degree, built by a
/// multiplicative sieve over the monic irreducibles instead of factoring each
/// polynomial. Shapes are interned; `shape_id(d, index)` indexes `shapes()`.
class FactorSieve {
 public:
  FactorSieve(Field field, int max_degree, std::uint64_t max_entries = 50'000'000);

  const Field& field() const { return field_; }
  int max_degree() const { return max_degree_; }
  std::uint32_t shape_id(int degree, std::uint64_t index) const {
    return ids_[static_cast<std::size_t>(degree)][index];
  }
  const FactorShape& shape(int degree, std::uint64_t index) const {
    return shapes_[shape_id(degree, index)];
  }
  const std::vector<FactorShape>& shapes() const { return shapes_; }
  /// Monic irreducibles of the given degree, as indices into that degree.
  const std::vector<std::uint64_t>& irreducibles(int degree) const {
    return irreducibles_[static_cast<std::size_t>(degree)];
  }

 private:
  Field field_;
  int max_degree_;
  std::vector<std::vector<std::uint32_t>> ids_;
  std::vector<FactorShape> shapes_;
  std::vector<std::vector<std::uint64_t>> irreducibles_;
};

}  // namespace ffcov
