#pragma once

#include "ffcov/fq_poly.hpp"

#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include <json.hpp>

namespace ffcov {

/// The unit group (F_q[T] / T^m)^x as a direct product of cyclic factors.
/// Residues mod T^m are coded base q with a_0 fastest: code = sum a_i q^i.
class UnitGroup {
 public:
  /// Greedy decomposition: repeatedly take an element of maximal order in the
  /// quotient by the subgroup generated so far. ResourceError if q^m exceeds max_residues.
  static std::shared_ptr<const UnitGroup> build(std::uint32_t q, int m, std::uint64_t max_residues = 1u << 22);

  const Field& field() const { return field_; }
  std::uint32_t q() const { return field_.q(); }
  int modulus_degree() const { return m_; }
  /// q^m, the number of residue codes.
  std::uint64_t residue_count() const { return residues_; }
  /// Phi(T^m) = q^m - q^{m-1}.
  std::uint64_t order() const { return order_; }
  const std::vector<std::uint64_t>& generators() const { return gens_; }
  const std::vector<std::uint64_t>& factor_orders() const { return orders_; }
  /// lcm of the factor orders.
  std::uint64_t exponent() const { return exponent_; }

  std::uint64_t residue(const Poly& f) const;
  bool is_unit(std::uint64_t code) const { return code % q() != 0; }
  std::uint64_t multiply(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t power(std::uint64_t a, std::uint64_t e) const;
  /// Exponent vector of a unit with respect to generators(); DomainError on non-units.
  std::vector<std::uint64_t> log(std::uint64_t code) const;
  /// Mixed-radix packing of log(code) (first factor fastest).
  std::uint64_t log_id(std::uint64_t code) const { return logs_[code]; }

  /// exp(2 pi i k / exponent()).
  const std::vector<std::complex<double>>& roots() const { return roots_; }

 private:
  UnitGroup(Field field, int m);

  Field field_;
  int m_;
  std::uint64_t residues_ = 0;
  std::uint64_t order_ = 0;
  std::uint64_t exponent_ = 1;
  std::vector<std::uint64_t> gens_;
  std::vector<std::uint64_t> orders_;
  std::vector<std::uint64_t> logs_;  // per residue code; non-units hold UINT64_MAX
  std::vector<std::complex<double>> roots_;
};

using UnitGroupPtr = std::shared_ptr<const UnitGroup>;

struct CharacterFlags {
  bool is_trivial = false;
  bool is_even = false;
  bool is_primitive = false;
};

/// Flags of the character with the given exponent vector, without tabulating it.
/// Even: trivial on F_q^x. Primitive: nontrivial on the kernel of reduction
/// to modulus T^{m-1}; for m = 1 that kernel is the whole group.
CharacterFlags classify(const UnitGroup& g, const std::vector<std::uint64_t>& exponents);

/// A Dirichlet character mod T^m: chi(prod g_i^{t_i}) = exp(2 pi i sum a_i t_i / o_i).
class Character {
 public:
  Character(UnitGroupPtr group, std::vector<std::uint64_t> exponents);

  const UnitGroup& group() const { return *group_; }
  const UnitGroupPtr& group_ptr() const { return group_; }
  const std::vector<std::uint64_t>& exponents() const { return exponents_; }
  /// Mixed-radix id of the exponent vector, first factor fastest.
  std::uint64_t id() const;
  const CharacterFlags& flags() const { return flags_; }
  bool is_trivial() const { return flags_.is_trivial; }
  bool is_even() const { return flags_.is_even; }
  bool is_primitive() const { return flags_.is_primitive; }

  /// Value on a residue code (0 on non-units).
  std::complex<double> at(std::uint64_t code) const {
    const std::uint32_t k = table_[code];
    return k == kZero ? std::complex<double>(0) : group_->roots()[k];
  }
  /// Index into group().roots(), or kZero on non-units.
  std::uint32_t root_index(std::uint64_t code) const { return table_[code]; }
  std::complex<double> operator()(const Poly& f) const { return at(group_->residue(f)); }

  static constexpr std::uint32_t kZero = 0xffffffffu;

 private:
  UnitGroupPtr group_;
  std::vector<std::uint64_t> exponents_;
  CharacterFlags flags_;
  std::vector<std::uint32_t> table_;
};

std::vector<std::uint64_t> exponents_from_id(const UnitGroup& g, std::uint64_t id);
Character character_from_id(const UnitGroupPtr& g, std::uint64_t id);
/// Character ids in increasing order whose flags satisfy `keep` (all when empty).
std::vector<std::uint64_t> character_ids(const UnitGroup& g,
                                         const std::function<bool(const CharacterFlags&)>& keep = {});
/// Calls fn on every character in id order, one tabulated character at a time.
void for_each_character(const UnitGroupPtr& g, const std::function<void(const Character&)>& fn);

/// |(1/Phi) sum_chi conj(chi(f)) chi(g) - [f = g mod T^m and fg coprime to T]|.
double orthogonality_residual(const UnitGroupPtr& g, const Poly& f, const Poly& h);
/// |sum_{c in F_q^x} chi(c) - (q-1)[chi even]|.
double unit_sum_residual(const Character& chi);
bool unit_sum_check(const Character& chi, double tol = 1e-10);

/// Counting functions for the modulus T^m (m >= 1). For m = 1 the primitive
/// counts are the Mobius-inversion values q - 2 and 0.
std::uint64_t phi(std::uint32_t q, int m);
std::uint64_t phi_prim(std::uint32_t q, int m);
std::uint64_t phi_ev(std::uint32_t q, int m);
std::uint64_t phi_evprim(std::uint32_t q, int m);

/// {q, m, exponent_vector, is_even, is_primitive}.
nlohmann::json to_json(const Character& chi);
/// Rebuilds the group and value table; IntegrityError if the stored flags disagree.
Character character_from_json(const nlohmann::json& j);

}  // namespace ffcov
