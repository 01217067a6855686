#include "ffcov/characters.hpp"

#include "ffcov/error.hpp"
#include "ffcov/numeric.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace ffcov {

namespace {

constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  if (n > 1) out.push_back(n);
  return out;
}

std::vector<std::uint64_t> unpack(std::uint64_t id, const std::vector<std::uint64_t>& radices) {
  std::vector<std::uint64_t> v(radices.size());
  for (std::size_t i = 0; i < radices.size(); ++i) {
    v[i] = id % radices[i];
    id /= radices[i];
  }
  return v;
}

// Index into the root table of the character with exponents `a` at a unit with log id `lid`.
std::uint64_t value_index(const UnitGroup& g, const std::vector<std::uint64_t>& a, std::uint64_t lid) {
  const auto& o = g.factor_orders();
  const std::uint64_t L = g.exponent();
  std::uint64_t k = 0;
  for (std::size_t i = 0; i < o.size(); ++i) {
    const std::uint64_t t = lid % o[i];
    lid /= o[i];
    k = (k + (a[i] * t % o[i]) * (L / o[i])) % L;
  }
  return k;
}

}  // namespace

UnitGroup::UnitGroup(Field field, int m) : field_(field), m_(m) {}

std::shared_ptr<const UnitGroup> UnitGroup::build(std::uint32_t q, int m, std::uint64_t max_residues) {
  if (m < 1) throw DomainError("unit group needs m >= 1");
  Field F(q);
  if (m > 63 || static_cast<double>(m) * std::log2(q) > 62 || ipow64(q, m) > static_cast<std::int64_t>(max_residues))
    throw ResourceError("unit group mod T^" + std::to_string(m) + " over F_" + std::to_string(q) +
                        " exceeds the residue budget " + std::to_string(max_residues));
  std::shared_ptr<UnitGroup> G(new UnitGroup(F, m));
  G->residues_ = static_cast<std::uint64_t>(ipow64(q, m));
  G->order_ = G->residues_ / q * (q - 1);
  const auto primes = prime_factors(G->order_);

  // Current subgroup H: member codes and the mixed-radix log of each.
  std::vector<std::uint64_t> hlog(G->residues_, kNone);
  std::vector<std::uint64_t> members{1};
  hlog[1] = 0;

  while (members.size() < G->order_) {
    const std::uint64_t index = G->order_ / members.size();
    std::uint64_t best = 0, best_order = 0;
    for (std::uint64_t x = 1; x < G->residues_; ++x) {
      if (!G->is_unit(x) || hlog[x] != kNone) continue;
      std::uint64_t ord = index;
      for (std::uint64_t p : primes)
        while (ord % p == 0 && hlog[G->power(x, ord / p)] != kNone) ord /= p;
      if (ord > best_order) {
        best_order = ord;
        best = x;
        if (ord == index) break;
      }
    }
    // Adjust the lift so its order in G equals its order in G/H.
    const auto e = unpack(hlog[G->power(best, best_order)], G->orders_);
    std::uint64_t x = best;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] % best_order != 0) throw IntegrityError("cyclic decomposition failed to split");
      const std::uint64_t back = (G->orders_[i] - e[i] / best_order % G->orders_[i]) % G->orders_[i];
      x = G->multiply(x, G->power(G->gens_[i], back));
    }
    if (G->power(x, best_order) != 1) throw IntegrityError("cyclic decomposition lift has the wrong order");

    const std::uint64_t stride = members.size();
    std::vector<std::uint64_t> grown;
    grown.reserve(stride * best_order);
    std::uint64_t xt = 1;
    for (std::uint64_t t = 0; t < best_order; ++t) {
      for (std::uint64_t i = 0; i < stride; ++i) {
        const std::uint64_t h = t == 0 ? members[i] : G->multiply(members[i], xt);
        if (t != 0) {
          if (hlog[h] != kNone) throw IntegrityError("cyclic decomposition is not direct");
          hlog[h] = hlog[members[i]] + t * stride;
        }
        grown.push_back(h);
      }
      xt = G->multiply(xt, x);
    }
    members = std::move(grown);
    G->gens_.push_back(x);
    G->orders_.push_back(best_order);
  }

  for (std::uint64_t o : G->orders_) G->exponent_ = std::lcm(G->exponent_, o);
  G->logs_ = std::move(hlog);
  G->roots_.resize(G->exponent_);
  for (std::uint64_t k = 0; k < G->exponent_; ++k)
    G->roots_[k] = std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(G->exponent_));
  return G;
}

std::uint64_t UnitGroup::residue(const Poly& f) const {
  if (f.q() != q()) throw DomainError("polynomial over the wrong field");
  std::uint64_t code = 0;
  const int top = std::min(f.degree(), m_ - 1);
  for (int i = top; i >= 0; --i) code = code * q() + f.coeff(i);
  return code;
}

std::uint64_t UnitGroup::multiply(std::uint64_t a, std::uint64_t b) const {
  const std::uint32_t q = this->q();
  std::uint32_t da[64], db[64];
  std::uint64_t acc[64] = {};
  for (int i = 0; i < m_; ++i) {
    da[i] = static_cast<std::uint32_t>(a % q);
    db[i] = static_cast<std::uint32_t>(b % q);
    a /= q;
    b /= q;
  }
  for (int i = 0; i < m_; ++i) {
    if (da[i] == 0) continue;
    for (int j = 0; i + j < m_; ++j) acc[i + j] = (acc[i + j] + static_cast<std::uint64_t>(da[i]) * db[j]) % q;
  }
  std::uint64_t code = 0;
  for (int i = m_ - 1; i >= 0; --i) code = code * q + acc[i];
  return code;
}

std::uint64_t UnitGroup::power(std::uint64_t a, std::uint64_t e) const {
  std::uint64_t r = 1;
  while (e > 0) {
    if (e & 1) r = multiply(r, a);
    e >>= 1;
    if (e > 0) a = multiply(a, a);
  }
  return r;
}

std::vector<std::uint64_t> UnitGroup::log(std::uint64_t code) const {
  if (code >= residues_ || !is_unit(code)) throw DomainError("discrete log of a non-unit");
  return unpack(logs_[code], orders_);
}

CharacterFlags classify(const UnitGroup& g, const std::vector<std::uint64_t>& a) {
  if (a.size() != g.factor_orders().size()) throw DomainError("exponent vector has the wrong length");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] >= g.factor_orders()[i]) throw DomainError("exponent out of range");
  CharacterFlags f;
  f.is_trivial = std::all_of(a.begin(), a.end(), [](std::uint64_t x) { return x == 0; });
  f.is_even = true;
  for (std::uint64_t c = 1; c < g.q() && f.is_even; ++c) f.is_even = value_index(g, a, g.log_id(c)) == 0;
  if (g.modulus_degree() == 1) {
    f.is_primitive = !f.is_trivial;
  } else {
    const std::uint64_t top = g.residue_count() / g.q();
    for (std::uint64_t c = 1; c < g.q() && !f.is_primitive; ++c)
      f.is_primitive = value_index(g, a, g.log_id(1 + c * top)) != 0;
  }
  return f;
}

Character::Character(UnitGroupPtr group, std::vector<std::uint64_t> exponents)
    : group_(std::move(group)), exponents_(std::move(exponents)) {
  flags_ = classify(*group_, exponents_);
  table_.assign(group_->residue_count(), kZero);
  for (std::uint64_t c = 1; c < group_->residue_count(); ++c)
    if (group_->is_unit(c)) table_[c] = static_cast<std::uint32_t>(value_index(*group_, exponents_, group_->log_id(c)));
}

std::uint64_t Character::id() const {
  std::uint64_t id = 0;
  const auto& o = group_->factor_orders();
  for (std::size_t i = o.size(); i-- > 0;) id = id * o[i] + exponents_[i];
  return id;
}

std::vector<std::uint64_t> exponents_from_id(const UnitGroup& g, std::uint64_t id) {
  if (id >= g.order()) throw DomainError("character id out of range");
  return unpack(id, g.factor_orders());
}

Character character_from_id(const UnitGroupPtr& g, std::uint64_t id) { return Character(g, exponents_from_id(*g, id)); }

std::vector<std::uint64_t> character_ids(const UnitGroup& g, const std::function<bool(const CharacterFlags&)>& keep) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t id = 0; id < g.order(); ++id)
    if (!keep || keep(classify(g, exponents_from_id(g, id)))) out.push_back(id);
  return out;
}

void for_each_character(const UnitGroupPtr& g, const std::function<void(const Character&)>& fn) {
  for (std::uint64_t id = 0; id < g->order(); ++id) fn(character_from_id(g, id));
}

double orthogonality_residual(const UnitGroupPtr& g, const Poly& f, const Poly& h) {
  const std::uint64_t cf = g->residue(f), ch = g->residue(h);
  const bool units = g->is_unit(cf) && g->is_unit(ch);
  const double indicator = units && cf == ch ? 1.0 : 0.0;
  std::complex<double> sum = 0;
  if (units) {
    for (std::uint64_t id = 0; id < g->order(); ++id) {
      const auto a = exponents_from_id(*g, id);
      const std::uint64_t kf = value_index(*g, a, g->log_id(cf));
      const std::uint64_t kh = value_index(*g, a, g->log_id(ch));
      sum += std::conj(g->roots()[kf]) * g->roots()[kh];
    }
  }
  return std::abs(sum / static_cast<double>(g->order()) - indicator);
}

double unit_sum_residual(const Character& chi) {
  std::complex<double> sum = 0;
  for (std::uint64_t c = 1; c < chi.group().q(); ++c) sum += chi.at(c);
  return std::abs(sum - (chi.is_even() ? static_cast<double>(chi.group().q() - 1) : 0.0));
}

bool unit_sum_check(const Character& chi, double tol) { return unit_sum_residual(chi) <= tol; }

std::uint64_t phi(std::uint32_t q, int m) {
  if (m < 1) throw DomainError("phi needs m >= 1");
  return static_cast<std::uint64_t>(ipow64(q, m - 1)) * (q - 1);
}

std::uint64_t phi_prim(std::uint32_t q, int m) {
  if (m < 1) throw DomainError("phi_prim needs m >= 1");
  if (m == 1) return q - 2;
  return static_cast<std::uint64_t>(ipow64(q, m - 2)) * (q - 1) * (q - 1);
}

std::uint64_t phi_ev(std::uint32_t q, int m) {
  if (m < 1) throw DomainError("phi_ev needs m >= 1");
  return static_cast<std::uint64_t>(ipow64(q, m - 1));
}

std::uint64_t phi_evprim(std::uint32_t q, int m) {
  if (m < 1) throw DomainError("phi_evprim needs m >= 1");
  if (m == 1) return 0;
  return static_cast<std::uint64_t>(ipow64(q, m - 2)) * (q - 1);
}

nlohmann::json to_json(const Character& chi) {
  return nlohmann::json{{"q", chi.group().q()},
                        {"m", chi.group().modulus_degree()},
                        {"exponent_vector", chi.exponents()},
                        {"is_even", chi.is_even()},
                        {"is_primitive", chi.is_primitive()}};
}

Character character_from_json(const nlohmann::json& j) {
  try {
    const auto g = UnitGroup::build(j.at("q").get<std::uint32_t>(), j.at("m").get<int>());
    Character chi(g, j.at("exponent_vector").get<std::vector<std::uint64_t>>());
    if (chi.is_even() != j.at("is_even").get<bool>() || chi.is_primitive() != j.at("is_primitive").get<bool>())
      throw IntegrityError("character flags do not match the exponent vector");
    return chi;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed character record: ") + e.what());
  }
}

}  // namespace ffcov
