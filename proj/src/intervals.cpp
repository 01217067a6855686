#include "ffcov/intervals.hpp"

#include "ffcov/arith_fn.hpp"
#include "ffcov/error.hpp"

namespace ffcov {

IntervalSpec::IntervalSpec(const Poly& center, int h) : center_(center.field()), h_(h) {
  if (!center.is_monic()) throw DomainError("interval center must be monic");
  if (h < 0 || h >= center.degree())
    throw DomainError("interval radius h must satisfy 0 <= h < deg f");
  std::vector<Residue> c(center.coeffs().begin(), center.coeffs().end());
  for (int i = 0; i <= h; ++i) c[static_cast<std::size_t>(i)] = 0;
  center_ = Poly(center.field(), std::move(c));
}

std::uint64_t IntervalSpec::size() const { return monic_count(center_.q(), h_ + 1); }

std::uint64_t IntervalSpec::bucket() const { return monic_index(center_) / size(); }

std::vector<Poly> interval_members(const IntervalSpec& spec) {
  const Field& F = spec.center().field();
  std::vector<Poly> out;
  out.reserve(spec.size());
  for (std::uint64_t low = 0; low < spec.size(); ++low) {
    std::vector<Residue> c(spec.center().coeffs().begin(), spec.center().coeffs().end());
    std::uint64_t v = low;
    for (int i = 0; i <= spec.h(); ++i, v /= F.q()) c[static_cast<std::size_t>(i)] = static_cast<Residue>(v % F.q());
    out.emplace_back(F, std::move(c));
  }
  return out;
}

std::int64_t psi_j(int j, const IntervalSpec& spec) {
  std::int64_t s = 0;
  for (const Poly& g : interval_members(spec)) s += lambda_j_mobius(j, g);
  return s;
}

std::int64_t psi_j_tilde(int j, const IntervalSpec& spec) {
  std::int64_t s = 0;
  for (const Poly& g : interval_members(spec)) s += lambda_tilde(j, g);
  return s;
}

Rational psi_j_tilde_natural(int j, const IntervalSpec& spec) {
  const Rational mean = e_natural(spec.center().field(), j, spec.degree());
  Rational s = 0;
  for (const Poly& g : interval_members(spec)) {
    if (g.coeff(0) == 0) continue;
    s += Rational(lambda_j_mobius(j, g)) - mean;
  }
  return s;
}

Poly involution_star(const Poly& f) {
  if (f.coeff(0) == 0) throw DomainError("involution_star needs f(0) != 0");
  std::vector<Residue> c(f.coeffs().rbegin(), f.coeffs().rend());
  return Poly(f.field(), std::move(c));
}

Poly drop_low(const Poly& f, int i) {
  if (i < 0) throw DomainError("negative shift");
  if (i > f.degree()) return Poly(f.field());
  return Poly(f.field(), std::vector<Residue>(f.coeffs().begin() + i, f.coeffs().end()));
}

Poly shift_map(const Poly& f, int i) {
  if (i < 0) throw DomainError("negative shift");
  for (int k = 0; k < i; ++k)
    if (f.coeff(k) != 0) throw DomainError("T^" + std::to_string(i) + " does not divide " + f.to_string());
  return drop_low(f, i);
}

bool valuation_decomposition_check(int j, const IntervalSpec& spec) {
  const Poly& f = spec.center();
  const Field& F = f.field();
  const int n = f.degree();
  const int h = spec.h();
  const std::int64_t lhs = psi_j(j, spec);

  std::int64_t rhs = 0;
  for (int i = 0; i <= h; ++i) {
    for (const Poly& g : enumerate_monics(F, n - i)) {
      if (g.coeff(0) == 0) continue;
      const Poly tg = g.shifted(i);
      if ((tg - f).degree() > h) continue;
      rhs += lambda_j_mobius(j, tg);
    }
  }
  rhs += lambda_j_mobius(j, drop_low(f, h + 1).shifted(h + 1));
  return lhs == rhs;
}

std::vector<std::int64_t> interval_sums(std::span<const std::int64_t> values, std::uint32_t q, int h) {
  const std::uint64_t width = monic_count(q, h + 1);
  if (width == 0 || values.size() % width != 0) throw DomainError("values do not tile into intervals");
  std::vector<std::int64_t> out(values.size() / width, 0);
  for (std::size_t i = 0; i < values.size(); ++i) out[i / width] += values[i];
  return out;
}

}  // namespace ffcov
