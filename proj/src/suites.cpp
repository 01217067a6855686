#include "ffcov/suites.hpp"

#include "ffcov/arith_fn.hpp"
#include "ffcov/characters.hpp"
#include "ffcov/error.hpp"
#include "ffcov/experiments.hpp"
#include "ffcov/lfunc.hpp"
#include "ffcov/parallel.hpp"
#include "ffcov/rng.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

namespace ffcov {

void CheckTally::record(bool pass, const std::string& what) {
  ++checked;
  if (!pass) {
    if (failed == 0) first_failure = what;
    ++failed;
  }
}

namespace {

std::string label(std::initializer_list<std::pair<const char*, long long>> kv) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : kv) {
    os << (first ? "" : " ") << k << '=' << v;
    first = false;
  }
  return os.str();
}

std::int64_t binom(int n, int k) {
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Poly random_nonzero(const Field& F, int deg, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> c(0, F.q() - 1), u(1, F.q() - 1);
  std::vector<Residue> v(static_cast<std::size_t>(deg) + 1);
  for (auto& x : v) x = c(rng);
  v.back() = u(rng);
  return Poly(F, v);
}

}  // namespace

std::vector<CheckTally> identity_suites(const std::vector<std::uint32_t>& qs, int max_deg, int max_j, int pairs,
                                        std::uint64_t seed) {
  CheckTally rec{"lambda_recursion_vs_mobius"}, bound{"lambda_bound"}, avg{"lambda_mn_sum"},
      conv{"coprime_convolution"};
  for (std::uint32_t q : qs) {
    const Field F(q);
    const FactorSieve sieve(F, max_deg);
    // Values depend on a polynomial only through its shape; evaluate each shape once.
    std::vector<std::vector<std::int64_t>> mob(sieve.shapes().size()), recv(sieve.shapes().size());
    for (std::size_t s = 0; s < sieve.shapes().size(); ++s)
      for (int j = 0; j <= max_j; ++j) {
        mob[s].push_back(lambda_j_mobius(j, sieve.shapes()[s]));
        recv[s].push_back(lambda_j_recursive(j, sieve.shapes()[s]));
      }
    for (int n = 0; n <= max_deg; ++n) {
      std::vector<BigInt> sums(static_cast<std::size_t>(max_j) + 1, 0);
      for (std::uint64_t i = 0; i < monic_count(q, n); ++i) {
        const auto id = sieve.shape_id(n, i);
        for (int j = 0; j <= max_j; ++j) {
          const std::int64_t a = mob[id][static_cast<std::size_t>(j)];
          const std::int64_t b = recv[id][static_cast<std::size_t>(j)];
          rec.record(a == b, label({{"q", q}, {"n", n}, {"index", static_cast<long long>(i)}, {"j", j}}));
          if (j >= 1)
            bound.record(0 <= a && a <= ipow64(n, j), label({{"q", q}, {"n", n}, {"index", static_cast<long long>(i)}, {"j", j}}));
          sums[static_cast<std::size_t>(j)] += a;
        }
      }
      if (n >= 1)
        for (int j = 1; j <= max_j; ++j)
          avg.record(sums[static_cast<std::size_t>(j)] == vm_average_closed(q, j, n), label({{"q", q}, {"n", n}, {"j", j}}));
    }
    if (max_deg >= 2) {
      std::mt19937_64 rng(Rng(seed).split(q).seed());
      int done = 0;
      while (done < pairs) {
        const int df = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_deg - 1));
        const int dg = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_deg - df));
        const Poly f = random_nonzero(F, df, rng), g = random_nonzero(F, dg, rng);
        if (!gcd(f, g).is_one()) continue;
        ++done;
        for (int j = 0; j <= max_j; ++j) {
          std::int64_t rhs = 0;
          for (int l = 0; l <= j; ++l) rhs += binom(j, l) * lambda_j_mobius(l, f) * lambda_j_mobius(j - l, g);
          conv.record(lambda_j_mobius(j, f * g) == rhs, "f=" + f.to_string() + " g=" + g.to_string());
        }
      }
    }
  }
  return {rec, bound, avg, conv};
}

std::vector<CheckTally> character_suites(const std::vector<std::uint32_t>& qs, int max_m, std::uint64_t max_phi,
                                         int pairs, std::uint64_t seed) {
  CheckTally counts{"character_counts"}, orth{"orthogonality"};
  for (std::uint32_t q : qs)
    for (int m = 1; m <= max_m; ++m) {
      if (phi(q, m) > max_phi) continue;
      const auto G = UnitGroup::build(q, m);
      std::uint64_t all = 0, ev = 0, prim = 0, evprim = 0;
      for (std::uint64_t id = 0; id < G->order(); ++id) {
        const auto f = classify(*G, exponents_from_id(*G, id));
        ++all;
        ev += f.is_even;
        prim += f.is_primitive;
        evprim += f.is_even && f.is_primitive;
      }
      const std::string where = label({{"q", q}, {"m", m}});
      counts.record(all == phi(q, m), "phi " + where);
      counts.record(ev == phi_ev(q, m), "phi_ev " + where);
      counts.record(prim == phi_prim(q, m), "phi_prim " + where);
      counts.record(evprim == phi_evprim(q, m), "phi_evprim " + where);

      std::mt19937_64 rng(Rng(seed).split(q * 64 + static_cast<std::uint64_t>(m)).seed());
      const Field F(q);
      for (int t = 0; t < pairs; ++t) {
        const Poly f = random_nonzero(F, static_cast<int>(rng() % static_cast<std::uint64_t>(m + 2)), rng);
        Poly g = random_nonzero(F, static_cast<int>(rng() % static_cast<std::uint64_t>(m + 2)), rng);
        if (t % 3 == 0) g = f + Poly::monomial(F, 1, m) * g;  // congruent partner
        for (const auto& [a, b] : {std::pair{f, g}, std::pair{f, f}, std::pair{f.shifted(1), g}}) {
          const double r = orthogonality_residual(G, a, b);
          orth.worst = std::max(orth.worst, r);
          orth.record(r <= 1e-10, where + " f=" + a.to_string() + " g=" + b.to_string());
        }
      }
    }
  return {counts, orth};
}

std::vector<CheckTally> rh_suites(const std::vector<std::uint32_t>& qs, const std::vector<int>& ms, unsigned threads) {
  CheckTally rh{"weil_rh"}, prim{"primitive_structure"};
  for (std::uint32_t q : qs)
    for (int m : ms) {
      const auto G = UnitGroup::build(q, m);
      struct Out {
        bool rh = false, structure = true, primitive = false;
        double dev = 0;
        std::string msg;
      };
      std::vector<Out> out(G->order() - 1);
      parallel_for(out.size(), threads, [&](std::size_t i) {
        const auto chi = character_from_id(G, i + 1);
        const auto L = l_polynomial(chi, 1);
        const auto r = rh_check(L);
        Out& o = out[i];
        o.rh = r.pass;
        o.dev = r.max_deviation;
        o.primitive = chi.is_primitive();
        if (o.primitive) {
          o.structure = r.degree == m - 1 && r.unit_circle_roots == (chi.is_even() ? 1 : 0);
          try {
            const auto s = frobenius_spectrum(chi);
            o.structure = o.structure && s.dimension() == m - 1 - s.lambda_chi;
          } catch (const IntegrityError& e) {
            o.structure = false;
            o.msg = e.what();
          }
        }
      });
      for (std::size_t i = 0; i < out.size(); ++i) {
        const std::string where = label({{"q", q}, {"m", m}, {"char", static_cast<long long>(i + 1)}});
        rh.worst = std::max(rh.worst, out[i].dev);
        rh.record(out[i].rh, where);
        if (out[i].primitive) prim.record(out[i].structure, where + " " + out[i].msg);
      }
    }
  return {rh, prim};
}

std::vector<CheckTally> explicit_suites(const std::vector<std::uint32_t>& qs, int m, int max_n, int max_mk,
                                        unsigned threads) {
  CheckTally ex{"explicit_formula"}, ds{"delta_hook_schur"};
  for (std::uint32_t q : qs) {
    const Field F(q);
    const FactorSieve sieve(F, std::max(max_n, max_mk));
    const auto G = UnitGroup::build(q, m);
    std::vector<std::vector<std::int64_t>> lw(static_cast<std::size_t>(max_n) + 1);
    for (int n = 1; n <= max_n; ++n) lw[static_cast<std::size_t>(n)] = residue_weights(lambda_values(sieve, 1, n), q, n, m);
    std::map<std::pair<int, int>, std::vector<std::int64_t>> dw;
    for (int a = 1; a <= max_mk; ++a)
      for (int k = 0; a + k <= max_mk; ++k) dw[{a, k}] = residue_weights(delta_values(sieve, a, a + k), q, a + k, m);

    const auto ids = character_ids(*G, [](const CharacterFlags& f) { return f.is_primitive; });
    struct Out {
      std::vector<double> ex;  // residual / q^{n/2}
      std::vector<double> ds;
      bool odd = false;
    };
    std::vector<Out> out(ids.size());
    parallel_for(ids.size(), threads, [&](std::size_t i) {
      const auto chi = character_from_id(G, ids[i]);
      const auto spec = frobenius_spectrum(chi);
      for (int n = 1; n <= max_n; ++n)
        out[i].ex.push_back(explicit_formula_residual(chi, spec, lw[static_cast<std::size_t>(n)], n) /
                            std::pow(static_cast<double>(q), n / 2.0));
      out[i].odd = !chi.is_even();
      if (out[i].odd)
        for (const auto& [key, w] : dw) out[i].ds.push_back(delta_schur_residual(chi, spec, w, key.first, key.second));
    });
    for (std::size_t i = 0; i < out.size(); ++i) {
      const std::string where = label({{"q", q}, {"m", m}, {"char", static_cast<long long>(ids[i])}});
      for (std::size_t n = 0; n < out[i].ex.size(); ++n) {
        ex.worst = std::max(ex.worst, out[i].ex[n]);
        ex.record(out[i].ex[n] <= 1e-6, where + " n=" + std::to_string(n + 1));
      }
      std::size_t c = 0;
      for (const auto& [key, w] : dw) {
        if (!out[i].odd) break;
        ds.worst = std::max(ds.worst, out[i].ds[c]);
        ds.record(out[i].ds[c] <= 1e-6, where + " m'=" + std::to_string(key.first) + " k=" + std::to_string(key.second));
        ++c;
      }
    }
  }
  return {ex, ds};
}

std::vector<CheckTally> step_suites(const std::vector<std::uint32_t>& qs, int max_n, int max_jk, unsigned threads) {
  CheckTally t{"step_identity"};
  for (std::uint32_t q : qs) {
    const FactorSieve sieve(Field(q), max_n);
    for (int n = 4; n <= max_n; ++n)
      for (int h = 0; h <= n - 4; ++h)
        for (int j = 1; j <= max_jk; ++j)
          for (int k = 1; k <= max_jk; ++k) {
            const auto r = step_identity_check(sieve, n, h, j, k, threads);
            t.worst = std::max(t.worst, r.residual / r.tolerance);
            t.record(r.pass, label({{"q", q}, {"n", n}, {"h", h}, {"j", j}, {"k", k}}));
          }
  }
  return {t};
}

namespace {

struct Acc {
  Complex sum = 0;
  double sumsq = 0;

  void add(Complex x) {
    sum += x;
    sumsq += std::norm(x);
  }
  McEstimate finish(std::uint64_t n) const {
    McEstimate e;
    e.samples = n;
    const double dn = static_cast<double>(n);
    e.mean = sum / dn;
    if (n > 1) e.stderr = std::sqrt(std::max(0.0, (sumsq - dn * std::norm(e.mean)) / (dn - 1) / dn));
    return e;
  }
};

std::string hook_label(HookPartition h) { return "(" + std::to_string(h.arm) + ",1^" + std::to_string(h.leg) + ")"; }

}  // namespace

std::vector<McRow> rmt_mc_suite(int max_N, std::uint64_t samples, std::uint64_t seed, unsigned threads) {
  constexpr int kPow = 6, kJ = 3, kHook = 5;
  std::vector<McRow> rows;
  const Rng root(seed);
  for (int N = 1; N <= max_N; ++N) {
    const auto ensemble = haar_ensemble(N, kPow, samples, root.split(static_cast<std::uint64_t>(N)).seed(), threads);
    std::vector<HookPartition> hooks;
    for (int size = 1; size <= kHook; ++size)
      for (int leg = 0; leg < size && leg < N; ++leg) hooks.push_back({size - leg, leg});
    const std::size_t H = hooks.size();
    std::vector<Acc> dyson(kPow), schur(H * H), hcov(kJ * kJ * kPow * kPow);
    std::vector<Complex> s(H);
    for (const auto& g : ensemble) {
      for (int n = 1; n <= kPow; ++n) dyson[static_cast<std::size_t>(n - 1)].add(std::norm(g.power(n)));
      const auto v = sym_fn_values(g);
      for (std::size_t a = 0; a < H; ++a) s[a] = hook_schur(hooks[a], v);
      for (std::size_t a = 0; a < H; ++a)
        for (std::size_t b = 0; b < H; ++b) schur[a * H + b].add(s[a] * std::conj(s[b]));
      const auto T = h_table(kJ, kPow, g);
      std::size_t c = 0;
      for (int j = 1; j <= kJ; ++j)
        for (int k = 1; k <= kJ; ++k)
          for (int n = 1; n <= kPow; ++n)
            for (int m = 1; m <= kPow; ++m)
              hcov[c++].add(T[static_cast<std::size_t>(j)][static_cast<std::size_t>(n)] *
                            std::conj(T[static_cast<std::size_t>(k)][static_cast<std::size_t>(m)]));
    }
    const std::uint64_t count = ensemble.size();
    auto push = [&](std::string stat, std::string params, const Acc& acc, double exact) {
      McRow r{std::move(stat), N, std::move(params), acc.finish(count), exact, false};
      r.pass = r.estimate.within(r.exact);
      rows.push_back(std::move(r));
    };
    for (int n = 1; n <= kPow; ++n)
      push("dyson", "n=" + std::to_string(n), dyson[static_cast<std::size_t>(n - 1)], std::min(n, N));
    for (std::size_t a = 0; a < H; ++a)
      for (std::size_t b = 0; b < H; ++b)
        push("schur", hook_label(hooks[a]) + "x" + hook_label(hooks[b]), schur[a * H + b], a == b ? 1.0 : 0.0);
    std::size_t c = 0;
    for (int j = 1; j <= kJ; ++j)
      for (int k = 1; k <= kJ; ++k)
        for (int n = 1; n <= kPow; ++n)
          for (int m = 1; m <= kPow; ++m)
            push("h_covar", label({{"j", j}, {"k", k}, {"n", n}, {"m", m}}), hcov[c++],
                 static_cast<double>(h_covariance_exact(j, k, n, m, N)));
  }

  struct Point {
    Complex A, B, C, D;
    int N;
  };
  const Point points[] = {{0, 0, 0, 0, 3},
                          {0.3, 0.2, 0.1, 0.4, 2},
                          {{0.5, 0.4}, {-0.6, 0.2}, {0.2, -0.3}, 0.5, 3},
                          {0.9, 0.8, 0.5, -0.5, 4},
                          {{0, 0.7}, 0.6, -0.3, {0, 0.4}, 5}};
  std::uint64_t stream = 1000;
  for (const auto& p : points) {
    const auto r = ratio_theorem_check(p.A, p.B, p.C, p.D, p.N, samples, root.split(stream++).seed(), threads);
    std::ostringstream params;
    params << "A=" << p.A << " B=" << p.B << " C=" << p.C << " D=" << p.D;
    McRow row{"ratio", p.N, params.str(), r.lhs, r.rhs, r.pass};
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace ffcov
