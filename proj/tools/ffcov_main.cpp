// Command-line front end: identity suites, covariance experiments, L-function
// and Frobenius spectra, Monte Carlo checks.

#include "ffcov/arith_fn.hpp"
#include "ffcov/characters.hpp"
#include "ffcov/error.hpp"
#include "ffcov/experiments.hpp"
#include "ffcov/factor.hpp"
#include "ffcov/lfunc.hpp"
#include "ffcov/parallel.hpp"
#include "ffcov/rmt.hpp"
#include "ffcov/suites.hpp"
#include "ffcov/tolerances.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace ffcov;
using nlohmann::json;

namespace {

struct Common {
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "csv";
  unsigned threads = default_threads();
  std::uint64_t max_enum = 10'000'000;
  bool timing = false;
  Tolerances tol = default_tolerances();
};

// Rows of string cells rendered either as CSV or as a JSON array of objects.
class Table {
 public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}
  void add(std::vector<json> row) { rows_.push_back(std::move(row)); }

  void write(std::ostream& os, const std::string& format) const {
    if (format == "json") {
      json arr = json::array();
      for (const auto& r : rows_) {
        json o;
        for (std::size_t i = 0; i < header_.size(); ++i) o[header_[i]] = r[i];
        arr.push_back(std::move(o));
      }
      os << arr.dump(2) << '\n';
      return;
    }
    for (std::size_t i = 0; i < header_.size(); ++i) os << (i ? "," : "") << header_[i];
    os << '\n';
    for (const auto& r : rows_) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << cell(r[i]);
      os << '\n';
    }
  }

 private:
  static std::string cell(const json& v) {
    if (v.is_null()) return "";
    if (v.is_string()) {
      const auto& t = v.get_ref<const std::string&>();
      if (t.find_first_of(",\"\n") == std::string::npos) return t;
      std::string q = "\"";
      for (char ch : t) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
      return q + "\"";
    }
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_float()) return format_double(v.get<double>());
    return v.dump();
  }

  std::vector<std::string> header_;
  std::vector<std::vector<json>> rows_;
};

void emit(const Common& c, const std::function<void(std::ostream&)>& body) {
  if (c.out.empty()) {
    body(std::cout);
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw ResourceError("cannot open output file " + c.out);
  body(f);
}

void emit_table(const Common& c, const Table& t) {
  emit(c, [&](std::ostream& os) { t.write(os, c.format); });
}

Complex parse_complex(const std::string& s) {
  // "re" or "re,im"
  std::istringstream is(s);
  double re = 0, im = 0;
  char comma = 0;
  if (!(is >> re)) throw DomainError("not a number: " + s);
  if (is >> comma) {
    if (comma != ',' || !(is >> im)) throw DomainError("complex numbers are written re or re,im: " + s);
    if (is >> comma) throw DomainError("trailing characters in " + s);
  }
  return {re, im};
}

std::int64_t elapsed_ms(const Common& c, std::chrono::steady_clock::time_point start) {
  if (!c.timing) return 0;
  return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
}

json complex_text(Complex z) { return format_double(z.real()) + ":" + format_double(z.imag()); }

Complex clean(Complex z) {
  const double tol = default_tolerances().coefficient_zero;
  return {std::abs(z.real()) < tol ? 0.0 : z.real(), std::abs(z.imag()) < tol ? 0.0 : z.imag()};
}

int suite_table(const Common& c, const std::vector<CheckTally>& tallies) {
  Table t({"suite", "checked", "failed", "worst", "first_failure", "seed"});
  bool ok = true;
  for (const auto& s : tallies) {
    t.add({s.name, s.checked, s.failed, s.worst, s.first_failure, c.seed});
    ok = ok && s.ok();
  }
  emit_table(c, t);
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Arithmetic of F_q[T], Dirichlet L-functions and unitary-group statistics"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value file; command-line flags take precedence");
  Common c;
  app.add_option("--seed", c.seed, "random seed, recorded in every output row")->capture_default_str();
  app.add_option("--out", c.out, "output file (default stdout)");
  app.add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--threads", c.threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--max-enum", c.max_enum, "cap on enumerated polynomials")->capture_default_str();
  app.add_flag("--timing", c.timing, "fill the millis column (otherwise 0)");
  app.add_option("--root-tol", c.tol.root, "tolerance on |u| for L-function zeros")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--reconstruction-tol", c.tol.reconstruction, "tolerance when rebuilding L from its spectrum")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  // factor
  auto* factor_cmd = app.add_subcommand("factor", "factor a polynomial given as c0,c1,...,cn@q");
  std::string poly_text;
  factor_cmd->add_option("--poly", poly_text, "polynomial")->required();

  // lambda
  auto* lambda_cmd = app.add_subcommand("lambda", "arithmetic functions of one polynomial or of all of M_n");
  std::string lambda_poly;
  std::uint32_t lambda_q = 0;
  int lambda_n = -1;
  std::vector<int> lambda_js{1};
  lambda_cmd->add_option("--poly", lambda_poly, "single polynomial");
  lambda_cmd->add_option("--q", lambda_q, "field size, with --n");
  lambda_cmd->add_option("--n", lambda_n, "degree, with --q")->check(CLI::NonNegativeNumber);
  lambda_cmd->add_option("--j", lambda_js, "orders")->delimiter(',')->check(CLI::NonNegativeNumber);

  // lfun
  auto* lfun_cmd = app.add_subcommand("lfun", "L-polynomials and the Riemann hypothesis check mod T^m");
  std::uint32_t lfun_q = 0;
  int lfun_m = 0;
  std::int64_t lfun_char = -1;
  lfun_cmd->add_option("--q", lfun_q)->required();
  lfun_cmd->add_option("--m", lfun_m)->required()->check(CLI::PositiveNumber);
  lfun_cmd->add_option("--char", lfun_char, "single character id (default: all nontrivial)");

  // frobenius
  auto* frob_cmd = app.add_subcommand("frobenius", "Frobenius spectra, or ensemble averages with --average");
  std::vector<std::uint32_t> frob_qs;
  int frob_m = 0, frob_j = 1, frob_k = 1, frob_n = 1;
  bool frob_avg = false;
  frob_cmd->add_option("--q", frob_qs)->required()->delimiter(',');
  frob_cmd->add_option("--m", frob_m, "modulus degree (spectra) or M (averages, modulus T^{M+1})")->required();
  frob_cmd->add_flag("--average", frob_avg, "average H_j^{(n)} conj(H_k^{(n)}) over primitive even characters");
  frob_cmd->add_option("--j", frob_j)->check(CLI::PositiveNumber);
  frob_cmd->add_option("--k", frob_k)->check(CLI::PositiveNumber);
  frob_cmd->add_option("--n", frob_n)->check(CLI::PositiveNumber);

  // identities
  auto* id_cmd = app.add_subcommand("identities", "exhaustive identity suites");
  std::vector<std::uint32_t> id_qs{2, 3, 5};
  std::string id_suite = "arith";
  int id_max_deg = 6, id_max_j = 4, id_pairs = 1000, id_max_m = 5, id_m = 4, id_max_n = 5, id_max_mk = 5,
      id_step_n = 6, id_max_jk = 2;
  std::vector<int> id_ms{2, 3, 4, 5};
  std::uint64_t id_max_phi = 100000;
  id_cmd->add_option("--q", id_qs)->delimiter(',')->capture_default_str();
  id_cmd->add_option("--suite", id_suite)
      ->check(CLI::IsMember({"arith", "characters", "rh", "explicit", "step"}))
      ->capture_default_str();
  id_cmd->add_option("--max-deg", id_max_deg, "arith: degree bound")->check(CLI::Range(1, 12));
  id_cmd->add_option("--max-j", id_max_j, "arith: order bound")->check(CLI::Range(0, 8));
  id_cmd->add_option("--pairs", id_pairs, "arith/characters: random pairs per field")->check(CLI::NonNegativeNumber);
  id_cmd->add_option("--max-m", id_max_m, "characters: modulus degree bound")->check(CLI::PositiveNumber);
  id_cmd->add_option("--max-phi", id_max_phi, "characters: group order bound");
  id_cmd->add_option("--ms", id_ms, "rh: modulus degrees")->delimiter(',');
  id_cmd->add_option("--m", id_m, "explicit: modulus degree")->check(CLI::Range(2, 12));
  id_cmd->add_option("--max-n", id_max_n, "explicit: degree bound")->check(CLI::PositiveNumber);
  id_cmd->add_option("--max-mk", id_max_mk, "explicit: bound on m + k")->check(CLI::PositiveNumber);
  id_cmd->add_option("--step-n", id_step_n, "step: degree bound")->check(CLI::Range(4, 12));
  id_cmd->add_option("--max-jk", id_max_jk, "step: order bound")->check(CLI::PositiveNumber);

  // covar / sweep
  struct CovarArgs {
    int experiment = 1, n = 2, h = 0, j = 1, k = 1;
    std::vector<std::uint32_t> qs;
  };
  CovarArgs cv, sw;
  auto add_covar = [](CLI::App* cmd, CovarArgs& a, bool list) {
    cmd->set_help_flag("--help", "Print this help message and exit");
    cmd->add_option("--experiment", a.experiment, "1, 2 or 3")->check(CLI::IsMember({1, 2, 3}))->required();
    auto* q = cmd->add_option("--q", a.qs, list ? "primes" : "prime")->required();
    if (list)
      q->delimiter(',');
    else
      q->expected(1);
    cmd->add_option("--n", a.n)->check(CLI::PositiveNumber);
    cmd->add_option("--h", a.h, "interval radius; -1 gives the Lambda~ covariance");
    cmd->add_option("--j", a.j)->check(CLI::PositiveNumber);
    cmd->add_option("--k", a.k)->check(CLI::PositiveNumber);
  };
  auto* covar_cmd = app.add_subcommand("covar", "one covariance experiment");
  add_covar(covar_cmd, cv, false);
  auto* sweep_cmd = app.add_subcommand("sweep", "covariance experiment over a list of q");
  add_covar(sweep_cmd, sw, true);

  // ratio
  auto* ratio_cmd = app.add_subcommand("ratio", "ratio theorem: Monte Carlo against the closed form");
  std::string rA = "0", rB = "0", rC = "0", rD = "0";
  int rN = 1;
  std::uint64_t samples = 100000;
  ratio_cmd->add_option("--A", rA, "re or re,im");
  ratio_cmd->add_option("--B", rB);
  ratio_cmd->add_option("--C", rC);
  ratio_cmd->add_option("--D", rD);
  ratio_cmd->add_option("--N", rN)->required()->check(CLI::PositiveNumber);
  ratio_cmd->add_option("--samples", samples)->check(CLI::PositiveNumber);

  // rmt-mc
  auto* mc_cmd = app.add_subcommand("rmt-mc", "Monte Carlo checks of unitary-group integrals");
  int mc_N = 5;
  mc_cmd->add_option("--max-N", mc_N)->check(CLI::Range(1, 12));
  mc_cmd->add_option("--samples", samples)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return 2;
  }

  const auto start = std::chrono::steady_clock::now();
  const Budget budget{c.max_enum};
  try {
    if (*factor_cmd) {
      const Poly f = Poly::parse(poly_text);
      const auto fac = factor(f, c.seed);
      Table t({"poly", "unit", "factor", "multiplicity", "seed"});
      for (const auto& [p, e] : fac.factors) t.add({f.to_string(), fac.unit, p.to_string(), e, c.seed});
      if (fac.factors.empty()) t.add({f.to_string(), fac.unit, nullptr, nullptr, c.seed});
      emit_table(c, t);
      return 0;
    }

    if (*lambda_cmd) {
      Table t({"poly", "degree", "mu", "lambda", "j", "lambda_j", "lambda_j_recursive", "lambda_tilde", "seed"});
      auto rows = [&](const Poly& f, const FactorShape& s) {
        for (int j : lambda_js)
          t.add({f.to_string(), f.degree(), mobius(s), von_mangoldt(s), j, lambda_j_mobius(j, s),
                 lambda_j_recursive(j, s), lambda_tilde(j, s), c.seed});
      };
      if (!lambda_poly.empty()) {
        const Poly f = Poly::parse(lambda_poly);
        if (f.is_zero()) throw DomainError("arithmetic functions of the zero polynomial are undefined");
        rows(f, factor(f, c.seed).shape());
      } else {
        if (lambda_q == 0 || lambda_n < 0) throw DomainError("lambda needs --poly, or --q and --n");
        budget.require(monic_count(lambda_q, lambda_n), "lambda table");
        const Field F(lambda_q);
        const FactorSieve sieve(F, lambda_n);
        for (std::uint64_t i = 0; i < monic_count(lambda_q, lambda_n); ++i)
          rows(monic_from_index(F, lambda_n, i), sieve.shape(lambda_n, i));
      }
      emit_table(c, t);
      return 0;
    }

    if (*lfun_cmd) {
      const auto G = UnitGroup::build(lfun_q, lfun_m);
      budget.require(G->order() * G->residue_count(), "L-polynomials mod T^m");
      std::vector<std::uint64_t> ids;
      if (lfun_char >= 0)
        ids.push_back(static_cast<std::uint64_t>(lfun_char));
      else
        for (std::uint64_t id = 1; id < G->order(); ++id) ids.push_back(id);
      Table t({"q", "m", "char_id", "is_even", "is_primitive", "degree", "rh_pass", "max_deviation", "coefficients",
               "seed"});
      bool ok = true;
      for (std::uint64_t id : ids) {
        const auto chi = character_from_id(G, id);
        const auto L = l_polynomial(chi);
        const auto r = rh_check(L, c.tol.root);
        ok = ok && r.pass;
        std::string coeffs;
        for (std::size_t i = 0; i < L.coeffs.size(); ++i)
          coeffs += (i ? " " : "") + complex_text(clean(L.coeffs[i])).get<std::string>();
        t.add({lfun_q, lfun_m, id, chi.is_even(), chi.is_primitive(), r.degree, r.pass, r.max_deviation, coeffs,
               c.seed});
      }
      emit_table(c, t);
      return ok ? 0 : 1;
    }

    if (*frob_cmd) {
      if (frob_avg) {
        Table t({"q", "M", "j", "k", "n", "characters", "average_re", "average_im", "haar", "deviation", "seed",
                 "millis"});
        for (std::uint32_t q : frob_qs) {
          const auto t0 = std::chrono::steady_clock::now();
          budget.require(static_cast<std::uint64_t>(ipow64(q, frob_m + 1)) * phi_evprim(q, frob_m + 1),
                         "ensemble average");
          const auto a = frobenius_ensemble_average(q, frob_m, frob_j, frob_k, frob_n, c.threads);
          t.add({q, frob_m, frob_j, frob_k, frob_n, a.characters, a.average.real(), a.average.imag(), a.haar,
                 a.deviation, c.seed, elapsed_ms(c, t0)});
        }
        emit_table(c, t);
        return 0;
      }
      std::vector<FrobeniusSpectrum> spectra;
      for (std::uint32_t q : frob_qs) {
        const auto G = UnitGroup::build(q, frob_m);
        budget.require(G->order() * G->residue_count(), "Frobenius spectra");
        const auto ids = character_ids(*G, [](const CharacterFlags& f) { return f.is_primitive; });
        std::vector<FrobeniusSpectrum> part(ids.size());
        parallel_for(ids.size(), c.threads,
                     [&](std::size_t i) { part[i] = frobenius_spectrum(character_from_id(G, ids[i]), c.tol); });
        spectra.insert(spectra.end(), part.begin(), part.end());
      }
      if (c.format == "json") {
        json arr = json::array();
        for (const auto& s : spectra)
          arr.push_back({{"q", s.q}, {"m", s.m}, {"char_id", s.char_id}, {"lambda_chi", s.lambda_chi},
                         {"angles", s.angles}});
        emit(c, [&](std::ostream& os) { os << arr.dump(2) << '\n'; });
      } else {
        emit(c, [&](std::ostream& os) { write_spectra_csv(os, spectra); });
      }
      return 0;
    }

    if (*id_cmd) {
      if (id_suite == "arith") return suite_table(c, identity_suites(id_qs, id_max_deg, id_max_j, id_pairs, c.seed));
      if (id_suite == "characters")
        return suite_table(c, character_suites(id_qs, id_max_m, id_max_phi, id_pairs, c.seed));
      if (id_suite == "rh") return suite_table(c, rh_suites(id_qs, id_ms, c.threads));
      if (id_suite == "explicit") return suite_table(c, explicit_suites(id_qs, id_m, id_max_n, id_max_mk, c.threads));
      return suite_table(c, step_suites(id_qs, id_step_n, id_max_jk, c.threads));
    }

    if (*covar_cmd || *sweep_cmd) {
      const CovarArgs& a = *covar_cmd ? cv : sw;
      const auto rows = q_sweep(a.experiment, a.qs, a.n, a.h, a.j, a.k, c.seed, budget, c.timing);
      for (const auto& r : rows) {
        if (!r.warning.empty()) std::cerr << "warning: q=" << r.q << ": " << r.warning << '\n';
        if (!r.error.empty()) std::cerr << "error: q=" << r.q << ": " << r.error << '\n';
      }
      emit(c, [&](std::ostream& os) {
        if (c.format == "json")
          os << covar_json(rows).dump(2) << '\n';
        else
          write_covar_csv(os, rows);
      });
      for (const auto& r : rows)
        if (!r.error.empty()) return 2;
      return 0;
    }

    if (*ratio_cmd) {
      const Complex A = parse_complex(rA), B = parse_complex(rB), C = parse_complex(rC), D = parse_complex(rD);
      const auto r = ratio_theorem_check(A, B, C, D, rN, samples, c.seed, c.threads);
      Table t({"A", "B", "C", "D", "N", "samples", "lhs_re", "lhs_im", "stderr", "rhs_re", "rhs_im", "deviation",
               "pass", "seed", "millis"});
      t.add({complex_text(A), complex_text(B), complex_text(C), complex_text(D), rN, samples, r.lhs.mean.real(),
             r.lhs.mean.imag(), r.lhs.stderr, r.rhs.real(), r.rhs.imag(), r.lhs.deviation(r.rhs), r.pass, c.seed,
             elapsed_ms(c, start)});
      emit_table(c, t);
      return r.pass ? 0 : 1;
    }

    if (*mc_cmd) {
      const auto rows = rmt_mc_suite(mc_N, samples, c.seed, c.threads);
      Table t({"statistic", "N", "params", "mean_re", "mean_im", "stderr", "exact_re", "exact_im", "deviation", "pass",
               "seed"});
      bool ok = true;
      for (const auto& r : rows) {
        ok = ok && r.pass;
        t.add({r.statistic, r.N, r.params, r.estimate.mean.real(), r.estimate.mean.imag(), r.estimate.stderr,
               r.exact.real(), r.exact.imag(), r.estimate.deviation(r.exact), r.pass, c.seed});
      }
      emit_table(c, t);
      return ok ? 0 : 1;
    }
  } catch (const IntegrityError& e) {
    std::cerr << "integrity error: " << e.what() << '\n';
    return 1;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ResourceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
