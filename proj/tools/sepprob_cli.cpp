#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "sepprob/legendre.hpp"
#include "sepprob/moments.hpp"
#include "sepprob/random_states.hpp"
#include "sepprob/sympoly.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

using namespace sepprob;

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::INVALID_ARGUMENT, "cannot write " + path);
  out << text << "\n";
}

ReconPrecision parse_precision(const std::string& s, unsigned long degree) {
  if (s == "auto" || s.empty()) {
    if (const char* env = std::getenv("SEPPROB_PRECISION"))
      return parse_precision(env, degree);
    return default_reconstruction_precision(degree);
  }
  if (s == "exact") return std::nullopt;
  long bits = std::stol(s);
  if (bits < 2) throw Error(ErrorCode::INVALID_ARGUMENT, "precision too small");
  return ReconPrecision(bits);
}

nlohmann::json base_config(const std::string& command) {
  return {{"command", command}, {"version", kVersion}};
}

int cmd_pformula(const std::string& alpha_str, const std::string& eps_str) {
  DysonIndex alpha{ParamValue(parse_rational(alpha_str))};
  Rational eps = parse_rational(eps_str);
  auto res = p_concise(alpha, eps);
  nlohmann::json j = base_config("pformula");
  j["alpha"] = alpha_str;
  j["epsilon"] = to_string(eps);
  j["value"] = res.value.to_double();
  if (res.value.is_rational()) j["value_exact"] = to_string(res.value.rational());
  j["terms_used"] = res.terms_used;
  j["tail_bound"] = res.tail_bound;
  j["tail_ratio"] = res.tail_ratio;
  static const std::map<Rational, Rational> known = {
      {Rational(1, 2), Rational(29, 64)},
      {Rational(1), Rational(8, 33)},
      {Rational(3, 2), Rational(36061, 262144)},
      {Rational(2), Rational(26, 323)},
      {Rational(4), Rational(44482, 4091349)},
  };
  if (alpha.is_rational()) {
    auto it = known.find(alpha.rational());
    if (it != known.end()) {
      double delta = std::fabs(res.value.to_double() - it->second.get_d());
      if (delta < eps.get_d() * 10) j["matched"] = to_string(it->second);
    }
  }
  emit(j.dump(), "");
  return 0;
}

int cmd_moments(const std::string& variable, const std::string& alpha_str,
                unsigned long k, unsigned long n_max, const std::string& format,
                const std::string& out) {
  MomentSpec spec(moment_variable_from_name(variable),
                  DysonIndex{ParamValue(parse_rational(alpha_str))}, k);
  MomentSequence seq = build_sequence(spec, n_max);
  emit(format == "csv" ? seq.to_csv() : seq.to_json(), out);
  return 0;
}

int cmd_sepprob(const std::string& alpha_str, const std::string& variable,
                unsigned long degree, const std::string& precision,
                bool extended) {
  DysonIndex alpha{ParamValue(parse_rational(alpha_str))};
  MomentVariable var = moment_variable_from_name(variable);
  ReconPrecision prec = parse_precision(precision, degree);
  auto rep = separability_ratio(alpha, var, degree, prec);
  nlohmann::json j = nlohmann::json::parse(rep.to_json(MomentSpec(var, alpha, 0)));
  j["command"] = "sepprob";
  j["version"] = kVersion;
  if (extended) {
    ParamValue p = prob_between(rep.expansion, Rational(-1, 432), Rational(1, 432));
    j["prob_extended"] = p.to_double();
  }
  emit(j.dump(), "");
  return 0;
}

int cmd_mc(const std::string& field_str, unsigned long samples,
           std::uint64_t seed, int dim, unsigned streams, bool degenerate) {
  FieldKind field = field_kind_from_name(field_str);
  if (dim == 6) {
    auto st = estimate_qubit_qutrit(field, samples, seed, streams);
    nlohmann::json j = base_config("mc");
    j["field"] = field_str;
    j["dim"] = 6;
    j["n_samples"] = samples;
    j["seed"] = seed;
    j["streams"] = streams;
    j["diff_mean"] = st.diff_mean.mean;
    j["diff_stderr"] = st.diff_mean.se;
    j["det_range_violations"] = st.det_range_violations;
    j["pt_range_violations"] = st.pt_range_violations;
    emit(j.dump(), "");
    return 0;
  }
  if (dim != 4) throw Error(ErrorCode::INVALID_ARGUMENT, "dim must be 4 or 6");
  auto st = estimate_probabilities(field, samples, seed, streams, degenerate);
  nlohmann::json j = nlohmann::json::parse(st.to_json());
  j["command"] = "mc";
  j["version"] = kVersion;
  j["degenerate"] = degenerate;
  emit(j.dump(), "");
  return 0;
}

bool report_line(const VerificationReport& r) {
  std::cout << r.to_json() << "\n";
  return r.match;
}

int cmd_verify(const std::string& suite, unsigned long max_n,
               std::uint64_t seed) {
  bool ok = true;
  bool all = suite == "all";
  auto note = [&](const std::string& check, bool pass, nlohmann::json extra) {
    extra["check"] = check;
    extra["match"] = pass;
    std::cout << extra.dump() << "\n";
    ok = ok && pass;
  };

  if (all || suite == "hypergeometric") {
    for (const Rational& a :
         {Rational(1, 2), Rational(1), Rational(3, 2), Rational(2), Rational(5, 2)})
      for (unsigned long n = 0; n <= std::min(max_n, 8ul); ++n)
        for (unsigned long k = 0; k <= 4; ++k) {
          DysonIndex ai{ParamValue(a)};
          bool pass = f2_via_binomial(n, k, ai) == f2_closed(n, k, ai);
          if (!pass || (n == max_n && k == 4))
            note("f2_binomial", pass,
                 {{"n", n}, {"k", k}, {"alpha", to_string(a)}});
          ok = ok && pass;
        }
    RngStream rng(seed, 0);
    bool lemma_ok = true;
    for (unsigned long n = 0; n <= 12; ++n)
      for (unsigned long m = 0; m <= 14; ++m)
        for (int t = 0; t < 20; ++t) {
          Rational x = rat((long)(rng.next_u32() % 41) + 1, 1 + rng.next_u32() % 7);
          lemma_ok = lemma_ok && lemma_sum(n, m, x) == lemma_closed(n, m, x);
        }
    note("pochhammer_lemma", lemma_ok, {{"n_max", 12}, {"m_max", 14}});
    bool direct_ok = true;
    for (const Rational& a : {Rational(1, 2), Rational(1), Rational(3, 2)})
      for (unsigned long n = 0; n <= std::min(max_n, 8ul); ++n) {
        DysonIndex ai{ParamValue(a)};
        direct_ok = direct_ok && moment_ptdet(n, 0, ai) == moment_ptdet_direct(n, ai);
      }
    note("pt_moment_two_term", direct_ok, {{"n_max", std::min(max_n, 8ul)}});
  }

  if (all || suite == "symbolic") {
    for (const Rational& a : {Rational(1, 2), Rational(1)}) {
      unsigned long depth = a == Rational(1, 2) ? 3 : 2;
      depth = std::min(depth, max_n);
      for (unsigned long n = 0; n <= depth; ++n)
        for (unsigned long k = 0; k <= 2; ++k)
          ok = report_line(verify_f2(n, k, a)) && ok;
      for (unsigned long n = 1; n <= std::min(max_n, 2ul); ++n) {
        for (unsigned long k = 1; k <= 2; ++k)
          ok = report_line(verify_degenerate_conjecture(n, k, a)) && ok;
        ok = report_line(verify_degenerate_corollary(n, a)) && ok;
      }
    }
  }

  if (all || suite == "transforms") {
    for (const Rational& a :
         {Rational(1, 2), Rational(1), Rational(2), Rational(7, 3)}) {
      auto rep = equal_probability_check(DysonIndex{ParamValue(a)},
                                         std::max(1ul, std::min(max_n, 50ul)));
      note("equal_probability", rep.moments_equal,
           {{"alpha", to_string(a)},
            {"checked", rep.checked},
            {"reconstruction_delta", rep.difference.to_double()}});
    }
  }

  if (all || suite == "symmetry") {
    for (auto f : {FieldKind::REAL, FieldKind::COMPLEX}) {
      auto r = symmetry_check(f, 1000000, seed);
      note("pt_symmetry", r.within_four_sigma,
           {{"field", field_kind_name(f)},
            {"fraction", r.fraction},
            {"four_sigma", r.four_sigma},
            {"ties", r.ties}});
    }
  }
  return ok ? 0 : 1;
}

int cmd_density_curve(const std::string& alpha_str, const std::string& variable,
                      unsigned long degree, const std::string& precision,
                      unsigned long points, const std::string& out) {
  DysonIndex alpha{ParamValue(parse_rational(alpha_str))};
  MomentSpec spec(moment_variable_from_name(variable), alpha, 0);
  MomentSequence seq = build_sequence(spec, degree);
  auto exp = fit_density(seq, degree, parse_precision(precision, degree));
  emit(density_curve_csv(exp, points), out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Separability probabilities of generalized two-qubit states: "
               "exact formulas, moment-based density reconstruction, and "
               "Monte Carlo estimation"};
  app.require_subcommand(1);

  std::string alpha = "1", variable = "diff", precision = "auto";
  std::string epsilon = "1/1000000000000";
  std::string format = "json", out, field = "complex", suite = "all";
  unsigned long k = 0, n_max = 8, degree = 101, points = 200, samples = 1000000;
  unsigned long max_n = 8;
  std::uint64_t seed = 20260826;
  unsigned streams = 4;
  int dim = 4;
  int threads = 0;
  bool extended = false, degenerate = false;
  app.add_option("--threads", threads,
                 "worker cap (modules are currently sequential)");

  auto* pf = app.add_subcommand("pformula", "sum the separability-probability series");
  pf->add_option("--alpha", alpha, "Dyson-like index, as p/q")->required();
  pf->add_option("--epsilon", epsilon, "tail bound target, as p/q");

  auto* mo = app.add_subcommand("moments", "emit an exact moment sequence");
  mo->add_option("--variable", variable, "pt_det | diff | degenerate");
  mo->add_option("--alpha", alpha, "p/q")->required();
  mo->add_option("--k", k, "determinant weight power");
  mo->add_option("--n-max", n_max, "highest moment order");
  mo->add_option("--format", format, "json | csv");
  mo->add_option("--output", out, "file path, - for stdout");

  auto* sp = app.add_subcommand("sepprob", "reconstruct the density and integrate");
  sp->add_option("--alpha", alpha, "p/q")->required();
  sp->add_option("--variable", variable, "diff | degenerate");
  sp->add_option("--degree", degree, "Legendre expansion degree");
  sp->add_option("--precision", precision, "exact | auto | bits");
  sp->add_flag("--extended", extended, "also integrate over [-1/432, 1/432]");

  auto* mc = app.add_subcommand("mc", "Monte Carlo sampling");
  mc->add_option("--field", field, "real | complex | quaternion");
  mc->add_option("--samples", samples, "sample count");
  mc->add_option("--seed", seed, "RNG seed");
  mc->add_option("--streams", streams, "independent RNG streams");
  mc->add_option("--dim", dim, "4 or 6");
  mc->add_flag("--degenerate", degenerate, "sample the |rho| = 0 boundary law");

  auto* vf = app.add_subcommand("verify", "run verification suites");
  vf->add_option("--suite", suite,
                 "hypergeometric | symbolic | transforms | symmetry | all");
  vf->add_option("--max-n", max_n, "depth cap for exact suites");
  vf->add_option("--seed", seed, "seed for randomized/statistical checks");

  auto* dc = app.add_subcommand("density-curve", "emit x,f(x) CSV");
  dc->add_option("--alpha", alpha, "p/q")->required();
  dc->add_option("--variable", variable, "diff | degenerate");
  dc->add_option("--degree", degree, "expansion degree");
  dc->add_option("--precision", precision, "exact | auto | bits");
  dc->add_option("--points", points, "sample count");
  dc->add_option("--output", out, "file path, - for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (pf->parsed()) return cmd_pformula(alpha, epsilon);
    if (mo->parsed()) return cmd_moments(variable, alpha, k, n_max, format, out);
    if (sp->parsed()) return cmd_sepprob(alpha, variable, degree, precision, extended);
    if (mc->parsed()) return cmd_mc(field, samples, seed, dim, streams, degenerate);
    if (vf->parsed()) return cmd_verify(suite, max_n, seed);
    if (dc->parsed())
      return cmd_density_curve(alpha, variable, degree, precision, points, out);
  } catch (const sepprob::Error& e) {
    std::cerr << "error [" << sepprob::error_code_name(e.code()) << "]: "
              << e.what() << "\n";
    return e.code() == sepprob::ErrorCode::PRECISION_TOO_LOW ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
