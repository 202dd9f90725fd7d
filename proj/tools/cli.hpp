#pragma once

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <variant>
#include <string>
#include <vector>

#include "nangle/axioms.hpp"

namespace nangle::cli {

struct RunConfig {
  std::string command;
  std::string mode;  // angulate: standard | complete
  std::string input;
  std::size_t m = 1;
  std::optional<std::size_t> n;
  std::size_t samples = 100;
  std::uint64_t seed = 0;
  std::size_t max = 12;
  std::string emit;
  bool perturb_choices = false;
  bool verbose = false;
};

inline constexpr const char* kSeedEnv = "NANGLE_SEED";

namespace detail {

struct Outcome {
  int code = 0;
  Json report;
};

inline Json header(const RunConfig& c) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["command"] = c.command;
  if (!c.mode.empty()) j["mode"] = c.mode;
  j["input"] = c.input;
  j["seed"] = c.seed;
  return j;
}

inline Outcome failure(Json report, const std::string& kind, const std::string& message) {
  report["failure"] = Json{{"kind", kind}, {"message", message}};
  return Outcome{1, std::move(report)};
}

template <class F>
std::optional<Outcome> self_injective_or_fail(const AlgebraPtr<F>& a, Json& report, std::ostream& err) {
  try {
    auto nd = check_self_injective(a);
    report["self_injective"] = true;
    report["nakayama_permutation"] = nd.permutation;
    report["socle_labels"] = nd.socle_labels;
    return std::nullopt;
  } catch (const NotSelfInjective& e) {
    err << "not self-injective: " << e.what() << "\n";
    report["self_injective"] = false;
    report["failure"] = Json{{"kind", "not-self-injective"}, {"message", e.what()}, {"vertex", e.vertex()}};
    return Outcome{1, report};
  }
}

template <class F>
Outcome run_algebra(const RunConfig& c, const QuiverAlgebra<F>& qa, std::ostream& err) {
  Json r = header(c);
  r["field"] = field_json(qa.algebra->field());
  r["vertices"] = qa.spec.quiver.vertices;
  r["nilpotency"] = qa.nilpotency;
  r["algebra"] = algebra_json(*qa.algebra);
  if (auto fail = self_injective_or_fail(qa.algebra, r, err)) return *fail;
  if (c.verbose) err << "dim A = " << qa.algebra->dim() << ", self-injective\n";
  return Outcome{0, r};
}

template <class F>
std::optional<PeriodicityReport<F>> scan(const RunConfig& c, const AlgebraPtr<F>& a, Json& r, Choices ch = {}) {
  auto rep = quasi_period_scan(a, c.n ? *c.n : c.max, c.n, ch);
  if (rep) r["periodicity"] = periodicity_json(*rep);
  else r["periodicity"] = nullptr;
  return rep;
}

inline std::string no_period_message(const RunConfig& c) {
  return c.n ? "the syzygy of degree " + std::to_string(*c.n) + " is not a twisted bimodule"
             : "no twisted syzygy up to degree " + std::to_string(c.max);
}

template <class F>
Outcome run_period(const RunConfig& c, const QuiverAlgebra<F>& qa, std::ostream& err) {
  Json r = header(c);
  if (auto fail = self_injective_or_fail(qa.algebra, r, err)) return *fail;
  auto rep = scan(c, qa.algebra, r);
  if (!rep) {
    err << no_period_message(c) << "\n";
    return failure(r, "no-period", no_period_message(c));
  }
  if (c.verbose)
    err << "quasi-period " << rep->quasi_period << ", twist order "
        << (rep->twist_order ? std::to_string(*rep->twist_order) : "unknown") << ", period "
        << (rep->period ? std::to_string(*rep->period) : "unknown") << "\n";
  return Outcome{0, r};
}

template <class F>
Json functor_json(const FunctorSequence<F>& fs) {
  Json j;
  j["n"] = fs.n();
  j["m"] = fs.m;
  j["suspension_twist"] = automorphism_json(fs.sigma_functor.tau);
  Json om = Json::array();
  for (auto v : fs.sigma_functor.object_map()) om.push_back(v);
  j["suspension_object_map"] = om;
  Json dims = Json::array();
  for (const auto& b : fs.bimodules) dims.push_back(b->dim());
  j["bimodule_dims"] = dims;
  return j;
}

/// Periodicity scan plus functor sequence; returns an outcome instead when either step fails.
template <class F>
std::variant<FunctorSequence<F>, Outcome> prepare(const RunConfig& c, const QuiverAlgebra<F>& qa, Json& r,
                                                  std::ostream& err) {
  if (auto fail = self_injective_or_fail(qa.algebra, r, err)) return *fail;
  auto rep = scan(c, qa.algebra, r);
  if (!rep) {
    err << no_period_message(c) << "\n";
    return failure(r, "no-period", no_period_message(c));
  }
  if (rep->quasi_period * c.m < 3)
    throw InputError("m * quasi-period = " + std::to_string(rep->quasi_period * c.m) +
                     " is below 3; raise --m or fix a larger --n");
  auto fs = functor_sequence(*rep, c.m);
  r["functor_sequence"] = functor_json(fs);
  return fs;
}

template <class F>
Json angle_json(const NSigmaSequence<F>& x, const PhiCertificate<F>& cert) {
  Json j;
  j["sequence"] = sequence_json(x);
  j["certificate"] = certificate_json(cert);
  return j;
}

template <class F>
Outcome run_angulate(const RunConfig& c, const QuiverAlgebra<F>& qa, std::ostream& err) {
  Json r = header(c);
  auto prep = prepare(c, qa, r, err);
  if (auto* o = std::get_if<Outcome>(&prep)) return *o;
  const auto& fs = std::get<FunctorSequence<F>>(prep);
  const auto& a = qa.algebra;
  bool all = true;
  Json angles = Json::array();
  if (c.mode == "standard") {
    // One standard angle per simple module.
    for (std::size_t v = 0; v < a->vertex_count(); ++v) {
      auto p = projective_module(a, v);
      auto s = quotient(p, radical(*p)).module;
      auto x = standard_angle(fs, s);
      auto cert = phi_member(fs, x);
      all = all && cert.verdict;
      Json e = angle_json(x, cert);
      e["module"] = "S_" + qa.spec.quiver.vertices[v];
      angles.push_back(std::move(e));
    }
  } else {
    Rng rng(c.seed);
    auto p = random_projective(a, rng);
    auto q = random_projective(a, rng);
    auto f1 = random_morphism(p, q, rng);
    auto x = complete_morphism(fs, f1);
    auto cert = phi_member(fs, x);
    all = cert.verdict;
    Json e = angle_json(x, cert);
    e["first_morphism"] = morphism_json(f1);
    angles.push_back(std::move(e));
  }
  r["angles"] = angles;
  r["all_certified"] = all;
  if (c.verbose) err << angles.size() << " angle(s), " << (all ? "all certified" : "certification failed") << "\n";
  if (!all) {
    err << "an angle failed Phi-certification\n";
    return failure(r, "not-certified", "an angle failed Phi-certification");
  }
  return Outcome{0, r};
}

template <class F>
Outcome run_verify(const RunConfig& c, const QuiverAlgebra<F>& qa, std::ostream& err) {
  Json r = header(c);
  auto prep = prepare(c, qa, r, err);
  if (auto* o = std::get_if<Outcome>(&prep)) return *o;
  const auto& fs = std::get<FunctorSequence<F>>(prep);
  auto report = verify_axioms(fs, c.samples, c.seed);
  r["report"] = axiom_report_json(report);
  if (c.perturb_choices) {
    auto alt = fs;
    alt.choices.perturbed = true;
    auto other = verify_axioms(alt, c.samples, c.seed);
    auto diff = outcome_differences(report, other);
    Json p;
    p["alternate_choices"] = "reversed generator order in covers and hulls";
    p["report"] = axiom_report_json(other);
    p["samples_with_different_outcomes"] = diff;
    p["verdicts_agree"] = diff == 0;
    r["perturbation"] = p;
    if (c.verbose) err << "alternate choices: " << diff << " sample(s) with different outcomes\n";
  }
  if (c.verbose)
    for (auto ax : kAxioms)
      err << axiom_name(ax) << ": " << report.tally(ax).passed << "/" << report.tally(ax).passed + report.tally(ax).failed
          << "\n";
  if (!report.all_pass()) {
    const auto& f = *report.first_failure;
    err << "axiom " << axiom_name(f.axiom) << " failed on sample " << f.sample << ": " << f.message << "\n";
    return Outcome{1, r};
  }
  return Outcome{0, r};
}

template <class F>
Outcome dispatch(const RunConfig& c, const AlgebraSpec& spec, const F& field, std::ostream& err) {
  auto qa = compute_basis(spec, field);
  if (c.command == "algebra") return run_algebra(c, qa, err);
  if (c.command == "period") return run_period(c, qa, err);
  if (c.command == "angulate") return run_angulate(c, qa, err);
  return run_verify(c, qa, err);
}

inline std::uint64_t default_seed(const char* env) {
  if (!env || !*env) return 0;
  try {
    std::size_t used = 0;
    auto v = std::stoull(env, &used);
    if (used != std::string(env).size()) throw InputError("");
    return v;
  } catch (const std::exception&) {
    throw InputError(std::string(kSeedEnv) + " is not an unsigned integer: '" + env + "'");
  }
}

}  // namespace detail

/// Runs one command. Data goes to `out`, diagnostics to `err`. Exit codes: 0 success,
/// 1 mathematical failure (reported in the JSON), 2 input or usage error.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err, const char* env_seed) {
  RunConfig c;
  CLI::App app{"Periodic algebras and n-angulated categories of projective modules"};
  app.require_subcommand(1);
  std::optional<std::size_t> n;
  std::optional<std::uint64_t> seed;
  auto add_common = [&](CLI::App* sub, bool angles) {
    sub->add_option("file", c.input, "algebra description (JSON)")->required();
    sub->add_option("--max", c.max, "largest syzygy degree scanned")->check(CLI::Range(1, 64));
    sub->add_option("--n", n, "use this quasi-period instead of the minimal one")->check(CLI::Range(1, 64));
    sub->add_option("--seed", seed, "random seed (default from " + std::string(kSeedEnv) + ", else 0)");
    sub->add_option("--emit", c.emit, "also write the report to this path");
    sub->add_flag("--verbose", c.verbose, "human summary on stderr");
    if (angles) sub->add_option("--m", c.m, "number of quasi-periods per angle")->check(CLI::Range(1, 64));
  };
  auto* alg = app.add_subcommand("algebra", "basis and self-injectivity report");
  add_common(alg, false);
  auto* per = app.add_subcommand("period", "quasi-period, twist and period");
  add_common(per, false);
  auto* ang = app.add_subcommand("angulate", "standard angles or the completion of a morphism");
  ang->add_option("mode", c.mode, "standard | complete")->required()->check(CLI::IsMember({"standard", "complete"}));
  add_common(ang, true);
  auto* ver = app.add_subcommand("verify", "randomized axiom suite");
  add_common(ver, true);
  ver->add_option("--samples", c.samples, "number of samples")->check(CLI::Range(0, 100000));
  ver->add_flag("--perturb-choices", c.perturb_choices, "rerun under alternate pinned choices and compare");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }
  for (auto* sub : {alg, per, ang, ver})
    if (sub->parsed()) c.command = sub->get_name();
  c.n = n;

  detail::Outcome outcome;
  try {
    c.seed = seed ? *seed : detail::default_seed(env_seed);
    auto spec = parse_algebra(read_file(c.input));
    if (spec.characteristic == 0) outcome = detail::dispatch(c, spec, RationalField{}, err);
    else outcome = detail::dispatch(c, spec, PrimeField(spec.characteristic), err);
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const MathError& e) {
    err << "error: " << e.what() << "\n";
    outcome = detail::failure(detail::header(c), "math", e.what());
  }
  const std::string text = outcome.report.dump(2) + "\n";
  out << text;
  if (!c.emit.empty()) {
    std::ofstream f(c.emit, std::ios::binary);
    if (!f || !(f << text)) {
      err << "input error: cannot write " << c.emit << "\n";
      return 2;
    }
  }
  return outcome.code;
}

inline int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(std::move(args), out, err, std::getenv(kSeedEnv));
}

}  // namespace nangle::cli
