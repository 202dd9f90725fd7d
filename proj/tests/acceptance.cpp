// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any criterion fails.
#include <chrono>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>

#include "cli.hpp"

using namespace nangle;
using Fp = PrimeField;
using Clock = std::chrono::steady_clock;

namespace {

std::string fx(const std::string& name) { return std::string(NANGLE_FIXTURE_DIR) + "/" + name + ".json"; }

struct CliRun {
  int code;
  std::string out;
  Json json;
};

CliRun cli_run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli::run_cli(args, out, err, nullptr);
  Json j;
  try {
    j = Json::parse(out.str());
  } catch (const std::exception&) {
  }
  return CliRun{code, out.str(), j};
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

AlgebraPtr<Fp> load(const std::string& name) {
  auto spec = parse_algebra(read_file(fx(name)));
  return compute_basis(spec, Fp(spec.characteristic)).algebra;
}

FunctorSequence<Fp> build(const std::string& name, std::size_t n, std::size_t m) {
  auto rep = quasi_period_scan(load(name), n, n);
  if (!rep) throw std::runtime_error(name + ": no twist in degree " + std::to_string(n));
  return functor_sequence(*rep, m);
}

ModulePtr<Fp> simple(const AlgebraPtr<Fp>& a, std::size_t v) {
  auto p = projective_module(a, v);
  return quotient(p, radical(*p)).module;
}

int failures = 0;

void report(int id, const std::string& title, bool ok, const std::string& detail) {
  if (!ok) ++failures;
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << id << ": " << title;
  if (!detail.empty()) std::cout << " (" << detail << ")";
  std::cout << std::endl;
}

/// Runs a criterion body; an escaping exception is a failure with its message.
void criterion(int id, const std::string& title, const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail += (detail.empty() ? "" : "; ") + std::string("exception: ") + e.what();
  }
  report(id, title, ok, detail);
}

bool axioms_all_pass(const Json& j, std::size_t samples) {
  if (!j.contains("report") || j["report"]["samples"] != samples) return false;
  for (const auto& [name, t] : j["report"]["axioms"].items())
    if (t["failed"] != 0 || t["passed"] == 0) return false;
  return true;
}

// Ω^{-N} h between the standard resolutions.
Morphism<Fp> cosyzygy_power(Morphism<Fp> h, const StandardResolution<Fp>& rm, const StandardResolution<Fp>& rn,
                            std::size_t steps) {
  for (std::size_t j = 0; j < steps; ++j) h = cosyzygy_map(h, rm.steps[j], rn.steps[j]).second;
  return h;
}

}  // namespace

int main() {
  criterion(1, "Nakayama period equals 2s/gcd(s, n+1) on the 3x3 grid over F_5", [](std::string& d) {
    auto t0 = Clock::now();
    std::ostringstream mism, info;
    bool ok = true, alt = true;
    for (int n = 1; n <= 3; ++n)
      for (int s = 2; s <= 4; ++s) {
        auto r = cli_run({"period", fx("nakayama_" + std::to_string(n) + "_" + std::to_string(s))});
        if (r.code != 0 || r.json["periodicity"]["period"].is_null()) {
          ok = alt = false;
          mism << " (" << n << "," << s << "): no period;";
          continue;
        }
        int got = r.json["periodicity"]["period"].get<int>();
        int expect = 2 * s / std::gcd(s, n + 1);
        if (got != expect) {
          ok = false;
          mism << " (" << n << "," << s << "): computed " << got << ", formula " << expect << ";";
        }
        // Same formula with the roles read as (vertices, relation length) = (s', n'+1).
        if (got != 2 * n / std::gcd(n, s)) alt = false;
      }
    double secs = seconds_since(t0);
    d = mism.str().empty() ? "all 9 cells match" : "mismatches:" + mism.str();
    d += " | computed periods all equal 2n/gcd(n,s) for n vertices, relation length s: " +
         std::string(alt ? "yes" : "no");
    d += " | " + std::to_string(secs) + " s";
    return ok && secs < 60;
  });

  criterion(2, "loop algebra twist: F_3 gives x -> -x, order 2, period 2; F_2 gives the identity", [](std::string& d) {
    auto p3 = cli_run({"period", fx("loop_p3")}).json["periodicity"];
    auto p2 = cli_run({"period", fx("loop_p2")}).json["periodicity"];
    bool ok3 = p3["quasi_period"] == 1 && p3["twist_matrix"] == Json::parse("[[1,0],[0,2]]") &&
               p3["twist_order"] == 2 && p3["period"] == 2;
    bool ok2 = p2["quasi_period"] == 1 && p2["twist_matrix"] == Json::parse("[[1,0],[0,1]]") && p2["twist_order"] == 1;
    // Oracle: Ω^1 as the kernel of multiplication A ⊗ A -> A, independent of minimal covers.
    bool oracle = true;
    for (auto [name, expected] : {std::pair{"loop_p3", -1}, std::pair{"loop_p2", 1}}) {
      auto a = load(name);
      auto ae = enveloping(a);
      const std::size_t dd = a->dim();
      Matrix<Fp> mu(a->field(), dd * dd, dd);
      for (std::size_t u = 0; u < dd; ++u)
        for (std::size_t v = 0; v < dd; ++v)
          mu.set_row(u * dd + v, a->multiply(a->basis_vector(u), a->basis_vector(v)));
      Morphism<Fp> m(regular_module(ae), regular_bimodule(ae), mu);
      auto k = kernel(m);
      auto w = detect_twist(k.module);
      auto want = Matrix<Fp>::from_ints(a->field(), {{1, 0}, {0, expected}});
      oracle = oracle && m.is_module_map() && w && w->sigma.matrix() == want;
    }
    d = std::string("F_3 ") + (ok3 ? "ok" : "mismatch") + ", F_2 " + (ok2 ? "ok" : "mismatch") +
        ", kernel-of-multiplication oracle " + (oracle ? "agrees" : "disagrees");
    return ok3 && ok2 && oracle;
  });

  criterion(3, "preprojective P(A_2), P(A_3): n = 3 twist acts by the Nakayama permutation; verify passes", [](std::string& d) {
    bool ok = true;
    for (const char* name : {"preprojective_a2", "preprojective_a3"}) {
      auto t0 = Clock::now();
      auto per = cli_run({"period", fx(name), "--n", "3"}).json;
      const auto& p = per["periodicity"];
      bool twist_ok = p["quasi_period"] == 3 && p["twist_vertex_action"] == per["nakayama_permutation"];
      auto order = p["twist_order"].get<std::size_t>();
      auto v = cli_run({"verify", fx(name), "--n", "3", "--m", std::to_string(order), "--samples", "100", "--seed", "7"});
      const auto& tw = v.json["functor_sequence"]["suspension_twist"]["matrix"];
      bool identity = Matrix<Fp>::from_ints(load(name)->field(), tw.get<std::vector<std::vector<std::int64_t>>>()).is_identity();
      bool pass = twist_ok && v.code == 0 && axioms_all_pass(v.json, 100) && identity;
      double secs = seconds_since(t0);
      d += std::string(name) + ": " + std::to_string(3 * order) + "-angulation, " + (pass ? "ok" : "failed") + " in " +
           std::to_string(secs) + " s; ";
      ok = ok && pass && secs < 300;
    }
    return ok;
  });

  criterion(4, "axiom suite, 100 samples: kQ_2/I_2 as 4-angulation (m = 1), loop over F_3 as 3-angulation (m = 3)",
            [](std::string& d) {
              bool ok = true;
              for (auto args : {std::vector<std::string>{"verify", fx("nakayama_2_2"), "--n", "4", "--m", "1"},
                                std::vector<std::string>{"verify", fx("loop_p3"), "--m", "3"}}) {
                args.insert(args.end(), {"--samples", "100", "--seed", "7"});
                auto t0 = Clock::now();
                auto r = cli_run(args);
                double secs = seconds_since(t0);
                bool pass = r.code == 0 && axioms_all_pass(r.json, 100) && secs < 120;
                d += args[1].substr(args[1].find_last_of('/') + 1) + (pass ? " 100%" : " failed") + " in " +
                     std::to_string(secs) + " s; ";
                ok = ok && pass;
              }
              return ok;
            });

  criterion(5, "negative controls: corrupted twist power, negated f_n, non-self-injective input", [](std::string& d) {
    // The 4-angulation of kQ_2/I_2 has Σ = id and every power of its twist is trivial, so (a) uses its
    // 3-angulation, where Σ swaps the two projectives.
    bool a = true;
    for (auto fs : {build("nakayama_2_2", 1, 3), build("loop_p3", 1, 3)}) {
      fs.sigma_functor.tau = fs.sigma.power(-static_cast<long long>(fs.m + 1));
      a = a && !verify_axioms(fs, 20, 7).all_pass();
    }
    bool b = true;
    for (const auto& fs : {build("nakayama_2_2", 4, 1), build("loop_p3", 1, 3)})
      for (std::size_t v = 0; v < fs.algebra->vertex_count(); ++v) {
        auto t = standard_angle(fs, simple(fs.algebra, v));
        auto neg = t;
        neg.maps.back() = -neg.maps.back();
        b = b && phi_member(fs, t).verdict && !phi_member(fs, neg).verdict;
      }
    bool c = cli_run({"algebra", fx("a2_hereditary")}).code == 1;
    d = std::string("(a) ") + (a ? "caught" : "missed") + ", (b) " + (b ? "flipped" : "not flipped") + ", (c) " +
        (c ? "exit 1" : "wrong exit code");
    return a && b && c;
  });

  criterion(6, "structural invariants: Z_1 T = Id, alpha naturality, resolution exactness, twist composition, determinism",
            [](std::string& d) {
              struct Case {
                const char* name;
                std::size_t n, m;
              };
              bool z1 = true, nat = true, res = true, tw = true;
              for (auto c : {Case{"nakayama_2_2", 4, 1}, Case{"loop_p3", 1, 3}, Case{"preprojective_a2", 3, 2}}) {
                auto fs = build(c.name, c.n, c.m);
                const auto& a = fs.algebra;
                Rng rng(2024);
                for (int i = 0; i < 20; ++i) {
                  auto m = random_module(a, rng);
                  auto t = standard_angle(fs, m);
                  z1 = z1 && iso_test(kernel(t.maps[0]).module, m).has_value();
                  auto rm = standard_resolution(m, fs.n());
                  res = res && resolution_defect(rm.as_resolution()).empty();
                }
                for (int i = 0; i < 20; ++i) {
                  auto m = random_module(a, rng);
                  auto n = random_module(a, rng);
                  auto h = random_morphism(m, n, rng);
                  auto rm = standard_resolution(m, fs.n());
                  auto rn = standard_resolution(n, fs.n());
                  auto am = alpha(fs, evaluate(fs, m), rm);
                  auto an = alpha(fs, evaluate(fs, n), rn);
                  Morphism<Fp> lhs(am.source, an.target, h.matrix * an.matrix);
                  nat = nat && stable_equal(lhs, compose(cosyzygy_power(h, rm, rn, fs.n()), am));
                }
                auto br = bimodule_syzygies(a, c.n);
                res = res && resolution_defect(br.as_resolution()).empty();
                auto ae = enveloping(a);
                std::vector<Automorphism<Fp>> twists{Automorphism<Fp>::identity(a)};
                for (std::size_t k = 1; k <= 2; ++k) twists.push_back(fs.sigma.power(static_cast<long long>(k)));
                twists.push_back(fs.sigma.inverse());
                for (const auto& x : twists)
                  for (const auto& y : twists) {
                    auto t = tensor_bimodules(twisted_bimodule(ae, x), twisted_bimodule(ae, y));
                    tw = tw && iso_test(t.module, twisted_bimodule(ae, y.after(x))).has_value();
                  }
              }
              std::vector<std::string> args{"verify", fx("nakayama_2_2"), "--n", "4", "--samples", "20", "--seed", "11"};
              auto r1 = cli_run(args);
              auto r2 = cli_run(args);
              bool det = r1.out == r2.out && !r1.out.empty();
              d = std::string("Z1T ") + (z1 ? "ok" : "failed") + ", naturality " + (nat ? "ok" : "failed") +
                  ", resolutions " + (res ? "ok" : "failed") + ", twists " + (tw ? "ok" : "failed") +
                  ", determinism " + (det ? "ok" : "failed");
              return z1 && nat && res && tw && det;
            });

  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criterion/criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
