#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>

#include "nangle/reports.hpp"

namespace nangle {

enum class Axiom { n1a, n1b, n1c, n2, n3, n4, phi };
inline constexpr std::array<Axiom, 7> kAxioms{Axiom::n1a, Axiom::n1b, Axiom::n1c, Axiom::n2,
                                              Axiom::n3,  Axiom::n4,  Axiom::phi};

inline const char* axiom_name(Axiom a) {
  switch (a) {
    case Axiom::n1a: return "N1a";
    case Axiom::n1b: return "N1b";
    case Axiom::n1c: return "N1c";
    case Axiom::n2: return "N2";
    case Axiom::n3: return "N3";
    case Axiom::n4: return "N4";
    case Axiom::phi: return "Phi";
  }
  return "?";
}

struct Tally {
  std::size_t passed = 0;
  std::size_t failed = 0;
  bool all_pass() const { return failed == 0; }
};

struct Failure {
  Axiom axiom;
  std::size_t sample;
  std::string message;
  Json witness;
};

struct AxiomReport {
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::array<Tally, kAxioms.size()> tallies{};
  std::optional<Failure> first_failure;
  std::vector<std::vector<bool>> outcomes;  // outcomes[sample], one entry per check in run order

  Tally& tally(Axiom a) { return tallies[static_cast<std::size_t>(a)]; }
  const Tally& tally(Axiom a) const { return tallies[static_cast<std::size_t>(a)]; }
  bool all_pass() const {
    for (const auto& t : tallies)
      if (!t.all_pass()) return false;
    return true;
  }
};

inline std::uint64_t sample_seed(std::uint64_t seed, std::size_t s) {
  return seed + 0x9e3779b97f4a7c15ULL * (s + 1);
}

namespace detail {

/// Records check outcomes of one sample; exceptions count as failures of the running axiom.
class SampleRecorder {
 public:
  SampleRecorder(AxiomReport& r, std::size_t sample) : report_(r), sample_(sample) { report_.outcomes.emplace_back(); }

  void record(Axiom a, bool ok, const std::string& message, const std::function<Json()>& witness) {
    report_.outcomes.back().push_back(ok);
    auto& t = report_.tally(a);
    if (ok) {
      ++t.passed;
      return;
    }
    ++t.failed;
    if (!report_.first_failure) report_.first_failure = Failure{a, sample_, message, witness ? witness() : Json()};
  }

  /// Runs `body` for axiom `a`; a thrown error is recorded as a failure of `a`.
  template <class Body>
  void guard(Axiom a, Body&& body) {
    try {
      body();
    } catch (const std::exception& e) {
      record(a, false, std::string("exception: ") + e.what(), nullptr);
    }
  }

 private:
  AxiomReport& report_;
  std::size_t sample_;
};

}  // namespace detail

/// Randomized, seeded check of N1-N4 plus Φ-certification of every angle the checks construct.
template <class F>
AxiomReport verify_axioms(const FunctorSequence<F>& fs, std::size_t samples, std::uint64_t seed) {
  AxiomReport report;
  report.seed = seed;
  report.samples = samples;
  const auto& a = fs.algebra;

  for (std::size_t s = 0; s < samples; ++s) {
    Rng rng(sample_seed(seed, s));
    detail::SampleRecorder rec(report, s);
    auto certify = [&](Axiom ax, const NSigmaSequence<F>& x, const std::string& what) {
      auto c = phi_member(fs, x);
      std::string msg = what + (c.defect.empty() ? " is not in Phi (alpha and beta differ stably)" : ": " + c.defect);
      auto witness = [&] {
        Json w;
        w["sequence"] = sequence_json(x);
        w["certificate"] = certificate_json(c);
        return w;
      };
      rec.record(Axiom::phi, c.verdict, msg, witness);
      rec.record(ax, c.verdict, msg, witness);
      return c.verdict;
    };

    auto m = random_module(a, rng);
    auto n = random_module(a, rng);
    auto x = standard_angle(fs, m);

    // Odd samples use a completed angle as the second sequence so that non-standard members are exercised.
    std::optional<NSigmaSequence<F>> y;
    rec.guard(Axiom::n1c, [&] {
      auto p = random_projective(a, rng);
      auto q = random_projective(a, rng);
      auto f1 = random_morphism(p, q, rng);
      auto c = complete_morphism(fs, f1);
      bool first = c.maps.front().matrix == f1.matrix;
      if (!first) rec.record(Axiom::n1c, false, "completion does not start with the given morphism", nullptr);
      else certify(Axiom::n1c, c, "completion of a random morphism");
      if (s % 2 == 1) y = std::move(c);
    });
    if (!y) y = standard_angle(fs, n);

    rec.guard(Axiom::n1a, [&] {
      auto sum = direct_sum(fs, x, *y);
      if (!certify(Axiom::n1a, sum, "direct sum")) return;
      std::vector<std::size_t> dx(sum.size()), dy(sum.size());
      for (std::size_t i = 0; i < sum.size(); ++i) {
        dx[i] = x.objects[i]->dim();
        dy[i] = y->objects[i]->dim();
      }
      auto part = summand(fs, sum, dx, dy);
      bool same = part == *y;
      if (!same) rec.record(Axiom::n1a, false, "summand extraction does not recover the summand", nullptr);
      else certify(Axiom::n1a, part, "summand of a direct sum");
    });

    rec.guard(Axiom::n1b, [&] { certify(Axiom::n1b, trivial_angle(fs, random_projective(a, rng)), "trivial angle"); });

    rec.guard(Axiom::n2, [&] {
      const auto& base = s % 2 == 0 ? x : *y;
      auto l = rotate(fs, base, Direction::left);
      auto r = rotate(fs, base, Direction::right);
      certify(Axiom::n2, l, "left rotation");
      certify(Axiom::n2, r, "right rotation");
      rec.record(Axiom::n2, rotate(fs, l, Direction::right) == base && rotate(fs, r, Direction::left) == base,
                 "rotations are not mutually inverse", nullptr);
    });

    // A random commuting square (φ_1, φ_2) from X to Y over a random h: ker f_1 -> ker g_1.
    std::optional<std::pair<Morphism<F>, Morphism<F>>> square;
    rec.guard(Axiom::n3, [&] {
      auto kx = kernel(x.maps[0]);
      auto ky = kernel(y->maps[0]);
      auto h = random_morphism(kx.module, ky.module, rng);
      auto phi1 = extend_into_injective(kx.inclusion, compose(ky.inclusion, h));
      auto psi = random_morphism(x.objects[1], y->objects[0], rng);
      phi1 = phi1 + Morphism<F>(phi1.source, phi1.target, x.maps[0].matrix * psi.matrix);
      auto phi2 = detail::extend_square(x.maps[0], y->maps[0], phi1, y->objects[1]);
      auto rho = random_morphism(x.objects[2], y->objects[1], rng);
      phi2 = phi2 + Morphism<F>(phi2.source, phi2.target, x.maps[1].matrix * rho.matrix);
      square.emplace(phi1, phi2);
      auto phi = fill_morphism(fs, x, *y, phi1, phi2);
      auto defect = morphism_defect(x, *y, phi);
      rec.record(Axiom::n3, defect.empty(), "fill: " + defect, [&] {
        Json w;
        w["x"] = sequence_json(x);
        w["y"] = sequence_json(*y);
        w["phi"] = morphism_list_json(phi);
        return w;
      });
    });

    if (square) {
      rec.guard(Axiom::n4, [&] {
        auto gc = good_fill_and_cone(fs, x, *y, square->first, square->second);
        certify(Axiom::n4, gc.cone, "mapping cone of the good fill");
      });
    } else {
      rec.record(Axiom::n4, false, "no commuting square to fill (N3 step failed)", nullptr);
    }
  }
  return report;
}

inline Json axiom_report_json(const AxiomReport& r) {
  Json j;
  j["seed"] = r.seed;
  j["samples"] = r.samples;
  Json axioms;
  for (auto a : kAxioms) {
    const auto& t = r.tally(a);
    Json e;
    e["passed"] = t.passed;
    e["failed"] = t.failed;
    e["checks"] = t.passed + t.failed;
    axioms[axiom_name(a)] = e;
  }
  j["axioms"] = axioms;
  j["all_pass"] = r.all_pass();
  if (r.first_failure) {
    const auto& f = *r.first_failure;
    Json w;
    w["axiom"] = axiom_name(f.axiom);
    w["sample"] = f.sample;
    w["sample_seed"] = sample_seed(r.seed, f.sample);
    w["message"] = f.message;
    w["witness"] = f.witness;
    j["first_failure"] = w;
  } else {
    j["first_failure"] = nullptr;
  }
  return j;
}

/// Per-sample outcome differences between two runs of the same suite.
inline std::size_t outcome_differences(const AxiomReport& a, const AxiomReport& b) {
  std::size_t diff = 0;
  const std::size_t n = std::max(a.outcomes.size(), b.outcomes.size());
  for (std::size_t s = 0; s < n; ++s) {
    const auto* x = s < a.outcomes.size() ? &a.outcomes[s] : nullptr;
    const auto* y = s < b.outcomes.size() ? &b.outcomes[s] : nullptr;
    if (!x || !y || *x != *y) ++diff;
  }
  return diff;
}

}  // namespace nangle
