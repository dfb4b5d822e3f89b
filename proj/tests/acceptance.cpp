// Acceptance runner: one PASS/FAIL line per criterion, with wall time and limit.
// Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "knotflow/diagram.hpp"
#include "knotflow/invariants.hpp"
#include "knotflow/pleated.hpp"
#include "knotflow/shilnikov.hpp"
#include "knotflow/symbolic.hpp"
#include "knotflow/template.hpp"
#include "knotflow/universality.hpp"
#include "oracles.hpp"

using namespace knotflow;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream note;
  void expect(bool cond, const std::string& what) {
    if (!cond) {
      if (ok) note << "failed: ";
      else note << "; ";
      note << what;
      ok = false;
    }
  }
};

LocalModelParams params(double lambda) {
  LocalModelParams p{1, 1, 1, 1};
  p.lambda = lambda;
  return p;
}

const PleatedSystem kFourHomoclinic{4, {{1, 2, 4, 3}, {Side::R, Side::L, Side::R}}, {0, 1, 0, -1}, Carrier::Unknot};
const PleatedSystem kEightStrip{8,
                            {{5, 6, 7, 8, 4, 1, 2, 3},
                             {Side::R, Side::L, Side::R, Side::L, Side::R, Side::L, Side::R}},
                            {0, 1, 0, 1, 2, 1, 0, 1},
                            Carrier::Unknot};

void horseshoe_twist(Outcome& o) {
  const auto h = horseshoe();
  const auto m = mirror(h);
  const int t = twist_of_orbit(h, parse_word(h, "y"));
  const int tm = twist_of_orbit(m, parse_word(m, "y"));
  o.note << "twist=" << t << " mirror=" << tm << " ";
  o.expect(t == 1, "horseshoe core twist");
  o.expect(tm == -1, "mirror twist");
}

void incremental_twists(Outcome& o) {
  std::mt19937_64 rng(20240601);
  std::size_t failures = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 10;
    PleatedSystem s;
    s.n = n;
    s.pleating = random_pleating(n, rng);
    s.twists = derive_twists(s.pleating, static_cast<int>(rng() % 5) - 2);
    const auto t = build_pretemplate(s);
    const auto rot = fold_rotations(s.pleating);
    std::vector<int> measured;
    for (std::size_t i = 0; i < n; ++i) measured.push_back(twist_of_orbit(t, Word({i})));
    bool good = validate(t).empty() && t.branch_lines.size() == 1 && measured == s.twists;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const bool up = s.pleating.order[i + 1] > s.pleating.order[i];
      // a fold turning counterclockwise adds a half turn of positive twist
      const int sign = (s.pleating.sides[i] == Side::R) == up ? 1 : -1;
      good = good && measured[i + 1] - measured[i] == sign && rot[i] == sign;
    }
    failures += !good;
  }
  o.note << "pleatings=200 failures=" << failures << " ";
  o.expect(failures == 0, "non-incremental twists");
}

void subtemplate_certificates(Outcome& o) {
  const auto s = catalogue_three_strip().front();
  const auto t = build_pretemplate(s);
  UniversalityQuery q;
  q.max_period = 12;
  q.twist_kappa_prime = 6;
  const auto c = check_universal_sufficient(t, q);
  o.expect(c.has_value(), "no (0, 6) certificate");
  if (c) {
    o.note << format_word(t, c->kappa) << " | " << format_word(t, c->kappa_prime) << " sign=" << c->crossing_sign
           << " ";
    o.expect(c->twist_kappa == 0 && c->twist_kappa_prime == 6, "twists (0, 6)");
    o.expect(c->crossing_sign == -1, "negative crossing");
    o.expect(verify_certificate(t, *c), "verify");
  }
  const auto m = mirror(t);
  q.twist_kappa_prime = -6;
  const auto cm = check_universal_sufficient(m, q);
  o.expect(cm.has_value(), "no mirror certificate");
  if (cm) {
    o.note << "mirror sign=" << cm->crossing_sign << " ";
    o.expect(cm->twist_kappa == 0 && cm->twist_kappa_prime == -6, "mirror twists (0, -6)");
    o.expect(cm->crossing_sign == 1, "positive crossing");
    o.expect(verify_certificate(m, *cm), "mirror verify");
  }
}

void four_homoclinics(Outcome& o) {
  const auto a = classify_bifurcation(kFourHomoclinic, 8);
  o.note << "unknot carrier " << to_string(a.kind) << " ";
  o.expect(a.kind == Classification::UniversalByThm43, "classification");
  o.expect(a.certificate.has_value() && a.certificate_verified, "verified certificate");
  auto tre = kFourHomoclinic;
  tre.carrier = Carrier::Trefoil;
  const auto b = classify_bifurcation(tre, 8);
  o.note << "trefoil carrier " << to_string(b.kind) << " orbits=" << b.orbits_checked
         << " min_genus=" << b.min_genus_bound << " ";
  o.expect(b.kind == Classification::NotUniversalByGenus, "trefoil classification");
  o.expect(b.min_genus_bound >= 1, "genus bound");
  o.expect(!b.any_unknot, "is_unknot returned Yes");
}

void nonnegative_pair(Outcome& o) {
  const auto t = build_pretemplate(kEightStrip);
  o.expect(std::none_of(kEightStrip.twists.begin(), kEightStrip.twists.end(), [](int v) { return v < 0; }),
           "signature has a negative entry");
  ClassifyOptions opt;
  opt.max_period = 8;
  opt.twist_kappa_prime = -2;
  const auto r = classify_bifurcation(kEightStrip, opt);
  o.note << to_string(r.kind) << " ";
  o.expect(r.kind == Classification::CertificateFound, "classification");
  o.expect(r.certificate.has_value() && r.certificate_verified, "certificate");
  if (r.certificate && r.searched) {
    o.note << format_word(*r.searched, r.certificate->kappa) << " | "
           << format_word(*r.searched, r.certificate->kappa_prime) << " ";
    o.expect(r.certificate->twist_kappa == 0 && r.certificate->twist_kappa_prime == -2, "twists (0, -2)");
    for (const auto& s : r.searched->strips) o.expect(s.half_twists == 0, "zero-twist subtemplate");
  }
}

void necklaces(Outcome& o) {
  std::size_t mismatches = 0;
  for (unsigned n = 2; n <= 4; ++n) {
    PleatedSystem s;
    s.n = n;
    for (unsigned i = 0; i < n; ++i) s.pleating.order.push_back(static_cast<int>(i + 1));
    for (unsigned i = 0; i + 1 < n; ++i) s.pleating.sides.push_back(i % 2 ? Side::L : Side::R);
    s.twists = derive_twists(s.pleating);
    const auto os = enumerate_orbits(build_pretemplate(s), 8);
    std::vector<std::size_t> per(9, 0);
    for (const auto& w : os.words) ++per[w.period()];
    for (unsigned k = 1; k <= 8; ++k) mismatches += per[k] != oracle::necklaces_by_listing(n, k);
  }
  o.note << "mismatches=" << mismatches << " ";
  o.expect(mismatches == 0, "counts");
}

void invariant_oracles(Outcome& o) {
  struct Case {
    BraidWord b;
    LaurentPoly expect;
  };
  const std::vector<Case> cases{{{1, {}}, LaurentPoly(1)},
                                {{2, {1, 1, 1}}, LaurentPoly(-1, {1, -1, 1})},
                                {{3, {1, -2, 1, -2}}, LaurentPoly(-1, {-1, 3, -1})}};
  for (const auto& c : cases) {
    const auto ref = oracle::alexander_burau(c.b.strands, c.b.letters);
    o.expect(ref == c.expect, "oracle value " + c.expect.to_string());
    o.expect(alexander(c.b) == ref, "library value " + c.expect.to_string());
    o.expect(alexander_from_gauss(diagram_from_braid(c.b)) == ref, "gauss route " + c.expect.to_string());
  }
  std::mt19937_64 rng(50);
  std::size_t bad = 0;
  for (int i = 0; i < 50; ++i) {
    BraidWord b;
    do {
      b.strands = 2 + rng() % 4;
      b.letters.clear();
      const std::size_t len = b.strands + 1 + rng() % 8;
      for (std::size_t k = 0; k < len; ++k) b.letters.push_back(1 + static_cast<int>(rng() % (b.strands - 1)));
    } while (b.closure_components() != 1);
    const auto d = diagram_from_braid(b);
    const int c = static_cast<int>(b.letters.size()), s = static_cast<int>(oracle::seifert_by_tracing(d));
    bad += canonical_genus_positive_braid(b) != (c - s + 1) / 2;
  }
  o.note << "genus mismatches=" << bad << " ";
  o.expect(bad == 0, "positive-braid genus");
}

void full_shift(Outcome& o) {
  const auto rep = verify_full_shift(params(0.01), canonical_global_map(), 3);
  o.note << "coverings=" << rep.coverings.relations_checked - rep.coverings.failures.size() << "/"
         << rep.coverings.relations_checked << " counts=";
  for (auto c : rep.counts) o.note << c << " ";
  o.note << "max_residual=" << rep.max_residual << " drift=" << rep.tolerance_drift << " ";
  o.expect(rep.coverings.all_hold && rep.coverings.relations_checked == 16, "coverings");
  o.expect(rep.counts == std::vector<std::size_t>{4, 16, 64}, "counts");
  o.expect(rep.max_residual <= 1e-8, "residual");
  o.expect(rep.itineraries_ok, "itineraries");
  o.expect(rep.tolerance_drift < 1e-6, "tolerance drift");
}

void morse_smale(Outcome& o) {
  const auto rep = verify_morse_smale(params(-0.01), canonical_global_map(), 1000, 20240601);
  o.note << "equilibria=" << rep.equilibria[0] << "," << rep.equilibria[1] << " attractor=(" << rep.attractor.u << ","
         << rep.attractor.v << ") rho=" << rep.spectral_radius << " converged=" << rep.converged << "/" << rep.samples
         << " seed=" << rep.seed << " ";
  o.expect(rep.equilibria.size() == 2 && std::abs(rep.equilibria[0] + 0.1) < 1e-15 &&
               std::abs(rep.equilibria[1] - 0.1) < 1e-15,
           "equilibria");
  o.expect(rep.attractor_in_d && rep.spectral_radius < 1, "attractor");
  o.expect(rep.converged >= 990, "convergence");
}

void crosscheck_all(Outcome& o) {
  const auto p = params(0.01);
  const auto g = canonical_global_map();
  const auto t = build_pretemplate(kFourHomoclinic);
  std::size_t checked = 0, mismatches = 0;
  for (std::size_t k = 1; k <= 3; ++k)
    for (const auto& orbit : periodic_sweep(p, g, k)) {
      std::vector<std::size_t> s(orbit.word.begin(), orbit.word.end());
      const Word w(s);
      if (!w.is_primitive() || w.strips() != s) continue;
      ++checked;
      mismatches += !crosscheck(orbit, p, g, t).match;
    }
  o.note << "orbits=" << checked << " mismatches=" << mismatches << " ";
  o.expect(checked == 30, "orbit count");
  o.expect(mismatches == 0, "mismatch");
}

void unstable_manifold(Outcome& o) {
  const auto p = params(0.0);
  const auto h = unstable_manifold_graph(p, 0.5, 500, 1e-8);
  double worst = 0;
  bool above = true;
  for (const auto& s : h) {
    worst = std::max(worst, s.residual);
    above = above && s.h > p.mu * s.x * s.x / (2 * p.alpha);
  }
  o.note << "samples=" << h.size() << " max_residual=" << worst << " ";
  o.expect(worst <= 1e-8, "residual");
  o.expect(above, "lower bound");
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double limit_s;
    std::function<void(Outcome&)> run;
  };
  const std::vector<Criterion> all{
      {"horseshoe twist normalization", 1, horseshoe_twist},
      {"pleating twists are incremental", 30, incremental_twists},
      {"three-strip subtemplate certificates", 120, subtemplate_certificates},
      {"four-homoclinic classification", 120, four_homoclinics},
      {"nonnegative signature pair", 300, nonnegative_pair},
      {"orbit counts equal necklace counts", 60, necklaces},
      {"invariant oracles", 60, invariant_oracles},
      {"ode full shift", 300, full_shift},
      {"ode morse-smale", 300, morse_smale},
      {"ode knots match the pretemplate", 300, crosscheck_all},
      {"unstable manifold bound", 60, unstable_manifold},
  };
  int failed = 0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      all[i].run(o);
    } catch (const std::exception& e) {
      o.expect(false, std::string("exception: ") + e.what());
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (s > all[i].limit_s) o.expect(false, "over time limit");
    failed += !o.ok;
    std::printf("%s %2zu %-40s %8.2fs (limit %gs)  %s\n", o.ok ? "PASS" : "FAIL", i + 1, all[i].name, s,
                all[i].limit_s, o.note.str().c_str());
    std::fflush(stdout);
  }
  return failed;
}
