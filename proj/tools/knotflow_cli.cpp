// knotflow: command-line front end.
//
// Exit status: 0 success, 1 negative verdict or numerical failure, 2 bad input.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "knotflow/diagram.hpp"
#include "knotflow/error.hpp"
#include "knotflow/invariants.hpp"
#include "knotflow/pleated.hpp"
#include "knotflow/render.hpp"
#include "knotflow/shilnikov.hpp"
#include "knotflow/symbolic.hpp"
#include "knotflow/template.hpp"
#include "knotflow/universality.hpp"

using namespace knotflow;

namespace {

std::string signed_int(int v) { return v > 0 ? "+" + std::to_string(v) : std::to_string(v); }

bool input_error(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidTemplate:
    case ErrorCode::ParseError:
    case ErrorCode::EmptyRestriction:
    case ErrorCode::InvalidPleating:
    case ErrorCode::NonIncrementalTwists:
    case ErrorCode::UnsupportedCarrier:
    case ErrorCode::InvalidArgument:
    case ErrorCode::NotAKnot:
      return true;
    default:
      return false;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
  out << text;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

// ODE itineraries are given as 1-based symbols: "1,3" or "g1.g3".
std::vector<int> parse_symbols(const std::string& text, std::size_t n) {
  std::string t = text;
  for (auto& c : t)
    if (c == '.') c = ',';
  std::vector<int> out;
  for (auto tok : split(t, ',')) {
    if (!tok.empty() && tok[0] == 'g') tok.erase(0, 1);
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size() || tok.empty() || v < 1 || static_cast<std::size_t>(v) > n)
      throw Error(ErrorCode::ParseError, "bad itinerary symbol '" + tok + "' (expected 1.." + std::to_string(n) + ")");
    out.push_back(v - 1);
  }
  if (out.empty()) throw Error(ErrorCode::ParseError, "empty itinerary");
  return out;
}

struct OdeFlags {
  std::string config;
  double lambda = 0.01;
  bool lambda_set = false;
  std::size_t k_max = 3;
  std::size_t samples = 1000;
  std::uint64_t seed = 20240601;
  std::string word;
  std::string svg;
};

bool given(CLI::App* sub, const std::string& name) {
  const auto* o = sub->get_option_no_throw(name);
  return o != nullptr && o->count() > 0;
}

ExperimentConfig ode_config(const OdeFlags& f, CLI::App* sub) {
  ExperimentConfig cfg;
  if (!f.config.empty()) cfg = parse_experiment_config(read_file(f.config));
  if (given(sub, "--lambda")) cfg.params.lambda = f.lambda;
  if (given(sub, "--k-max")) cfg.k_max = f.k_max;
  if (given(sub, "--samples")) cfg.samples = f.samples;
  if (given(sub, "--seed")) cfg.seed = f.seed;
  require_valid(cfg.params);
  return cfg;
}

void print_params(const ExperimentConfig& c) {
  std::cout << "alpha=" << c.params.alpha << " beta=" << c.params.beta << " mu=" << c.params.mu
            << " nu=" << c.params.nu << " lambda=" << c.params.lambda << " theta_bar=" << c.params.theta_bar
            << " tolerance=" << c.integrator.tolerance << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"knotflow: templates, knot invariants, pleated bifurcations and the saddle-node flow"};
  app.require_subcommand(1);
  unsigned jobs = 1;
  app.add_option("--jobs", jobs, "worker threads (output does not depend on it)")->check(CLI::PositiveNumber);

  std::string tmpl, word, svg, orbit_list, pleat_file;
  std::size_t max_period = 8;
  int twist_filter = 0;
  bool tsv = false;

  auto* orbits = app.add_subcommand("orbits", "list primitive orbits up to a period");
  orbits->add_option("template", tmpl, "builtin name (lorenz, horseshoe, universal-v) or file")->required();
  orbits->add_option("--max-period", max_period, "longest period")->check(CLI::PositiveNumber);

  auto* inv = app.add_subcommand("invariants", "twist, Alexander polynomial and genus bound of one orbit");
  inv->add_option("template", tmpl)->required();
  inv->add_option("--word", word, "dot-separated strip ids, e.g. x.y.y")->required();

  auto* uc = app.add_subcommand("universal-check", "search for a universality certificate");
  uc->add_option("template", tmpl)->required();
  uc->add_option("--max-period", max_period)->check(CLI::PositiveNumber);
  uc->add_option("--twist", twist_filter, "only accept partner orbits with this twist");

  auto* pleat = app.add_subcommand("pleat", "pleated homoclinic systems");
  pleat->require_subcommand(1);
  auto* pbuild = pleat->add_subcommand("build", "print the pretemplate of a pleat file");
  pbuild->add_option("pleatfile", pleat_file)->required();
  auto* pclass = pleat->add_subcommand("classify", "classify the bifurcation of a pleat file");
  pclass->add_option("pleatfile", pleat_file)->required();
  pclass->add_option("--max-period", max_period)->check(CLI::PositiveNumber);
  pclass->add_option("--twist", twist_filter, "only accept partner orbits with this twist");

  OdeFlags of;
  auto* ode = app.add_subcommand("ode", "numerical saddle-node flow");
  ode->require_subcommand(1);
  auto add_common = [&](CLI::App* s) {
    s->add_option("--config", of.config, "key=value experiment file");
    s->add_option("--lambda", of.lambda, "unfolding parameter");
  };
  auto* shift = ode->add_subcommand("shift-check", "covering relations and periodic-point counts");
  add_common(shift);
  shift->add_option("--k-max", of.k_max)->check(CLI::PositiveNumber);
  auto* ms = ode->add_subcommand("ms-check", "Morse-Smale check for lambda < 0");
  add_common(ms);
  ms->add_option("--samples", of.samples)->check(CLI::PositiveNumber);
  ms->add_option("--seed", of.seed);
  auto* orbit = ode->add_subcommand("orbit", "one periodic orbit, its knot and the template prediction");
  add_common(orbit);
  orbit->add_option("--word", of.word, "1-based symbols, e.g. 1,3")->required();
  orbit->add_option("--svg", of.svg, "draw the projected orbit");

  auto* render = app.add_subcommand("render", "SVG of orbit closures");
  render->add_option("template", tmpl)->required();
  render->add_option("--orbits", orbit_list, "comma-separated words (default: all up to --max-period)");
  render->add_option("--max-period", max_period)->check(CLI::PositiveNumber);
  render->add_option("--svg", svg, "output file")->required();

  orbits->add_flag("--tsv", tsv, "tab-separated output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*orbits) {
      const auto t = load_template(tmpl);
      const auto os = enumerate_orbits(t, max_period);
      std::cout << (tsv ? "word\tperiod\ttwist\talexander\n" : "");
      for (const auto& w : os.words) {
        const auto d = orbits_to_diagram(t, std::vector<Word>{w});
        const std::string a = alexander(d).to_string();
        if (tsv)
          std::cout << format_word(t, w) << "\t" << w.period() << "\t" << signed_int(twist_of_orbit(t, w)) << "\t" << a
                    << "\n";
        else
          std::cout << format_word(t, w) << "  period=" << w.period() << "  twist=" << signed_int(twist_of_orbit(t, w))
                    << "  alexander=" << a << "\n";
      }
      std::cout << "orbits=" << os.words.size() << "\n";
      return 0;
    }
    if (*inv) {
      const auto t = load_template(tmpl);
      const auto w = parse_word(t, word);
      if (!is_admissible(w, t)) throw Error(ErrorCode::InvalidArgument, "word is not admissible: " + word);
      const auto d = orbits_to_diagram(t, std::vector<Word>{w});
      const auto u = is_unknot(d);
      std::cout << "word=" << format_word(t, w) << "\n"
                << "period=" << w.period() << "\n"
                << "twist=" << signed_int(twist_of_orbit(t, w)) << "\n"
                << "writhe=" << signed_int(writhe(d, 0)) << "\n"
                << "alexander=" << alexander(d).to_string() << "\n"
                << "genus_lower_bound=" << genus_lower_bound(d) << "\n"
                << "unknot=" << to_string(u.value) << "\n"
                << "gauss=" << gauss_code(d);
      return 0;
    }
    if (*uc) {
      const auto t = load_template(tmpl);
      UniversalityQuery q;
      q.max_period = max_period;
      q.jobs = jobs;
      if (uc->count("--twist")) q.twist_kappa_prime = twist_filter;
      const auto c = check_universal_sufficient(t, q);
      if (!c) {
        std::cout << "no certificate found up to period " << max_period << "\n";
        return 1;
      }
      std::cout << format_certificate(t, *c) << "verified=" << (verify_certificate(t, *c) ? "yes" : "no") << "\n";
      return 0;
    }
    if (*pbuild) {
      const auto s = load_pleat(pleat_file);
      std::cout << serialize(build_pretemplate(s));
      return 0;
    }
    if (*pclass) {
      const auto s = load_pleat(pleat_file);
      ClassifyOptions o;
      o.max_period = max_period;
      o.jobs = jobs;
      if (pclass->count("--twist")) o.twist_kappa_prime = twist_filter;
      const auto r = classify_bifurcation(s, o);
      std::cout << format_pleat(s) << "classification=" << to_string(r.kind) << "\n";
      if (r.kind == Classification::NotUniversalByGenus || r.orbits_checked > 0)
        std::cout << "orbits_checked=" << r.orbits_checked << "\nmin_genus_bound=" << r.min_genus_bound
                  << "\nany_unknot=" << (r.any_unknot ? "yes" : "no") << "\n";
      if (r.certificate && r.searched) {
        std::cout << format_certificate(*r.searched, *r.certificate)
                  << "verified=" << (r.certificate_verified ? "yes" : "no") << "\n";
      }
      return r.kind == Classification::Inconclusive ? 1 : 0;
    }
    if (*shift) {
      const auto cfg = ode_config(of, shift);
      print_params(cfg);
      const auto g = canonical_global_map();
      const auto rep = verify_full_shift(cfg.params, g, cfg.k_max, cfg.integrator, jobs);
      std::cout << "coverings_checked=" << rep.coverings.relations_checked
                << "\ncoverings_failed=" << rep.coverings.failures.size() << "\n";
      for (const auto& f : rep.coverings.failures) std::cout << "failed\t" << f[0] + 1 << "\t" << f[1] + 1 << "\n";
      if (!rep.coverings.all_hold) return 1;
      std::cout << "k\tpoints\texpected\n";
      bool ok = rep.itineraries_ok;
      std::size_t expect = 1;
      for (std::size_t k = 0; k < rep.counts.size(); ++k) {
        expect *= g.heights.size();
        std::cout << k + 1 << "\t" << rep.counts[k] << "\t" << expect << "\n";
        ok = ok && rep.counts[k] == expect;
      }
      std::cout << "max_residual=" << rep.max_residual << "\ntolerance_drift=" << rep.tolerance_drift
                << "\nitineraries=" << (rep.itineraries_ok ? "ok" : "bad") << "\n";
      return ok && rep.max_residual <= 1e-8 ? 0 : 1;
    }
    if (*ms) {
      auto cfg = ode_config(of, ms);
      if (!given(ms, "--lambda") && cfg.params.lambda > 0) cfg.params.lambda = -cfg.params.lambda;
      print_params(cfg);
      const auto rep = verify_morse_smale(cfg.params, canonical_global_map(), cfg.samples, cfg.seed, cfg.integrator);
      std::cout << "equilibria_theta=";
      for (std::size_t i = 0; i < rep.equilibria.size(); ++i) std::cout << (i ? "," : "") << rep.equilibria[i];
      std::cout << "\nattractor=" << rep.attractor.u << "," << rep.attractor.v
                << "\nattractor_residual=" << rep.attractor_residual << "\nspectral_radius=" << rep.spectral_radius
                << "\nattractor_in_D=" << (rep.attractor_in_d ? "yes" : "no") << "\nseed=" << rep.seed
                << "\nsamples=" << rep.samples << "\nconverged=" << rep.converged
                << "\nto_equilibrium=" << rep.to_equilibrium << "\n";
      const bool ok = rep.attractor_in_d && rep.spectral_radius < 1 && rep.converged * 100 >= rep.samples * 99;
      return ok ? 0 : 1;
    }
    if (*orbit) {
      const auto cfg = ode_config(of, orbit);
      const auto g = canonical_global_map();
      const auto o = find_periodic(cfg.params, g, parse_symbols(of.word, g.heights.size()), cfg.integrator);
      const auto t = build_pretemplate(PleatedSystem{g.heights.size(), g.pleating, g.twists, Carrier::Unknot});
      const auto c = crosscheck(o, cfg.params, g, t, cfg.integrator);
      std::cout << "word\tresidual\ttwist\talexander\ttemplate_twist\ttemplate_alexander\tmatch\n"
                << c.word << "\t" << o.residual << "\t" << signed_int(c.ode_twist) << "\t" << c.ode_alexander.to_string()
                << "\t" << signed_int(c.template_twist) << "\t" << c.template_alexander.to_string() << "\t"
                << (c.match ? "yes" : "no") << "\n";
      for (std::size_t i = 0; i < o.points.size(); ++i)
        std::cout << "point\t" << o.word[i] + 1 << "\t" << o.points[i].u << "\t" << o.points[i].v << "\n";
      if (!of.svg.empty()) {
        const auto sp = realize_orbit(o, cfg.params, g, cfg.integrator);
        std::vector<std::array<double, 2>> pts;
        for (const auto& p : sp.curve) pts.push_back({p.x, p.y});
        write_file(of.svg, render_curves_svg({pts}, {c.word}));
      }
      return c.match ? 0 : 1;
    }
    if (*render) {
      const auto t = load_template(tmpl);
      std::vector<Word> ws;
      if (!orbit_list.empty()) {
        for (const auto& s : split(orbit_list, ',')) ws.push_back(parse_word(t, s));
      } else {
        ws = enumerate_orbits(t, max_period).words;
      }
      const auto d = orbits_to_diagram(t, ws);
      write_file(svg, render_braid_svg(d));
      std::cout << "components=" << d.components.size() << "\ncrossings=" << d.crossing_count() << "\n"
                << gauss_code(d);
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "knotflow: " << e.what() << "\n";
    return input_error(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "knotflow: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
