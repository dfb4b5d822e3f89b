#include "knotflow/universality.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <thread>

#include "knotflow/error.hpp"

namespace knotflow {

namespace {

int required_sign(int twist_prime) { return twist_prime > 0 ? -1 : 1; }

struct Witness {
  std::string line;
  int sign = 0;
};

std::size_t component_of(const PlanarDiagram& d, const std::string& label) {
  for (std::size_t c = 0; c < d.components.size(); ++c)
    if (d.components[c].label == label) return c;
  throw Error(ErrorCode::InvalidArgument, "orbit " + label + " missing from its diagram");
}

// A merge crossing between the two orbits whose bands are adjacent in the
// stacking order of the line they enter, counting only bands that carry one
// of the two orbits. Unused bands can be deleted from the template without
// touching either orbit, so they do not separate the slots.
std::optional<Witness> find_witness(const Template& t, const PlanarDiagram& d, const std::vector<Word>& pair, int sign,
                                    const std::string* line = nullptr) {
  std::vector<bool> used(t.strips.size(), false);
  for (const auto& w : pair)
    for (auto s : w.strips()) used[s] = true;
  for (const auto& x : d.crossings) {
    if (x.origin != CrossingOrigin::Merge || x.over_component == x.under_component || x.sign != sign) continue;
    if (x.over_strip < 0 || x.under_strip < 0 || x.line < 0) continue;
    const auto& id = t.branch_lines[static_cast<std::size_t>(x.line)].id;
    if (line && id != *line) continue;
    const auto a = static_cast<std::size_t>(x.over_strip), b = static_cast<std::size_t>(x.under_strip);
    const int lo = std::min(t.in_position(a), t.in_position(b)), hi = std::max(t.in_position(a), t.in_position(b));
    bool between = false;
    for (std::size_t s = 0; s < t.strips.size() && !between; ++s)
      between = used[s] && t.target_line(s) == static_cast<std::size_t>(x.line) && t.in_position(s) > lo &&
                t.in_position(s) < hi;
    if (!between) return Witness{id, sign};
  }
  return std::nullopt;
}

std::vector<int> twists_of(const Template& t, const std::vector<Word>& words, unsigned jobs) {
  std::vector<int> out(words.size());
  auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t i = begin; i < words.size(); i += stride) {
      auto d = orbits_to_diagram(t, std::vector<Word>{words[i]});
      out[i] = framing_of_component(d, 0);
    }
  };
  jobs = std::max(1u, jobs);
  if (jobs == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(work, j, jobs);
    for (auto& th : pool) th.join();
  }
  return out;
}

}  // namespace

std::optional<UniversalityCertificate> check_universal_sufficient(const Template& t, std::size_t max_period) {
  UniversalityQuery q;
  q.max_period = max_period;
  return check_universal_sufficient(t, q);
}

std::optional<UniversalityCertificate> check_universal_sufficient(const Template& t, const UniversalityQuery& q) {
  require_valid(t);
  const auto orbits = enumerate_orbits(t, q.max_period, q.orbit_cap);
  const auto& words = orbits.words;
  const auto tw = twists_of(t, words, q.jobs);

  std::vector<std::size_t> zero, nonzero;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (tw[i] == 0) zero.push_back(i);
    else if (!q.twist_kappa_prime || tw[i] == *q.twist_kappa_prime) nonzero.push_back(i);
  }
  // nonzero orbits bucketed by period; words are already in search order
  std::map<std::size_t, std::vector<std::size_t>> by_period;
  for (auto i : nonzero) by_period[words[i].period()].push_back(i);

  std::map<std::size_t, Verdict> unknot_cache;
  auto unknot = [&](std::size_t i) -> const Verdict& {
    auto it = unknot_cache.find(i);
    if (it != unknot_cache.end()) return it->second;
    auto d = orbits_to_diagram(t, std::vector<Word>{words[i]});
    return unknot_cache[i] = is_unknot(d);
  };

  for (std::size_t sum = 2; sum <= 2 * q.max_period; ++sum) {
    for (auto a : zero) {
      const std::size_t pa = words[a].period();
      if (pa >= sum) break;
      auto bucket = by_period.find(sum - pa);
      if (bucket == by_period.end()) continue;
      for (auto b : bucket->second) {
        const int sign = required_sign(tw[b]);
        const auto pair = orbits_to_diagram(t, std::vector<Word>{words[a], words[b]});
        auto w = find_witness(t, pair, {words[a], words[b]}, sign);
        if (!w) continue;
        const std::size_t ca = component_of(pair, format_word(t, words[a]));
        const std::size_t cb = component_of(pair, format_word(t, words[b]));
        if (linking_number(pair, ca, cb) != 0) continue;
        const auto& ua = unknot(a);
        if (ua.value != Tri::Yes) continue;
        const auto& ub = unknot(b);
        if (ub.value != Tri::Yes) continue;
        auto sep = are_separable(pair, ca, cb);
        if (sep.value != Tri::Yes) continue;
        UniversalityCertificate cert;
        cert.kappa = words[a];
        cert.kappa_prime = words[b];
        cert.twist_kappa = tw[a];
        cert.twist_kappa_prime = tw[b];
        cert.witness_line = w->line;
        cert.crossing_sign = w->sign;
        cert.unknot_kappa = ua;
        cert.unknot_kappa_prime = ub;
        cert.separable = std::move(sep);
        return cert;
      }
    }
  }
  return std::nullopt;
}

bool verify_certificate(const Template& t, const UniversalityCertificate& cert) {
  if (!validate(t).empty()) return false;
  if (cert.kappa.empty() || cert.kappa_prime.empty() || cert.kappa == cert.kappa_prime) return false;
  if (!is_admissible(cert.kappa, t) || !is_admissible(cert.kappa_prime, t)) return false;
  if (!cert.kappa.is_primitive() || !cert.kappa_prime.is_primitive()) return false;
  const int ta = twist_of_orbit(t, cert.kappa), tb = twist_of_orbit(t, cert.kappa_prime);
  if (ta != cert.twist_kappa || tb != cert.twist_kappa_prime) return false;
  if (ta != 0 || tb == 0) return false;
  if (cert.crossing_sign != required_sign(tb)) return false;
  const auto pair = orbits_to_diagram(t, std::vector<Word>{cert.kappa, cert.kappa_prime});
  if (!find_witness(t, pair, {cert.kappa, cert.kappa_prime}, cert.crossing_sign, &cert.witness_line)) return false;
  if (is_unknot(orbits_to_diagram(t, std::vector<Word>{cert.kappa})).value != Tri::Yes) return false;
  if (is_unknot(orbits_to_diagram(t, std::vector<Word>{cert.kappa_prime})).value != Tri::Yes) return false;
  const std::size_t ca = component_of(pair, format_word(t, cert.kappa));
  const std::size_t cb = component_of(pair, format_word(t, cert.kappa_prime));
  return are_separable(pair, ca, cb).value == Tri::Yes;
}

std::string format_certificate(const Template& t, const UniversalityCertificate& cert) {
  auto verdict = [](const Verdict& v) {
    std::string s(to_string(v.value));
    if (!v.certificate.empty()) {
      s += " [";
      for (std::size_t i = 0; i < v.certificate.size(); ++i) s += (i ? ", " : "") + v.certificate[i];
      s += "]";
    }
    return s;
  };
  std::ostringstream os;
  os << "kappa=" << format_word(t, cert.kappa) << "\n"
     << "kappa_prime=" << format_word(t, cert.kappa_prime) << "\n"
     << "twist_kappa=" << cert.twist_kappa << "\n"
     << "twist_kappa_prime=" << cert.twist_kappa_prime << "\n"
     << "witness_line=" << cert.witness_line << "\n"
     << "crossing_sign=" << (cert.crossing_sign > 0 ? "+1" : "-1") << "\n"
     << "unknot_kappa=" << verdict(cert.unknot_kappa) << "\n"
     << "unknot_kappa_prime=" << verdict(cert.unknot_kappa_prime) << "\n"
     << "separable=" << verdict(cert.separable) << "\n";
  return os.str();
}

}  // namespace knotflow
