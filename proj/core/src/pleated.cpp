#include "knotflow/pleated.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include "knotflow/error.hpp"
#include "knotflow/invariants.hpp"

namespace knotflow {

std::string_view to_string(PleatViolationKind k) {
  switch (k) {
    case PleatViolationKind::NotAPermutation: return "NotAPermutation";
    case PleatViolationKind::SideCount: return "SideCount";
    case PleatViolationKind::SidesDoNotAlternate: return "SidesDoNotAlternate";
    case PleatViolationKind::SelfIntersectingPleat: return "SelfIntersectingPleat";
  }
  return "?";
}

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::UniversalByThm43: return "UniversalByThm43";
    case Classification::NotUniversalByGenus: return "NotUniversalByGenus";
    case Classification::CertificateFound: return "CertificateFound";
    case Classification::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::vector<PleatViolation> validate_pleating(const PleatingSignature& p) {
  std::vector<PleatViolation> out;
  const std::size_t n = p.order.size();
  std::vector<int> sorted = p.order;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < n; ++i)
    if (sorted[i] != static_cast<int>(i) + 1) {
      out.push_back({PleatViolationKind::NotAPermutation, i, i, "order is not a permutation of 1..n"});
      return out;
    }
  if (p.sides.size() + 1 != n && !(n == 0 && p.sides.empty())) {
    out.push_back({PleatViolationKind::SideCount, p.sides.size(), n, "need n-1 fold sides"});
    return out;
  }
  for (std::size_t i = 0; i + 1 < p.sides.size(); ++i)
    if (p.sides[i] == p.sides[i + 1])
      out.push_back({PleatViolationKind::SidesDoNotAlternate, i, i + 1,
                     "folds " + std::to_string(i + 1) + " and " + std::to_string(i + 2) + " lie on the same side"});
  // Folds on one side must be nested or disjoint as intervals of the stable arc.
  for (std::size_t i = 0; i < p.sides.size(); ++i)
    for (std::size_t j = i + 1; j < p.sides.size(); ++j) {
      if (p.sides[i] != p.sides[j]) continue;
      auto [a, b] = std::minmax(p.order[i], p.order[i + 1]);
      auto [c, d] = std::minmax(p.order[j], p.order[j + 1]);
      if ((a < c && c < b && b < d) || (c < a && a < d && d < b))
        out.push_back({PleatViolationKind::SelfIntersectingPleat, i, j,
                       "folds " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " cross"});
    }
  return out;
}

std::optional<std::size_t> check_incremental(const TwistSignature& tau) {
  for (std::size_t i = 1; i < tau.size(); ++i)
    if (std::abs(tau[i] - tau[i - 1]) != 1) return i;
  return std::nullopt;
}

std::vector<int> fold_rotations(const PleatingSignature& p) {
  std::vector<int> r;
  for (std::size_t i = 0; i < p.sides.size(); ++i) {
    const bool up = p.order[i + 1] > p.order[i];
    const bool ccw = (p.sides[i] == Side::R) == up;
    r.push_back(ccw ? 1 : -1);
  }
  return r;
}

TwistSignature derive_twists(const PleatingSignature& p, int base_twist) {
  TwistSignature tau;
  if (p.order.empty()) return tau;
  tau.push_back(base_twist);
  for (int r : fold_rotations(p)) tau.push_back(tau.back() + r);
  return tau;
}

Template build_pretemplate(const PleatedSystem& s) {
  if (s.pleating.order.size() != s.n || s.twists.size() != s.n || s.n == 0)
    throw Error(ErrorCode::InvalidPleating, "pleating, twist signature and n disagree in length");
  if (auto bad = check_incremental(s.twists))
    throw Error(ErrorCode::NonIncrementalTwists, "twist signature jumps at index " + std::to_string(*bad));
  const auto v = validate_pleating(s.pleating);
  if (!v.empty()) throw Error(ErrorCode::InvalidPleating, std::string(to_string(v[0].kind)) + ": " + v[0].message);
  if (derive_twists(s.pleating, s.twists[0]) != s.twists)
    throw Error(ErrorCode::InvalidPleating, "fold sides do not produce the given twist signature");
  if (s.carrier != Carrier::Unknot && s.carrier != Carrier::Trefoil)
    throw Error(ErrorCode::UnsupportedCarrier, "only unknot and trefoil carriers are supported");

  Template t;
  BranchLine line;
  line.id = "p";
  line.in_slots.resize(s.n);
  for (std::size_t i = 0; i < s.n; ++i) {
    const std::string id = "g" + std::to_string(i + 1);
    line.out_slots.push_back(id);
    const int depth = s.pleating.order[i] - 1;
    line.in_slots[static_cast<std::size_t>(depth)] = id;
    const int tau = s.twists[i];
    t.strips.push_back({id, {"p", static_cast<int>(i)}, {"p", depth}, tau % 2 != 0 ? tau : 2 * tau});
  }
  t.branch_lines.push_back(std::move(line));
  t.carrier = s.carrier;
  require_valid(t);
  return t;
}

namespace {

bool has_both_signs(const TwistSignature& tau) {
  return std::any_of(tau.begin(), tau.end(), [](int x) { return x > 0; }) &&
         std::any_of(tau.begin(), tau.end(), [](int x) { return x < 0; });
}

// Re-expresses a word on a restricted template in the strip indices of the
// full template.
Word lift_word(const Template& sub, const Template& full, const Word& w) {
  std::vector<std::size_t> strips;
  for (auto s : w.strips()) strips.push_back(*full.strip_index(sub.strips[s].id));
  return Word(std::move(strips));
}

}  // namespace

ClassificationResult classify_bifurcation(const PleatedSystem& s, std::size_t max_period) {
  ClassifyOptions opt;
  opt.max_period = max_period;
  return classify_bifurcation(s, opt);
}

ClassificationResult classify_bifurcation(const PleatedSystem& s, const ClassifyOptions& opt) {
  ClassificationResult r;
  r.pretemplate = build_pretemplate(s);
  const auto& t = r.pretemplate;

  if (s.carrier == Carrier::Trefoil) {
    // Every orbit is a satellite of the carrier trefoil; confirm the genus
    // obstruction on all orbits in range.
    const auto orbits = enumerate_orbits(t, opt.max_period);
    const auto& words = orbits.words;
    std::vector<int> bound(words.size(), 0);
    std::vector<char> unknot(words.size(), 0);
    auto work = [&](std::size_t begin, std::size_t stride) {
      for (std::size_t i = begin; i < words.size(); i += stride) {
        const auto d = orbits_to_diagram(t, std::vector<Word>{words[i]});
        bound[i] = genus_lower_bound(d);
        unknot[i] = is_unknot(d).value == Tri::Yes;
      }
    };
    const unsigned jobs = std::max(1u, opt.jobs);
    if (jobs == 1) {
      work(0, 1);
    } else {
      std::vector<std::thread> pool;
      for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(work, j, jobs);
      for (auto& th : pool) th.join();
    }
    r.orbits_checked = words.size();
    r.min_genus_bound = words.empty() ? 0 : *std::min_element(bound.begin(), bound.end());
    r.any_unknot = std::any_of(unknot.begin(), unknot.end(), [](char c) { return c != 0; });
    r.kind = r.min_genus_bound >= 1 && !r.any_unknot ? Classification::NotUniversalByGenus : Classification::Inconclusive;
    return r;
  }

  UniversalityQuery q;
  q.max_period = opt.max_period;
  q.twist_kappa_prime = opt.twist_kappa_prime;
  q.jobs = opt.jobs;

  auto search_full = [&]() {
    if (auto cert = check_universal_sufficient(t, q)) {
      r.searched = t;
      r.certificate_verified = verify_certificate(t, *cert);
      r.certificate = std::move(cert);
    }
  };

  if (has_both_signs(s.twists)) {
    r.kind = Classification::UniversalByThm43;
    search_full();
    return r;
  }

  std::set<std::string> zero;
  for (std::size_t i = 0; i < s.n; ++i)
    if (s.twists[i] == 0) zero.insert(t.strips[i].id);
  if (!zero.empty() && zero.size() < s.n) {
    const auto sub = restrict_to_strips(t, zero);
    if (auto cert = check_universal_sufficient(sub, q)) {
      // A certificate on a subtemplate is one on the whole template.
      auto lifted = *cert;
      lifted.kappa = lift_word(sub, t, cert->kappa);
      lifted.kappa_prime = lift_word(sub, t, cert->kappa_prime);
      r.searched = sub;
      r.certificate_verified = verify_certificate(sub, *cert) && verify_certificate(t, lifted);
      r.certificate = std::move(cert);
      r.kind = Classification::CertificateFound;
      return r;
    }
  }
  search_full();
  r.kind = r.certificate ? Classification::CertificateFound : Classification::Inconclusive;
  return r;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<int> parse_ints(const std::string& s, const std::string& key) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "bad integer '" + item + "' in " + key);
    }
  }
  return out;
}

}  // namespace

PleatedSystem parse_pleat(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::optional<PleatedSystem> sys;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    auto fail = [&](const std::string& msg) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": " + msg);
    };
    if (head != "pleat") fail("expected 'pleat'");
    if (sys) fail("more than one pleat record");
    PleatedSystem s;
    std::set<std::string> seen;
    std::string kv;
    long n = -1;
    while (ls >> kv) {
      auto eq = kv.find('=');
      if (eq == std::string::npos) fail("expected key=value, got '" + kv + "'");
      const std::string key = kv.substr(0, eq), value = kv.substr(eq + 1);
      if (!seen.insert(key).second) fail("duplicate key " + key);
      if (key == "n") {
        auto v = parse_ints(value, key);
        if (v.size() != 1 || v[0] < 1) fail("n must be a positive integer");
        n = v[0];
      } else if (key == "order") {
        s.pleating.order = parse_ints(value, key);
      } else if (key == "sides") {
        for (char c : value) {
          if (c == 'L') s.pleating.sides.push_back(Side::L);
          else if (c == 'R') s.pleating.sides.push_back(Side::R);
          else if (c != '-') fail("sides must be a string of L and R");
        }
      } else if (key == "tau") {
        s.twists = parse_ints(value, key);
      } else if (key == "carrier") {
        if (value == "unknot") s.carrier = Carrier::Unknot;
        else if (value == "trefoil") s.carrier = Carrier::Trefoil;
        else throw Error(ErrorCode::UnsupportedCarrier, "line " + std::to_string(lineno) + ": carrier '" + value + "'");
      } else {
        fail("unknown key " + key);
      }
    }
    for (const char* k : {"n", "order", "tau"})
      if (!seen.count(k)) fail(std::string("missing ") + k);
    s.n = static_cast<std::size_t>(n);
    if (!seen.count("sides") && s.n > 1) fail("missing sides");
    if (s.pleating.order.size() != s.n || s.twists.size() != s.n) fail("order and tau must have n entries");
    sys = std::move(s);
  }
  if (!sys) throw Error(ErrorCode::ParseError, "no pleat record");
  return *sys;
}

std::string format_pleat(const PleatedSystem& s) {
  std::ostringstream os;
  os << "pleat n=" << s.n << " order=";
  for (std::size_t i = 0; i < s.pleating.order.size(); ++i) os << (i ? "," : "") << s.pleating.order[i];
  os << " sides=";
  if (s.pleating.sides.empty()) os << '-';
  for (auto side : s.pleating.sides) os << (side == Side::L ? 'L' : 'R');
  os << " tau=";
  for (std::size_t i = 0; i < s.twists.size(); ++i) os << (i ? "," : "") << s.twists[i];
  os << " carrier=" << (s.carrier == Carrier::Trefoil ? "trefoil" : "unknot") << "\n";
  return os.str();
}

PleatedSystem load_pleat(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_pleat(ss.str());
}

std::vector<PleatedSystem> catalogue_three_strip() {
  auto make = [](std::vector<int> order, std::vector<Side> sides, TwistSignature tau) {
    PleatedSystem s;
    s.n = 3;
    s.pleating = {std::move(order), std::move(sides)};
    s.twists = std::move(tau);
    return s;
  };
  using enum Side;
  return {make({2, 1, 3}, {R, L}, {1, 0, -1}), make({3, 1, 2}, {R, L}, {1, 0, -1}),
          make({2, 1, 3}, {L, R}, {-1, 0, 1}), make({3, 1, 2}, {L, R}, {-1, 0, 1})};
}

PleatingSignature random_pleating(std::size_t n, std::mt19937_64& rng) {
  PleatingSignature p;
  p.order.resize(n);
  std::iota(p.order.begin(), p.order.end(), 1);
  if (n < 2) return p;
  for (;;) {
    std::shuffle(p.order.begin(), p.order.end(), rng);
    const Side first = (rng() & 1) ? Side::R : Side::L;
    p.sides.clear();
    for (std::size_t i = 0; i + 1 < n; ++i)
      p.sides.push_back(i % 2 == 0 ? first : (first == Side::R ? Side::L : Side::R));
    if (validate_pleating(p).empty()) return p;
  }
}

}  // namespace knotflow
