#include "knotflow/diagram.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <sstream>

#include "knotflow/error.hpp"

namespace knotflow {

int BraidWord::exponent_sum() const {
  int e = 0;
  for (int l : letters) e += l > 0 ? 1 : -1;
  return e;
}

std::vector<std::size_t> BraidWord::permutation() const {
  // at[p] = start position of the strand currently at p
  std::vector<std::size_t> at(strands);
  std::iota(at.begin(), at.end(), 0);
  for (int l : letters) {
    const auto i = static_cast<std::size_t>(std::abs(l) - 1);
    std::swap(at[i], at[i + 1]);
  }
  std::vector<std::size_t> end(strands);
  for (std::size_t p = 0; p < strands; ++p) end[at[p]] = p;
  return end;
}

std::size_t BraidWord::closure_components() const {
  auto perm = permutation();
  std::vector<bool> seen(strands, false);
  std::size_t count = 0;
  for (std::size_t p = 0; p < strands; ++p) {
    if (seen[p]) continue;
    ++count;
    for (std::size_t q = p; !seen[q]; q = perm[q]) seen[q] = true;
  }
  return count;
}

PlanarDiagram diagram_from_braid(const BraidWord& braid, const std::vector<LetterInfo>& info,
                                 const std::vector<int>& strand_ribbon) {
  const std::size_t n = braid.strands;
  for (int l : braid.letters)
    if (l == 0 || static_cast<std::size_t>(std::abs(l)) >= n)
      throw Error(ErrorCode::InvalidArgument, "braid letter out of range");

  PlanarDiagram d;
  d.braid = braid;
  auto perm = braid.permutation();
  std::vector<std::size_t> comp_of(n, 0);
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> comp_start;
  for (std::size_t p = 0; p < n; ++p) {
    if (seen[p]) continue;
    const std::size_t c = comp_start.size();
    comp_start.push_back(p);
    for (std::size_t q = p; !seen[q]; q = perm[q]) {
      seen[q] = true;
      comp_of[q] = c;
    }
  }
  d.components.resize(comp_start.size());
  for (std::size_t c = 0; c < comp_start.size(); ++c) d.components[c].label = "c" + std::to_string(c);

  // Crossing visits per strand, in braid order.
  std::vector<std::vector<Visit>> strand_visits(n);
  std::vector<std::size_t> at(n);
  std::iota(at.begin(), at.end(), 0);
  d.crossings.reserve(braid.letters.size());
  for (std::size_t k = 0; k < braid.letters.size(); ++k) {
    const int l = braid.letters[k];
    const auto i = static_cast<std::size_t>(std::abs(l) - 1);
    const std::size_t left = at[i], right = at[i + 1];
    const bool left_over = l > 0;
    DiagramCrossing x;
    x.sign = l > 0 ? 1 : -1;
    const std::size_t over = left_over ? left : right, under = left_over ? right : left;
    x.over_component = comp_of[over];
    x.under_component = comp_of[under];
    if (k < info.size()) {
      x.origin = info[k].origin;
      x.line = info[k].line;
      x.over_strip = left_over ? info[k].left_strip : info[k].right_strip;
      x.under_strip = left_over ? info[k].right_strip : info[k].left_strip;
    }
    d.crossings.push_back(x);
    strand_visits[over].push_back({k, true});
    strand_visits[under].push_back({k, false});
    std::swap(at[i], at[i + 1]);
  }
  for (std::size_t c = 0; c < comp_start.size(); ++c) {
    auto& comp = d.components[c];
    std::size_t p = comp_start[c];
    do {
      for (const auto& v : strand_visits[p]) {
        auto& x = d.crossings[v.crossing];
        (v.over ? x.over_passage : x.under_passage) = comp.visits.size();
        comp.visits.push_back(v);
      }
      if (p < strand_ribbon.size()) comp.ribbon_half_twists += strand_ribbon[p];
      p = perm[p];
    } while (p != comp_start[c]);
  }
  return d;
}

namespace {

struct Builder {
  BraidWord braid;
  std::vector<LetterInfo> info;
  // strip carried by each strand position right now (-1 for none)
  std::vector<int> strip_at;

  void letter(std::size_t i, int sign, CrossingOrigin origin, int line = -1) {
    braid.letters.push_back(sign > 0 ? static_cast<int>(i + 1) : -static_cast<int>(i + 1));
    info.push_back({origin, line, strip_at[i], strip_at[i + 1]});
    std::swap(strip_at[i], strip_at[i + 1]);
  }

  void half_twist(std::size_t a, std::size_t k, int sign, CrossingOrigin origin) {
    for (std::size_t j = k; j-- > 1;)
      for (std::size_t i = a; i < a + j; ++i) letter(i, sign, origin);
  }

  // Swap the adjacent blocks [a, a+p) and [a+p, a+p+q); the left block passes
  // over when sign > 0.
  void block_swap(std::size_t a, std::size_t p, std::size_t q, int sign, CrossingOrigin origin) {
    for (std::size_t r = p; r-- > 0;)
      for (std::size_t i = a + r; i < a + r + q; ++i) letter(i, sign, origin);
  }
};

int effective_half_twists(const Template& t, std::size_t strip) {
  int h = t.strips[strip].half_twists;
  for (const auto& x : t.crossings)
    if (x.over == x.under && x.over == t.strips[strip].id) h += 2 * x.sign;
  return h;
}

}  // namespace

PlanarDiagram orbits_to_diagram(const Template& t, const std::vector<Word>& orbits) {
  require_valid(t);
  for (const auto& w : orbits)
    if (!is_admissible(w, t)) throw Error(ErrorCode::InvalidArgument, "orbit " + format_word(t, w) + " is not admissible");
  if (orbits.empty()) return {};

  // Global left-to-right positions at the merge section.
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> position;
  std::vector<StrandRef> row;
  for (std::size_t line = 0; line < t.branch_lines.size(); ++line)
    for (const auto& s : strand_order(t, orbits, line)) {
      position[{s.word, s.phase}] = row.size();
      row.push_back(s);
    }
  const std::size_t n = row.size();

  Builder b;
  b.braid.strands = n;
  b.strip_at.resize(n);
  std::vector<int> ribbon(n, 0);
  for (std::size_t p = 0; p < n; ++p) {
    const auto strip = orbits[row[p].word][row[p].phase];
    b.strip_at[p] = static_cast<int>(strip);
    ribbon[p] = effective_half_twists(t, strip);
  }

  auto band_extent = [&](int strip) {
    std::size_t first = n, count = 0;
    for (std::size_t p = 0; p < n; ++p)
      if (b.strip_at[p] == strip) {
        if (first == n) first = p;
        ++count;
      }
    return std::pair{first, count};
  };

  // current left-to-right band order, bands may be empty of strands
  std::vector<int> bands;
  for (const auto& line : t.branch_lines)
    for (const auto& id : line.out_slots) bands.push_back(static_cast<int>(*t.strip_index(id)));

  for (std::size_t s = 0; s < t.strips.size(); ++s) {
    const int h = effective_half_twists(t, s);
    auto [first, count] = band_extent(static_cast<int>(s));
    if (count < 2) continue;
    for (int r = 0; r < std::abs(h); ++r) b.half_twist(first, count, h > 0 ? 1 : -1, CrossingOrigin::HalfTwist);
  }

  for (const auto& x : t.crossings) {
    if (x.over == x.under) continue;
    const int over = static_cast<int>(*t.strip_index(x.over));
    const int under = static_cast<int>(*t.strip_index(x.under));
    auto io = std::find(bands.begin(), bands.end(), over) - bands.begin();
    auto iu = std::find(bands.begin(), bands.end(), under) - bands.begin();
    const int left = io < iu ? over : under, right = io < iu ? under : over;
    auto [lf, lc] = band_extent(left);
    auto [rf, rc] = band_extent(right);
    if (lc > 0 && rc > 0) b.block_swap(lf, lc, rc, x.sign, CrossingOrigin::StripCrossing);
    std::swap(bands[static_cast<std::size_t>(io)], bands[static_cast<std::size_t>(iu)]);
  }

  // Merge: bubble strands into their next positions; only strands entering
  // the same line can be out of order. The front band passes over.
  std::vector<std::size_t> target(n);
  std::vector<std::size_t> strand_at(n);
  {
    // Track which start-row strand sits at each position after the moves above.
    std::vector<std::size_t> at(n);
    std::iota(at.begin(), at.end(), 0);
    for (int l : b.braid.letters) {
      const auto i = static_cast<std::size_t>(std::abs(l) - 1);
      std::swap(at[i], at[i + 1]);
    }
    strand_at = at;
    for (std::size_t p = 0; p < n; ++p) {
      const auto& s = row[p];
      const auto& w = orbits[s.word];
      target[p] = position.at({s.word, (s.phase + 1) % w.period()});
    }
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const auto a = strand_at[i], c = strand_at[i + 1];
      if (target[a] < target[c]) continue;
      const auto sa = static_cast<std::size_t>(b.strip_at[i]);
      const auto sc = static_cast<std::size_t>(b.strip_at[i + 1]);
      if (sa == sc) throw Error(ErrorCode::InvalidTemplate, "strands of one band reordered at a merge");
      const bool left_front = t.in_position(sa) < t.in_position(sc);
      b.letter(i, left_front ? 1 : -1, CrossingOrigin::Merge, static_cast<int>(t.target_line(sa)));
      std::swap(strand_at[i], strand_at[i + 1]);
      changed = true;
    }
  }

  if (t.carrier == Carrier::Trefoil) {
    // Satellite on a zero-framed trefoil: the bundle runs twice around the
    // axis, crossing itself three times, with three negative full twists
    // restoring the framing.
    Builder sat;
    sat.braid.strands = 2 * n;
    sat.strip_at.assign(2 * n, -1);
    for (std::size_t p = 0; p < n; ++p) sat.strip_at[p] = static_cast<int>(orbits[row[p].word][row[p].phase]);
    for (std::size_t k = 0; k < b.braid.letters.size(); ++k) {
      const int l = b.braid.letters[k];
      sat.letter(static_cast<std::size_t>(std::abs(l) - 1), l > 0 ? 1 : -1, b.info[k].origin, b.info[k].line);
    }
    for (int r = 0; r < 3; ++r) sat.block_swap(0, n, n, 1, CrossingOrigin::Carrier);
    for (int r = 0; r < 6; ++r) sat.half_twist(0, n, -1, CrossingOrigin::Carrier);
    std::vector<int> sat_ribbon(2 * n, 0);
    for (std::size_t p = 0; p < n; ++p) sat_ribbon[p] = ribbon[p];
    // After three swaps the block at [0, n) holds the strands that started in
    // the second copy; each of them picks up -3 full twists of ribbon.
    for (std::size_t p = n; p < 2 * n; ++p) sat_ribbon[p] = -6;
    auto d = diagram_from_braid(sat.braid, sat.info, sat_ribbon);
    // Each component meets [0, n) first, so discovery order matches the pattern.
    auto perm = sat.braid.permutation();
    std::vector<bool> seen(2 * n, false);
    std::size_t c = 0;
    for (std::size_t p = 0; p < n; ++p) {
      if (seen[p]) continue;
      for (std::size_t q = p; !seen[q]; q = perm[q]) seen[q] = true;
      d.components[c++].label = format_word(t, orbits[row[p].word]);
    }
    return d;
  }

  auto d = diagram_from_braid(b.braid, b.info, ribbon);
  // Components are discovered by lowest strand; map them back to orbits.
  auto perm = b.braid.permutation();
  std::vector<bool> seen(n, false);
  std::size_t c = 0;
  for (std::size_t p = 0; p < n; ++p) {
    if (seen[p]) continue;
    for (std::size_t q = p; !seen[q]; q = perm[q]) seen[q] = true;
    d.components[c++].label = format_word(t, orbits[row[p].word]);
  }
  return d;
}

PlanarDiagram orbits_to_diagram(const Template& t, const OrbitSet& orbits) {
  return orbits_to_diagram(t, orbits.words);
}

int writhe(const PlanarDiagram& d, std::size_t component) {
  int w = 0;
  for (const auto& x : d.crossings)
    if (x.over_component == component && x.under_component == component) w += x.sign;
  return w;
}

int linking_number(const PlanarDiagram& d, std::size_t c1, std::size_t c2) {
  if (c1 == c2) throw Error(ErrorCode::InvalidArgument, "linking number needs two distinct components");
  int s = 0;
  for (const auto& x : d.crossings)
    if ((x.over_component == c1 && x.under_component == c2) || (x.over_component == c2 && x.under_component == c1))
      s += x.sign;
  return s / 2;
}

int framing_of_component(const PlanarDiagram& d, std::size_t component) {
  const int w = writhe(d, component);
  const int h = d.components.at(component).ribbon_half_twists;
  if (h % 2 != 0) return 2 * w + h;
  return w + h / 2;
}

int twist_of_orbit(const Template& t, const Word& w) {
  if (!w.is_primitive()) throw Error(ErrorCode::InvalidArgument, "twist needs a primitive word");
  auto d = orbits_to_diagram(t, std::vector<Word>{w});
  return framing_of_component(d, 0);
}

bool gauss_consistent(const PlanarDiagram& d) {
  std::vector<int> over(d.crossings.size(), 0), under(d.crossings.size(), 0);
  for (std::size_t c = 0; c < d.components.size(); ++c) {
    const auto& comp = d.components[c];
    for (std::size_t i = 0; i < comp.visits.size(); ++i) {
      const auto& v = comp.visits[i];
      if (v.crossing >= d.crossings.size()) return false;
      const auto& x = d.crossings[v.crossing];
      if (v.over) {
        ++over[v.crossing];
        if (x.over_component != c || x.over_passage != i) return false;
      } else {
        ++under[v.crossing];
        if (x.under_component != c || x.under_passage != i) return false;
      }
    }
  }
  for (std::size_t k = 0; k < d.crossings.size(); ++k)
    if (over[k] != 1 || under[k] != 1) return false;
  return true;
}

std::string gauss_code(const PlanarDiagram& d) {
  std::ostringstream os;
  for (const auto& comp : d.components) {
    os << comp.label << ":";
    for (const auto& v : comp.visits)
      os << ' ' << (v.over ? 'O' : 'U') << (v.crossing + 1) << (d.crossings[v.crossing].sign > 0 ? '+' : '-');
    os << '\n';
  }
  return os.str();
}

PlanarDiagram component_subdiagram(const PlanarDiagram& d, std::size_t component) {
  if (component >= d.components.size()) throw Error(ErrorCode::InvalidArgument, "no such component");
  if (d.braid) {
    // Delete every strand of the other components from the braid.
    const auto& br = *d.braid;
    const std::size_t n = br.strands;
    auto perm = br.permutation();
    std::vector<std::size_t> comp_of(n);
    std::vector<bool> seen(n, false);
    std::size_t c = 0;
    for (std::size_t p = 0; p < n; ++p) {
      if (seen[p]) continue;
      for (std::size_t q = p; !seen[q]; q = perm[q]) {
        seen[q] = true;
        comp_of[q] = c;
      }
      ++c;
    }
    std::vector<std::size_t> at(n);
    std::iota(at.begin(), at.end(), 0);
    BraidWord sub;
    std::vector<LetterInfo> info;
    for (std::size_t k = 0; k < br.letters.size(); ++k) {
      const int l = br.letters[k];
      const auto i = static_cast<std::size_t>(std::abs(l) - 1);
      if (comp_of[at[i]] == component && comp_of[at[i + 1]] == component) {
        std::size_t rank = 0;
        for (std::size_t p = 0; p < i; ++p) rank += comp_of[at[p]] == component;
        sub.letters.push_back(l > 0 ? static_cast<int>(rank + 1) : -static_cast<int>(rank + 1));
        const auto& x = d.crossings[k];
        LetterInfo li;
        li.origin = x.origin;
        li.line = x.line;
        li.left_strip = l > 0 ? x.over_strip : x.under_strip;
        li.right_strip = l > 0 ? x.under_strip : x.over_strip;
        info.push_back(li);
      }
      std::swap(at[i], at[i + 1]);
    }
    std::size_t m = 0;
    for (std::size_t p = 0; p < n; ++p) m += comp_of[p] == component;
    sub.strands = m;
    std::vector<int> ribbon(m, 0);
    ribbon[0] = d.components[component].ribbon_half_twists;
    auto out = diagram_from_braid(sub, info, ribbon);
    out.components[0].label = d.components[component].label;
    return out;
  }
  // Generic diagrams: keep self-crossings only.
  PlanarDiagram out;
  std::map<std::size_t, std::size_t> remap;
  DiagramComponent comp;
  comp.label = d.components[component].label;
  comp.ribbon_half_twists = d.components[component].ribbon_half_twists;
  for (const auto& v : d.components[component].visits) {
    const auto& x = d.crossings[v.crossing];
    if (x.over_component != component || x.under_component != component) continue;
    auto [it, fresh] = remap.emplace(v.crossing, out.crossings.size());
    if (fresh) {
      auto nx = x;
      nx.over_component = nx.under_component = 0;
      out.crossings.push_back(nx);
    }
    auto& nx = out.crossings[it->second];
    (v.over ? nx.over_passage : nx.under_passage) = comp.visits.size();
    comp.visits.push_back({it->second, v.over});
  }
  out.components.push_back(std::move(comp));
  return out;
}

}  // namespace knotflow
