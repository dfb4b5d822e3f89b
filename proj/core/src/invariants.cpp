#include "knotflow/invariants.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>

#include "knotflow/error.hpp"

namespace knotflow {

std::string_view to_string(Tri v) {
  switch (v) {
    case Tri::Yes: return "Yes";
    case Tri::No: return "No";
    case Tri::Unknown: return "Unknown";
  }
  return "?";
}

std::size_t seifert_circles(const PlanarDiagram& d) {
  if (d.braid) return d.braid->strands;
  // Edge (c, q) runs from visit q to visit q+1 of component c. At a crossing
  // the smoothing turns onto the other strand's outgoing edge.
  std::vector<std::size_t> base(d.components.size() + 1, 0);
  for (std::size_t c = 0; c < d.components.size(); ++c) base[c + 1] = base[c] + d.components[c].visits.size();
  const std::size_t edges = base.back();
  std::vector<std::size_t> succ(edges);
  for (std::size_t c = 0; c < d.components.size(); ++c) {
    const auto& vs = d.components[c].visits;
    for (std::size_t q = 0; q < vs.size(); ++q) {
      const auto& arrive = vs[(q + 1) % vs.size()];
      const auto& x = d.crossings[arrive.crossing];
      const std::size_t oc = arrive.over ? x.under_component : x.over_component;
      const std::size_t op = arrive.over ? x.under_passage : x.over_passage;
      succ[base[c] + q] = base[oc] + op;
    }
  }
  std::vector<bool> seen(edges, false);
  std::size_t circles = 0;
  for (std::size_t e = 0; e < edges; ++e) {
    if (seen[e]) continue;
    ++circles;
    for (std::size_t f = e; !seen[f]; f = succ[f]) seen[f] = true;
  }
  for (const auto& comp : d.components)
    if (comp.visits.empty()) ++circles;
  return circles;
}

int canonical_genus_positive_braid(const BraidWord& b) {
  for (int l : b.letters)
    if (l < 0) throw Error(ErrorCode::InvalidArgument, "braid is not positive");
  if (b.closure_components() != 1) throw Error(ErrorCode::DisconnectedClosure, "braid closure is not a knot");
  const int c = static_cast<int>(b.letters.size()), s = static_cast<int>(b.strands);
  return (c - s + 1) / 2;
}

int genus_lower_bound(const PlanarDiagram& d) {
  const auto a = alexander(d);
  int g = a.span() / 2;
  if (d.braid && std::all_of(d.braid->letters.begin(), d.braid->letters.end(), [](int l) { return l > 0; }))
    g = std::max(g, canonical_genus_positive_braid(*d.braid));
  return g;
}

// ---------------------------------------------------------------------------
// Braid simplification
//
// Moves: R2 (cancel an adjacent inverse pair, cyclically), R1 (Markov
// destabilization of a generator used once at the top), far commutation, the
// braid relations (including the mixed form s_j^e s_k^f s_j^-e =
// s_k^-e s_j^f s_k^e with |j - k| = 1), cyclic rotation, and conjugation by
// the half twist, which sends s_j to s_(n-j).

namespace {

struct Simplifier {
  std::vector<int> w;
  std::size_t n;
  std::vector<std::string> moves;
  std::size_t budget;
  bool exhausted = false;

  bool spend(std::string move) {
    if (moves.size() >= budget) {
      exhausted = true;
      return false;
    }
    moves.push_back(std::move(move));
    return true;
  }

  int top() const { return static_cast<int>(n) - 1; }

  bool cancel_once() {
    const std::size_t m = w.size();
    if (m < 2) return false;
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t j = (i + 1) % m;
      if (w[i] != -w[j]) continue;
      if (!spend(j == 0 ? "R2 wrap" : "R2 " + std::to_string(i))) return false;
      if (j == 0) {
        w.pop_back();
        w.erase(w.begin());
      } else {
        w.erase(w.begin() + static_cast<long>(i), w.begin() + static_cast<long>(i) + 2);
      }
      return true;
    }
    return false;
  }

  bool destabilize() {
    if (n < 2) return false;
    std::size_t count = 0, at = 0;
    for (std::size_t i = 0; i < w.size(); ++i)
      if (std::abs(w[i]) == top()) {
        ++count;
        at = i;
      }
    if (count != 1) return false;
    if (!spend("R1 " + std::to_string(at))) return false;
    w.erase(w.begin() + static_cast<long>(at));
    --n;
    return true;
  }

  void flip() {
    for (int& l : w) l = (l > 0 ? 1 : -1) * (static_cast<int>(n) - std::abs(l));
  }

  void rotate_to(std::size_t p) {
    if (p == 0) return;
    std::rotate(w.begin(), w.begin() + static_cast<long>(p), w.end());
  }

  // Tries to lower the number of top letters by working on one cyclically
  // consecutive pair of them.
  bool reduce_top() {
    if (n < 2) return false;
    const int g = top();
    std::vector<std::size_t> at;
    for (std::size_t i = 0; i < w.size(); ++i)
      if (std::abs(w[i]) == g) at.push_back(i);
    if (at.size() < 2) return false;
    for (std::size_t k = 0; k < at.size(); ++k) {
      std::vector<int> save = w;
      const std::size_t saved_moves = moves.size();
      const std::size_t p = at[k];
      if (!spend("conj " + std::to_string(p))) return false;
      rotate_to(p);
      std::size_t q = (k + 1 < at.size() ? at[k + 1] : at[0] + w.size()) - p;
      if (q >= w.size()) q -= w.size();
      if (q == 0) q = w.size();  // unreachable with two or more occurrences
      // Push letters that commute with the top generator out to the left of
      // the pair, one transposition at a time.
      bool moved = true;
      while (moved) {
        moved = false;
        for (std::size_t i = 1; i < q; ++i) {
          if (std::abs(w[i]) > g - 2) continue;
          bool can = true;
          for (std::size_t j = 0; j < i && can; ++j)
            if (std::abs(std::abs(w[j]) - std::abs(w[i])) < 2) can = false;
          if (!can) continue;
          for (std::size_t j = i; j > 0; --j) {
            if (!spend("comm " + std::to_string(j - 1))) return false;
            std::swap(w[j], w[j - 1]);
          }
          if (!spend("conj 1")) return false;
          rotate_to(1);
          --q;
          moved = true;
          break;
        }
        if (!moved) {
          // also try pushing to the right past the second top letter
          for (std::size_t i = q - 1; i >= 1 && i < q; --i) {
            if (std::abs(w[i]) > g - 2) continue;
            bool can = true;
            for (std::size_t j = i + 1; j <= q && can; ++j)
              if (std::abs(std::abs(w[j]) - std::abs(w[i])) < 2) can = false;
            if (!can) continue;
            for (std::size_t j = i; j < q; ++j) {
              if (!spend("comm " + std::to_string(j))) return false;
              std::swap(w[j], w[j + 1]);
            }
            --q;
            moved = true;
            break;
          }
        }
      }
      const std::size_t inner = q - 1;
      const int a = w[0], c = w[q];
      if (inner == 0 && a == -c) {
        if (!spend("R2 0")) return false;
        w.erase(w.begin(), w.begin() + 2);
        return true;
      }
      if (inner == 1) {
        const int b = w[1];
        const int sa = a > 0 ? 1 : -1, sb = b > 0 ? 1 : -1, sc = c > 0 ? 1 : -1;
        const int j = g, kk = std::abs(b);
        if (sa == sb && sb == sc) {
          if (!spend("R3 0")) return false;
          w[0] = sa * kk;
          w[1] = sa * j;
          w[2] = sa * kk;
          return true;
        }
        if (sc == -sa) {
          if (!spend("R3 0")) return false;
          w[0] = -sa * kk;
          w[1] = sb * j;
          w[2] = sa * kk;
          return true;
        }
      }
      // No reduction on this pair; undo.
      w = std::move(save);
      moves.resize(saved_moves);
    }
    return false;
  }

  void run() {
    bool flipped = false;
    while (!exhausted) {
      if (cancel_once() || destabilize()) {
        flipped = false;
        continue;
      }
      if (exhausted) break;
      if (reduce_top()) {
        flipped = false;
        continue;
      }
      if (exhausted || flipped || n < 2) break;
      if (!spend("flip")) break;
      flip();
      flipped = true;
    }
  }
};

BraidWord restrict_braid(const BraidWord& b, const std::vector<bool>& keep_strand) {
  std::vector<std::size_t> at(b.strands);
  std::iota(at.begin(), at.end(), 0);
  BraidWord out;
  for (int l : b.letters) {
    const auto i = static_cast<std::size_t>(std::abs(l) - 1);
    if (keep_strand[at[i]] && keep_strand[at[i + 1]]) {
      int rank = 0;
      for (std::size_t p = 0; p < i; ++p) rank += keep_strand[at[p]];
      out.letters.push_back(l > 0 ? rank + 1 : -(rank + 1));
    }
    std::swap(at[i], at[i + 1]);
  }
  out.strands = static_cast<std::size_t>(std::count(keep_strand.begin(), keep_strand.end(), true));
  return out;
}

std::vector<std::size_t> strand_components(const BraidWord& b) {
  auto perm = b.permutation();
  std::vector<std::size_t> comp(b.strands, 0);
  std::vector<bool> seen(b.strands, false);
  std::size_t c = 0;
  for (std::size_t p = 0; p < b.strands; ++p) {
    if (seen[p]) continue;
    for (std::size_t q = p; !seen[q]; q = perm[q]) {
      seen[q] = true;
      comp[q] = c;
    }
    ++c;
  }
  return comp;
}

std::string braid_text(const BraidWord& b) {
  std::string s = "braid " + std::to_string(b.strands) + ":";
  for (int l : b.letters) s += " " + std::to_string(l);
  return s;
}

// Gauss-code simplification for diagrams without a braid view: removes kinks
// (R1) and clean bigons (R2) until none remain.
struct GaussSimplifier {
  std::vector<Visit> seq;
  std::vector<int> sign;
  std::vector<std::string> moves;
  std::size_t budget;
  bool exhausted = false;

  void erase_crossings(std::size_t a, std::size_t b) {
    std::vector<Visit> next;
    for (const auto& v : seq)
      if (v.crossing != a && v.crossing != b) next.push_back(v);
    seq.swap(next);
  }

  bool step() {
    const std::size_t m = seq.size();
    for (std::size_t q = 0; q < m; ++q) {
      const auto& u = seq[q];
      const auto& v = seq[(q + 1) % m];
      if (u.crossing == v.crossing) {
        if (moves.size() >= budget) return exhausted = true, false;
        moves.push_back("R1 c" + std::to_string(u.crossing + 1));
        erase_crossings(u.crossing, u.crossing);
        return true;
      }
    }
    for (std::size_t q = 0; q < m; ++q) {
      const auto& u = seq[q];
      const auto& v = seq[(q + 1) % m];
      if (u.over != v.over || sign[u.crossing] == sign[v.crossing]) continue;
      for (std::size_t r = 0; r < m; ++r) {
        const auto& x = seq[r];
        const auto& y = seq[(r + 1) % m];
        const bool same = x.crossing == u.crossing && y.crossing == v.crossing;
        const bool swapped = x.crossing == v.crossing && y.crossing == u.crossing;
        if ((same || swapped) && x.over != u.over) {
          if (moves.size() >= budget) return exhausted = true, false;
          moves.push_back("R2 c" + std::to_string(u.crossing + 1) + " c" + std::to_string(v.crossing + 1));
          erase_crossings(u.crossing, v.crossing);
          return true;
        }
      }
    }
    return false;
  }
};

}  // namespace

SimplifyResult simplify_braid(const BraidWord& b, std::size_t budget) {
  Simplifier s{b.letters, b.strands, {}, budget};
  s.run();
  SimplifyResult r;
  r.braid.strands = s.n;
  r.braid.letters = std::move(s.w);
  r.moves = std::move(s.moves);
  r.budget_exhausted = s.exhausted;
  return r;
}

Verdict is_unknot(const PlanarDiagram& d, std::size_t budget) {
  Verdict v;
  if (d.components.size() != 1) {
    v.certificate.push_back("diagram has " + std::to_string(d.components.size()) + " components");
    return v;
  }
  const std::size_t c = d.crossing_count();
  if (budget == 0) budget = std::max<std::size_t>(10 * c * c, 16);
  if (c == 0) {
    v.value = Tri::Yes;
    return v;
  }
  // The obstruction is checked first: once the Alexander polynomial differs
  // from 1, no sequence of moves can reach the empty diagram.
  const auto a = alexander(d);
  if (!(a == LaurentPoly(1))) {
    v.value = Tri::No;
    v.certificate.push_back("alexander " + a.to_string());
    return v;
  }
  if (d.braid) {
    auto r = simplify_braid(*d.braid, budget);
    if (r.braid.letters.empty() && r.braid.strands == 1) {
      v.value = Tri::Yes;
      v.certificate = std::move(r.moves);
      return v;
    }
    v.certificate.push_back(r.budget_exhausted ? "move budget exhausted" : "simplification stuck at " + braid_text(r.braid));
    return v;
  }
  GaussSimplifier g{d.components[0].visits, {}, {}, budget};
  for (const auto& x : d.crossings) g.sign.push_back(x.sign);
  while (!g.seq.empty() && g.step()) {
  }
  if (g.seq.empty()) {
    v.value = Tri::Yes;
    v.certificate = std::move(g.moves);
    return v;
  }
  v.certificate.push_back(g.exhausted ? "move budget exhausted" : "Gauss simplification stuck");
  return v;
}

Verdict are_separable(const PlanarDiagram& d, std::size_t c1, std::size_t c2, std::size_t budget) {
  Verdict v;
  if (c1 == c2 || c1 >= d.components.size() || c2 >= d.components.size()) {
    v.certificate.push_back("need two distinct components");
    return v;
  }
  const int lk = linking_number(d, c1, c2);
  if (lk != 0) {
    v.value = Tri::No;
    v.certificate.push_back("lk " + std::to_string(lk));
    return v;
  }
  bool mixed = false;
  for (const auto& x : d.crossings)
    if ((x.over_component == c1 && x.under_component == c2) || (x.over_component == c2 && x.under_component == c1))
      mixed = true;
  if (!mixed) {
    v.value = Tri::Yes;
    v.certificate.push_back("no crossings between the components");
    return v;
  }
  if (!d.braid) {
    v.certificate.push_back("no braid view to simplify");
    return v;
  }
  const auto comp = strand_components(*d.braid);
  std::vector<bool> keep(d.braid->strands);
  for (std::size_t p = 0; p < keep.size(); ++p) keep[p] = comp[p] == c1 || comp[p] == c2;
  const auto sub = restrict_braid(*d.braid, keep);
  const std::size_t c = sub.letters.size();
  if (budget == 0) budget = std::max<std::size_t>(10 * c * c, 16);
  auto r = simplify_braid(sub, budget);
  const auto rc = strand_components(r.braid);
  std::set<std::size_t> comps(rc.begin(), rc.end());
  std::vector<std::size_t> at(r.braid.strands);
  std::iota(at.begin(), at.end(), 0);
  bool still_mixed = false;
  for (int l : r.braid.letters) {
    const auto i = static_cast<std::size_t>(std::abs(l) - 1);
    if (rc[at[i]] != rc[at[i + 1]]) still_mixed = true;
    std::swap(at[i], at[i + 1]);
  }
  if (!still_mixed && comps.size() == 2) {
    v.value = Tri::Yes;
    v.certificate = std::move(r.moves);
    v.certificate.push_back("split at " + braid_text(r.braid));
    return v;
  }
  v.certificate.push_back(r.budget_exhausted ? "move budget exhausted" : "components still cross at " + braid_text(r.braid));
  return v;
}

}  // namespace knotflow
