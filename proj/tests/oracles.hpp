#pragma once
// Brute-force reference computations used by the tests. These deliberately
// share no code with the library beyond its public data types.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "knotflow/diagram.hpp"
#include "knotflow/laurent.hpp"

namespace oracle {

using Poly = std::map<int, std::int64_t>;  // exponent -> coefficient

inline void clean(Poly& p) {
  for (auto it = p.begin(); it != p.end();) it = it->second == 0 ? p.erase(it) : std::next(it);
}
inline Poly add(const Poly& a, const Poly& b, std::int64_t sb = 1) {
  Poly r = a;
  for (auto [e, c] : b) r[e] += sb * c;
  clean(r);
  return r;
}
inline Poly mul(const Poly& a, const Poly& b) {
  Poly r;
  for (auto [e1, c1] : a)
    for (auto [e2, c2] : b) r[e1 + e2] += c1 * c2;
  clean(r);
  return r;
}
inline Poly constant(std::int64_t c) { return c ? Poly{{0, c}} : Poly{}; }

using Matrix = std::vector<std::vector<Poly>>;

inline Matrix identity(std::size_t m) {
  Matrix a(m, std::vector<Poly>(m));
  for (std::size_t i = 0; i < m; ++i) a[i][i] = constant(1);
  return a;
}
inline Matrix mul(const Matrix& a, const Matrix& b) {
  const std::size_t m = a.size();
  Matrix r(m, std::vector<Poly>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < m; ++k)
      if (!a[i][k].empty())
        for (std::size_t j = 0; j < m; ++j) r[i][j] = add(r[i][j], mul(a[i][k], b[k][j]));
  return r;
}

// Laplace expansion along the first row.
inline Poly det(const Matrix& a) {
  const std::size_t m = a.size();
  if (m == 0) return constant(1);
  if (m == 1) return a[0][0];
  Poly r;
  for (std::size_t j = 0; j < m; ++j) {
    if (a[0][j].empty()) continue;
    Matrix minor;
    for (std::size_t i = 1; i < m; ++i) {
      std::vector<Poly> row;
      for (std::size_t k = 0; k < m; ++k)
        if (k != j) row.push_back(a[i][k]);
      minor.push_back(row);
    }
    r = add(r, mul(a[0][j], det(minor)), j % 2 == 0 ? 1 : -1);
  }
  return r;
}

// Reduced Burau image of sigma_i^(+-1), i is 1-based, on n strands.
inline Matrix reduced_burau(std::size_t n, int letter) {
  const std::size_t m = n - 1;
  Matrix a = identity(m);
  const bool pos = letter > 0;
  const std::size_t i = static_cast<std::size_t>(std::abs(letter)) - 1;  // row index of the generator
  const Poly diag = pos ? Poly{{1, -1}} : Poly{{-1, -1}};
  a[i][i] = diag;
  if (i > 0) a[i][i - 1] = pos ? Poly{{1, 1}} : constant(1);
  if (i + 1 < m) a[i][i + 1] = pos ? constant(1) : Poly{{-1, 1}};
  return a;
}

// Exact division of a by b; returns nullopt when b does not divide a.
inline std::optional<Poly> divide_exact(const Poly& a, const Poly& b) {
  if (a.empty()) return Poly{};
  // ordinary polynomials after shifting both to lowest exponent zero
  const int al = a.begin()->first, bl = b.begin()->first;
  std::vector<std::int64_t> r, d;
  for (auto [e, c] : a) r.resize(static_cast<std::size_t>(e - al + 1)), r[static_cast<std::size_t>(e - al)] = c;
  for (auto [e, c] : b) d.resize(static_cast<std::size_t>(e - bl + 1)), d[static_cast<std::size_t>(e - bl)] = c;
  if (r.size() < d.size()) return std::nullopt;
  std::vector<std::int64_t> q(r.size() - d.size() + 1, 0);
  for (std::size_t k = q.size(); k-- > 0;) {
    const std::int64_t top = r[k + d.size() - 1];
    if (top % d.back() != 0) return std::nullopt;
    q[k] = top / d.back();
    for (std::size_t j = 0; j < d.size(); ++j) r[k + j] -= q[k] * d[j];
  }
  for (auto c : r)
    if (c != 0) return std::nullopt;
  Poly out;
  for (std::size_t k = 0; k < q.size(); ++k)
    if (q[k]) out[static_cast<int>(k) + al - bl] = q[k];
  return out;
}

inline knotflow::LaurentPoly normalize(Poly p) {
  clean(p);
  if (p.empty()) return {};
  const int lo = p.begin()->first, hi = p.rbegin()->first;
  const int shift = (hi - lo) % 2 == 0 ? -(lo + hi) / 2 : -lo;
  std::int64_t at_one = 0;
  for (auto [e, c] : p) at_one += c;
  const std::int64_t sign = at_one < 0 || (at_one == 0 && p.rbegin()->second < 0) ? -1 : 1;
  std::vector<std::int64_t> coeffs(static_cast<std::size_t>(hi - lo + 1), 0);
  for (auto [e, c] : p) coeffs[static_cast<std::size_t>(e - lo)] = sign * c;
  return knotflow::LaurentPoly(lo + shift, coeffs);
}

// Alexander polynomial of a braid closure from det(I - Burau) / (1 + t + ... + t^(n-1)).
inline knotflow::LaurentPoly alexander_burau(std::size_t strands, const std::vector<int>& letters) {
  if (strands == 1) return knotflow::LaurentPoly(1);
  Matrix b = identity(strands - 1);
  for (int l : letters) b = mul(b, reduced_burau(strands, l));
  Matrix m = identity(strands - 1);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) m[i][j] = add(m[i][j], b[i][j], -1);
  Poly denom;
  for (std::size_t k = 0; k < strands; ++k) denom[static_cast<int>(k)] = 1;
  const auto q = divide_exact(det(m), denom);
  return q ? normalize(*q) : knotflow::LaurentPoly(0);
}

// Number of distinct primitive necklaces of length k over n symbols, by listing.
inline std::size_t necklaces_by_listing(unsigned n, unsigned k) {
  std::set<std::vector<unsigned>> seen;
  std::vector<unsigned> w(k, 0);
  for (;;) {
    bool primitive = true;
    for (unsigned d = 1; d < k && primitive; ++d) {
      if (k % d) continue;
      bool same = true;
      for (unsigned i = 0; i < k && same; ++i) same = w[i] == w[(i + d) % k];
      if (same) primitive = false;
    }
    if (primitive) {
      auto best = w;
      for (unsigned r = 1; r < k; ++r) {
        std::vector<unsigned> rot(w.begin() + r, w.end());
        rot.insert(rot.end(), w.begin(), w.begin() + r);
        best = std::min(best, rot);
      }
      seen.insert(best);
    }
    unsigned i = 0;
    while (i < k && ++w[i] == n) w[i++] = 0;
    if (i == k) break;
  }
  return seen.size();
}

// Seifert circles of a diagram traced from its Gauss data: at each crossing the
// oriented smoothing leaves along the outgoing arc of the other passage.
inline std::size_t seifert_by_tracing(const knotflow::PlanarDiagram& d) {
  // partner[(c, v)] = (c', v') for the other passage through the same crossing
  std::map<std::pair<std::size_t, std::size_t>, std::pair<std::size_t, std::size_t>> partner;
  std::map<std::size_t, std::vector<std::pair<std::size_t, std::size_t>>> at;
  std::size_t free_loops = 0;
  for (std::size_t c = 0; c < d.components.size(); ++c) {
    if (d.components[c].visits.empty()) ++free_loops;
    for (std::size_t v = 0; v < d.components[c].visits.size(); ++v) at[d.components[c].visits[v].crossing].push_back({c, v});
  }
  for (auto& [x, ps] : at) {
    partner[ps[0]] = ps[1];
    partner[ps[1]] = ps[0];
  }
  // an arc is named by the passage it leaves from
  std::set<std::pair<std::size_t, std::size_t>> used;
  std::size_t circles = free_loops;
  for (auto& [start, other] : partner) {
    if (used.count(start)) continue;
    ++circles;
    auto arc = start;
    while (!used.count(arc)) {
      used.insert(arc);
      const auto& vis = d.components[arc.first].visits;
      const std::pair<std::size_t, std::size_t> arrive{arc.first, (arc.second + 1) % vis.size()};
      arc = partner.at(arrive);
    }
  }
  return circles;
}

}  // namespace oracle
