#include <cstdint>
#include <cstdlib>
#include <functional>
#include <optional>
#include <map>
#include <vector>

#include "knotflow/error.hpp"
#include "knotflow/invariants.hpp"

// Alexander polynomials are evaluated exactly in the prime field of
// p = 2^61 - 1 at small integer points and recovered by interpolation in the
// basis t^j + t^-j, which is legitimate once the unit factor +-t^s has been
// divided out.

namespace knotflow {

namespace {

using u64 = std::uint64_t;
constexpr u64 kP = (u64{1} << 61) - 1;

u64 mul(u64 a, u64 b) {
  const unsigned __int128 z = static_cast<unsigned __int128>(a) * b;
  u64 lo = static_cast<u64>(z & kP), hi = static_cast<u64>(z >> 61);
  u64 r = lo + hi;
  return r >= kP ? r - kP : r;
}
u64 add(u64 a, u64 b) {
  u64 r = a + b;
  return r >= kP ? r - kP : r;
}
u64 sub(u64 a, u64 b) { return a >= b ? a - b : a + kP - b; }
u64 power(u64 a, u64 e) {
  u64 r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}
u64 inverse(u64 a) { return power(a, kP - 2); }
std::int64_t to_signed(u64 v) { return v > kP / 2 ? -static_cast<std::int64_t>(kP - v) : static_cast<std::int64_t>(v); }

// Determinant by Gaussian elimination; the matrix is consumed.
u64 determinant(std::vector<std::vector<u64>>& a) {
  const std::size_t n = a.size();
  u64 det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = sub(0, det);
    }
    det = mul(det, a[c][c]);
    const u64 inv = inverse(a[c][c]);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a[r][c] == 0) continue;
      const u64 f = mul(a[r][c], inv);
      for (std::size_t j = c; j < n; ++j) a[r][j] = sub(a[r][j], mul(f, a[c][j]));
    }
  }
  return det;
}

// f(t) = +-t^s * Delta(t). Finds s from f(t0) / f(1/t0) = t0^(2s), then
// interpolates the symmetric remainder with a doubling degree guess.
LaurentPoly recover(const std::function<u64(u64)>& f, int max_degree, int max_shift) {
  std::map<u64, u64> cache;
  auto eval = [&](u64 t) {
    auto it = cache.find(t);
    if (it != cache.end()) return it->second;
    return cache[t] = f(t);
  };

  auto shift_from = [&](u64 t0) -> std::optional<int> {
    const u64 a = eval(t0), b = eval(inverse(t0));
    if (a == 0 || b == 0) return std::nullopt;
    const u64 r = mul(a, inverse(b));
    const u64 step = mul(t0, t0);
    u64 cur = power(inverse(step), static_cast<u64>(max_shift));
    for (int s = -max_shift; s <= max_shift; ++s) {
      if (cur == r) return s;
      cur = mul(cur, step);
    }
    throw Error(ErrorCode::NoConvergence, "Alexander determinant is not a unit multiple of a symmetric polynomial");
  };
  std::optional<int> shift;
  for (u64 t0 = 3; !shift; t0 += 2) {
    if (t0 > 201) return LaurentPoly();  // determinant vanishes identically
    shift = shift_from(t0);
  }
  const int s = *shift;
  auto g = [&](u64 t) {
    const u64 v = eval(t);
    return s >= 0 ? mul(v, inverse(power(t, static_cast<u64>(s)))) : mul(v, power(t, static_cast<u64>(-s)));
  };

  max_degree = std::max(max_degree, 0);
  int degree = std::min(1, max_degree);
  for (;;) {
    // Newton interpolation of P(x), x = t + 1/t, at t = 2, 3, ...
    const std::size_t m = static_cast<std::size_t>(degree) + 1;
    std::vector<u64> xs(m), dd(m);
    for (std::size_t k = 0; k < m; ++k) {
      const u64 t = k + 2;
      xs[k] = add(t, inverse(t));
      dd[k] = g(t);
    }
    for (std::size_t j = 1; j < m; ++j)
      for (std::size_t k = m - 1; k >= j; --k) dd[k] = mul(sub(dd[k], dd[k - 1]), inverse(sub(xs[k], xs[k - j])));
    auto eval_p = [&](u64 x) {
      u64 r = dd[m - 1];
      for (std::size_t k = m - 1; k-- > 0;) r = add(mul(r, sub(x, xs[k])), dd[k]);
      return r;
    };
    bool ok = degree >= max_degree;
    if (!ok) {
      ok = true;
      for (u64 t : {u64{1000003}, u64{77777777}}) ok = ok && eval_p(add(t, inverse(t))) == g(t);
    }
    if (ok) {
      // Expand the Newton form into Laurent coefficients on [-degree, degree].
      const std::size_t width = 2 * m - 1;
      std::vector<u64> acc(width, 0);
      const std::size_t mid = m - 1;
      acc[mid] = dd[m - 1];
      for (std::size_t k = m - 1; k-- > 0;) {
        // acc = acc * (t + 1/t - xs[k]) + dd[k]
        std::vector<u64> next(width, 0);
        for (std::size_t i = 0; i < width; ++i) {
          if (acc[i] == 0) continue;
          if (i + 1 < width) next[i + 1] = add(next[i + 1], acc[i]);
          if (i > 0) next[i - 1] = add(next[i - 1], acc[i]);
          next[i] = sub(next[i], mul(acc[i], xs[k]));
        }
        next[mid] = add(next[mid], dd[k]);
        acc.swap(next);
      }
      std::vector<std::int64_t> coeffs(width);
      for (std::size_t i = 0; i < width; ++i) coeffs[i] = to_signed(acc[i]);
      return LaurentPoly(-degree, std::move(coeffs)).normalized();
    }
    degree = std::min(2 * degree, max_degree);
  }
}

void require_knot(const PlanarDiagram& d) {
  if (d.components.size() != 1)
    throw Error(ErrorCode::NotAKnot, "Alexander polynomial needs one component, got " + std::to_string(d.components.size()));
}

}  // namespace

LaurentPoly alexander(const BraidWord& b) {
  if (b.closure_components() != 1)
    throw Error(ErrorCode::NotAKnot, "braid closure has " + std::to_string(b.closure_components()) + " components");
  const std::size_t n = b.strands;
  if (n <= 1) return LaurentPoly(1);
  auto f = [&](u64 t) {
    const u64 ti = inverse(t), one_t = sub(1, t), one_ti = sub(1, ti);
    std::vector<std::vector<u64>> m(n, std::vector<u64>(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    for (int l : b.letters) {
      const auto i = static_cast<std::size_t>(std::abs(l) - 1);
      for (std::size_t r = 0; r < n; ++r) {
        const u64 x = m[r][i], y = m[r][i + 1];
        if (x == 0 && y == 0) continue;
        if (l > 0) {
          m[r][i] = add(mul(one_t, x), y);
          m[r][i + 1] = mul(t, x);
        } else {
          m[r][i] = mul(ti, y);
          m[r][i + 1] = add(x, mul(one_ti, y));
        }
      }
    }
    std::vector<std::vector<u64>> a(n - 1, std::vector<u64>(n - 1));
    for (std::size_t r = 0; r + 1 < n; ++r)
      for (std::size_t c = 0; c + 1 < n; ++c) a[r][c] = sub(r == c ? 1 : 0, m[r][c]);
    return determinant(a);
  };
  const int c = static_cast<int>(b.letters.size());
  const int strands = static_cast<int>(n);
  return recover(f, (c - strands + 1) / 2 + 1, (strands - 1) * c + 1);
}

LaurentPoly alexander_from_gauss(const PlanarDiagram& d) {
  require_knot(d);
  const auto& visits = d.components[0].visits;
  const std::size_t c = d.crossings.size();
  if (c == 0) return LaurentPoly(1);
  if (c == 1) return LaurentPoly(1);  // a single kink

  // Arc j starts at the j-th undercrossing passage and ends at the next one.
  const std::size_t len = visits.size();
  std::vector<std::size_t> arc_at(len, 0);
  std::size_t first_under = len;
  for (std::size_t q = 0; q < len; ++q)
    if (!visits[q].over) {
      first_under = q;
      break;
    }
  if (first_under == len) return LaurentPoly(1);  // no undercrossings: cannot happen for c > 0
  std::size_t arcs = 0;
  for (std::size_t k = 0; k < len; ++k) {
    const std::size_t q = (first_under + k) % len;
    if (!visits[q].over && k > 0) ++arcs;
    arc_at[q] = arcs;
  }
  ++arcs;
  const std::size_t arc_count = arcs;  // equals c

  struct Row {
    std::size_t over, in, out;
    int sign;
  };
  std::vector<Row> rows(c);
  for (std::size_t q = 0; q < len; ++q) {
    const auto& v = visits[q];
    auto& row = rows[v.crossing];
    row.sign = d.crossings[v.crossing].sign;
    if (v.over) {
      row.over = arc_at[q];
    } else {
      row.out = arc_at[q];
      row.in = arc_at[(q + len - 1) % len];
    }
  }
  auto f = [&](u64 t) {
    std::vector<std::vector<u64>> a(c, std::vector<u64>(arc_count, 0));
    for (std::size_t k = 0; k < c; ++k) {
      const auto& r = rows[k];
      a[k][r.over] = add(a[k][r.over], sub(1, t));
      if (r.sign > 0) {
        a[k][r.in] = add(a[k][r.in], t);
        a[k][r.out] = sub(a[k][r.out], 1);
      } else {
        a[k][r.in] = sub(a[k][r.in], 1);
        a[k][r.out] = add(a[k][r.out], t);
      }
    }
    std::vector<std::vector<u64>> minor(c - 1, std::vector<u64>(c - 1));
    for (std::size_t r = 0; r + 1 < c; ++r)
      for (std::size_t j = 0; j + 1 < c; ++j) minor[r][j] = a[r][j];
    return determinant(minor);
  };
  const int ci = static_cast<int>(c);
  return recover(f, ci / 2 + 1, ci + 1);
}

LaurentPoly alexander(const PlanarDiagram& d) {
  require_knot(d);
  if (d.braid) return alexander(*d.braid);
  return alexander_from_gauss(d);
}

}  // namespace knotflow
