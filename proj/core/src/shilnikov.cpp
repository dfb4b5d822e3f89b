#include "knotflow/shilnikov.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include <Eigen/Dense>

#include "knotflow/error.hpp"

namespace knotflow {

namespace {

constexpr double kPi = std::numbers::pi;

// Head of the curve (s below the first piece), in s:
//   (-inf, -2.2]  asymptote running right at height c0 - step
//   [-2.2, -2.0]  hairpin
//   [-2.0, -1.8]  repelling segment, slope 2
//   [-1.8, s_lo]  attracting segment
constexpr double kHairpin0 = -2.2, kHairpin1 = -2.0, kRepel1 = -1.8;
constexpr double kRepelCentre = -1.9;
constexpr double kAsymptote = -1.6;
constexpr double kStub = 0.15;
constexpr double kPieceSpan = 0.9;  // pieces live in |s| <= kPieceSpan

struct CurvePoint {
  double u, y, du, dy;  // position and derivative in s
};

CurvePoint curve(const GlobalMapSpec& g, double s) {
  const std::size_t n = g.heights.size();
  const double U = g.u_reach, c0 = g.heights[0], rh = 0.5 * g.height_step;
  const double lo0 = g.piece_lo[0];
  if (s < kHairpin0) {
    const double e = 0.5 * std::exp((s - kHairpin0) / 0.5);
    return {kAsymptote - e, c0 - 2 * rh, -e / 0.5, 0.0};
  }
  if (s < kHairpin1) {
    const double rate = kPi / (kHairpin1 - kHairpin0);
    const double psi = kPi / 2 + rate * (kHairpin1 - s);
    const double cu = -2.1;
    return {cu + rh * std::cos(psi), c0 - rh + rh * std::sin(psi), rh * std::sin(psi) * rate,
            -rh * std::cos(psi) * rate};
  }
  if (s < kRepel1) return {kRepelCentre + 2.0 * (s - kRepelCentre), c0, 2.0, 0.0};
  if (s < lo0) {
    const double u1 = kRepelCentre + 2.0 * (kRepel1 - kRepelCentre);
    const double m = (-U - u1) / (lo0 - kRepel1);
    return {u1 + m * (s - kRepel1), c0, m, 0.0};
  }
  for (std::size_t k = 0; k < n; ++k) {
    const double lo = g.piece_lo[k], hi = g.piece_hi[k];
    const double d = g.direction[k];
    if (s <= hi) {
      const double m = 2 * U / (hi - lo);
      return {d * (-U + m * (s - lo)), g.heights[k], d * m, 0.0};
    }
    if (k + 1 < n && s < g.piece_lo[k + 1]) {
      // semicircular fold outside |u| <= U joining heights c_k and c_{k+1}
      const double ca = g.heights[k], cb = g.heights[k + 1];
      const double mid = 0.5 * (ca + cb), r = 0.5 * std::abs(cb - ca), up = cb > ca ? 1.0 : -1.0;
      const double rate = kPi / (g.piece_lo[k + 1] - hi);
      const double phi = -kPi / 2 + rate * (s - hi);
      return {d * (U + r * std::cos(phi)), mid + up * r * std::sin(phi), -d * r * std::sin(phi) * rate,
              up * r * std::cos(phi) * rate};
    }
  }
  // tail stub past the last piece
  const double d = g.direction[n - 1];
  const double e = std::exp(-(s - g.piece_hi[n - 1]) / kStub);
  return {d * (U + kStub * (1 - e)), g.heights[n - 1], d * e, 0.0};
}

std::array<double, 2> unit_normal(const CurvePoint& c) {
  const double len = std::hypot(c.du, c.dy);
  if (len == 0.0) return {0.0, 1.0};
  return {-c.dy / len, c.du / len};
}

Point2 to_normalized_minus(const SectionPoint& p, const Chart& ch) { return {p.x / ch.x_scale, p.y / ch.y_in}; }
SectionPoint from_normalized_minus(const Point2& p, const Chart& ch) { return {p.u * ch.x_scale, p.v * ch.y_in}; }

template <class F>
void parallel_for(std::size_t count, unsigned jobs, F&& f) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(jobs);
  for (unsigned j = 0; j < jobs; ++j)
    pool.emplace_back([&, j] {
      try {
        for (std::size_t i = j; i < count; i += jobs) f(i);
      } catch (...) {
        errors[j] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::vector<int> rank_heights(const PleatingSignature& p) { return p.order; }

}  // namespace

GlobalMapSpec canonical_global_map() {
  PleatingSignature p{{1, 2, 4, 3}, {Side::R, Side::L, Side::R}};
  return make_global_map(p, {0, 1, 0, -1});
}

GlobalMapSpec make_global_map(const PleatingSignature& p, const TwistSignature& tau) {
  const auto issues = validate_pleating(p);
  if (!issues.empty()) throw Error(ErrorCode::InvalidPleating, issues.front().message);
  const std::size_t n = p.order.size();
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "the global map needs at least two homoclinic branches");
  if (tau.size() != n) throw Error(ErrorCode::InvalidArgument, "twist signature length differs from the pleating");
  if (p.sides.front() != Side::R)
    throw Error(ErrorCode::InvalidArgument, "the model map needs the first fold on side R (first branch increasing)");

  GlobalMapSpec g;
  g.pleating = p;
  g.twists = tau;
  const double half = 0.5 * static_cast<double>(n - 1) * g.height_step;
  g.core_y = half + 0.15;
  g.box_y = half + 0.3;
  const auto rank = rank_heights(p);
  for (std::size_t k = 0; k < n; ++k) g.heights.push_back((rank[k] - 0.5 * static_cast<double>(n + 1)) * g.height_step);

  // The entering head runs along height c_0 on the left; nothing on that side
  // may enclose it.
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (p.sides[k] != Side::L) continue;
    const double a = std::min(g.heights[k], g.heights[k + 1]), b = std::max(g.heights[k], g.heights[k + 1]);
    if (g.heights[0] > a && g.heights[0] < b)
      throw Error(ErrorCode::InvalidArgument, "first branch is enclosed by a left fold; no embedded head exists");
  }

  const double w = 2 * kPieceSpan / (static_cast<double>(n) + 0.5 * static_cast<double>(n - 1));
  for (std::size_t k = 0; k < n; ++k) {
    const double lo = -kPieceSpan + static_cast<double>(k) * 1.5 * w;
    g.piece_lo.push_back(lo);
    g.piece_hi.push_back(lo + w);
    g.direction.push_back(k % 2 == 0 ? 1 : -1);
  }
  return g;
}

Chart chart_of(const LocalModelParams& params, const GlobalMapSpec& g) {
  // the reference transit is the axis passage at the running lambda; at or
  // below the bifurcation it is frozen at chart_lambda
  LocalModelParams ref = params;
  if (!(params.lambda > 0.0)) ref.lambda = g.chart_lambda;
  Chart c;
  c.t0 = axis_time(ref, params.theta_bar);
  c.x_out = g.x_out;
  c.x_scale = g.x_out * std::exp(-params.alpha * c.t0);
  c.y_in = g.y_scale;
  c.y_out = g.y_scale * std::exp(-params.beta * c.t0);
  return c;
}

Point2 global_map(const GlobalMapSpec& g, const Point2& sp) {
  const auto c = curve(g, sp.u);
  const auto nrm = unit_normal(c);
  return {c.u + g.normal_gain * sp.v * nrm[0], c.y + g.normal_gain * sp.v * nrm[1]};
}

std::optional<Point2> global_map_inverse(const GlobalMapSpec& g, const Point2& q) {
  const double band = 0.5 * g.height_step;
  const double U = g.u_reach;
  for (std::size_t k = 0; k < g.heights.size(); ++k) {
    if (std::abs(q.v - g.heights[k]) >= band || std::abs(q.u) > U) continue;
    const double d = g.direction[k], w = g.piece_hi[k] - g.piece_lo[k];
    const double s = g.piece_lo[k] + w * (d * q.u + U) / (2 * U);
    return Point2{s, (q.v - g.heights[k]) / (g.normal_gain * d)};
  }
  const double u_lo = kRepelCentre + 2.0 * (kHairpin1 - kRepelCentre), u_hi = kRepelCentre + 2.0 * (kRepel1 - kRepelCentre);
  if (std::abs(q.v - g.heights[0]) < band && q.u >= u_lo && q.u <= u_hi)
    return Point2{kRepelCentre + (q.u - kRepelCentre) / 2.0, (q.v - g.heights[0]) / g.normal_gain};
  return std::nullopt;
}

std::optional<Point2> poincare_map(const Point2& p, const LocalModelParams& params, const GlobalMapSpec& g,
                                   const IntegratorOptions& opt) {
  const auto ch = chart_of(params, g);
  const auto r = integrate_local(from_normalized_minus(p, ch), params, opt);
  if (r.outcome != LocalOutcome::Exited) return std::nullopt;
  return global_map(g, {r.exit.x / ch.x_out, r.exit.y / ch.y_out});
}

std::optional<Point2> poincare_map_inverse(const Point2& p, const LocalModelParams& params, const GlobalMapSpec& g,
                                           const IntegratorOptions& opt) {
  const auto sp = global_map_inverse(g, p);
  if (!sp) return std::nullopt;
  const auto ch = chart_of(params, g);
  const auto r = integrate_local_backward({sp->u * ch.x_out, sp->v * ch.y_out}, params, opt);
  if (r.outcome != LocalOutcome::Exited) return std::nullopt;
  return to_normalized_minus(r.exit, ch);
}

namespace {

Point2 must_map(const Point2& p, const LocalModelParams& params, const GlobalMapSpec& g, const IntegratorOptions& opt) {
  auto q = poincare_map(p, params, g, opt);
  if (!q) {
    std::ostringstream os;
    os << "orbit of (" << p.u << ", " << p.v << ") converged to an equilibrium";
    throw Error(ErrorCode::NoConvergence, os.str());
  }
  return *q;
}

Point2 iterate(Point2 p, std::size_t k, const LocalModelParams& params, const GlobalMapSpec& g,
               const IntegratorOptions& opt) {
  for (std::size_t i = 0; i < k; ++i) p = must_map(p, params, g, opt);
  return p;
}

std::array<double, 4> jacobian_k(const Point2& p, std::size_t k, const LocalModelParams& params,
                                 const GlobalMapSpec& g, const IntegratorOptions& opt, double h) {
  const auto a = iterate({p.u + h, p.v}, k, params, g, opt), b = iterate({p.u - h, p.v}, k, params, g, opt);
  const auto c = iterate({p.u, p.v + h}, k, params, g, opt), d = iterate({p.u, p.v - h}, k, params, g, opt);
  return {(a.u - b.u) / (2 * h), (c.u - d.u) / (2 * h), (a.v - b.v) / (2 * h), (c.v - d.v) / (2 * h)};
}

double spectral_radius(const std::array<double, 4>& m) {
  const double tr = m[0] + m[3], det = m[0] * m[3] - m[1] * m[2];
  const std::complex<double> disc = std::sqrt(std::complex<double>(tr * tr / 4 - det));
  return std::max(std::abs(tr / 2 + disc), std::abs(tr / 2 - disc));
}

// Preimage along piece k, ignoring the small distortion of the local map.
double approximate_branch_inverse(const GlobalMapSpec& g, int k, double u) {
  const double U = g.u_reach, w = g.piece_hi[k] - g.piece_lo[k];
  return g.piece_lo[k] + w * (g.direction[k] * u + U) / (2 * U);
}

// u on Sigma- whose image along piece k lands at u_target for the given Y.
double branch_preimage(const LocalModelParams& params, const GlobalMapSpec& g, const IntegratorOptions& opt, int k,
                       double u_target, double y) {
  double lo = g.piece_lo[k] - 0.1, hi = g.piece_hi[k] + 0.1;
  const int d = g.direction[k];
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fu = must_map({mid, y}, params, g, opt).u;
    if ((fu - u_target) * d < 0) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::array<double, 4> poincare_jacobian(const Point2& p, const LocalModelParams& params, const GlobalMapSpec& g,
                                        const IntegratorOptions& opt) {
  return jacobian_k(p, 1, params, g, opt, 1e-6);
}

std::vector<Rect> symbol_rectangles(const LocalModelParams& params, const GlobalMapSpec& g,
                                    const IntegratorOptions& opt) {
  if (!(params.lambda > 0.0))
    throw Error(ErrorCode::InvalidArgument, "symbol rectangles are defined for lambda > 0 only");
  std::vector<Rect> out;
  for (std::size_t k = 0; k < g.heights.size(); ++k) {
    const int ki = static_cast<int>(k);
    const double a = branch_preimage(params, g, opt, ki, -1.0, 0.0), b = branch_preimage(params, g, opt, ki, 1.0, 0.0);
    out.push_back({std::min(a, b), std::max(a, b), -g.core_y, g.core_y});
  }
  return out;
}

Rect repelling_region(const GlobalMapSpec& g) { return {-2.0, -1.9, -g.box_y, g.box_y}; }
Rect attracting_region(const GlobalMapSpec& g) { return {-1.78, -1.3, -g.box_y, g.box_y}; }

PeriodicOrbitResult find_periodic(const LocalModelParams& params, const GlobalMapSpec& g, const std::vector<int>& word,
                                  const IntegratorOptions& opt) {
  if (!(params.lambda > 0.0)) throw Error(ErrorCode::InvalidArgument, "periodic orbits of the shift need lambda > 0");
  const std::size_t k = word.size();
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "empty itinerary");
  for (int s : word)
    if (s < 0 || static_cast<std::size_t>(s) >= g.heights.size())
      throw Error(ErrorCode::InvalidArgument, "itinerary symbol out of range");

  // seed every point of the cycle by iterating approximate inverse branches
  std::vector<Point2> pts(k);
  for (std::size_t start = 0; start < k; ++start) {
    double u = 0.0;
    for (int rep = 0; rep < 40; ++rep)
      for (std::size_t i = k; i-- > 0;) u = approximate_branch_inverse(g, word[(start + i) % k], u);
    pts[start] = {u, g.heights[word[(start + k - 1) % k]]};
  }

  // multiple shooting: unknowns p_0..p_{k-1}, residuals F(p_i) - p_{i+1}
  PeriodicOrbitResult res;
  res.word = word;
  const std::size_t dim = 2 * k;
  const double h = 1e-7;
  for (int it = 0; it < 30; ++it) {
    Eigen::VectorXd r(dim);
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(dim, dim);
    for (std::size_t i = 0; i < k; ++i) {
      const auto& x = pts[i];
      const auto fx = must_map(x, params, g, opt);
      const auto& nx = pts[(i + 1) % k];
      r[2 * i] = fx.u - nx.u;
      r[2 * i + 1] = fx.v - nx.v;
      const auto a = must_map({x.u + h, x.v}, params, g, opt), b = must_map({x.u - h, x.v}, params, g, opt);
      const auto c = must_map({x.u, x.v + h}, params, g, opt), d = must_map({x.u, x.v - h}, params, g, opt);
      J(2 * i, 2 * i) += (a.u - b.u) / (2 * h);
      J(2 * i, 2 * i + 1) += (c.u - d.u) / (2 * h);
      J(2 * i + 1, 2 * i) += (a.v - b.v) / (2 * h);
      J(2 * i + 1, 2 * i + 1) += (c.v - d.v) / (2 * h);
      const std::size_t j = (i + 1) % k;
      J(2 * i, 2 * j) -= 1.0;
      J(2 * i + 1, 2 * j + 1) -= 1.0;
    }
    const double rn = r.lpNorm<Eigen::Infinity>();
    res.newton_residuals.push_back(rn);
    if (rn < 1e-14 || (it > 0 && rn < 1e-10 && rn > 0.1 * res.newton_residuals[it - 1])) break;
    const Eigen::VectorXd step = J.partialPivLu().solve(r);
    if (!step.allFinite()) break;
    for (std::size_t i = 0; i < k; ++i) {
      pts[i].u -= step[2 * i];
      pts[i].v -= step[2 * i + 1];
    }
  }
  res.points = pts;
  double loop = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const auto fx = must_map(pts[i], params, g, opt);
    loop = std::max(loop, std::hypot(fx.u - pts[(i + 1) % k].u, fx.v - pts[(i + 1) % k].v));
  }
  res.residual = loop;
  if (!(res.residual <= 1e-8)) {
    std::ostringstream os;
    os << "Newton did not converge for itinerary of length " << k << " (residual " << res.residual << ")";
    throw Error(ErrorCode::NoConvergence, os.str());
  }
  const auto rects = symbol_rectangles(params, g, opt);
  res.itinerary_ok = true;
  for (std::size_t i = 0; i < k; ++i) res.itinerary_ok = res.itinerary_ok && rects[word[i]].contains(res.points[i]);
  return res;
}

std::vector<PeriodicOrbitResult> periodic_sweep(const LocalModelParams& params, const GlobalMapSpec& g, std::size_t k,
                                                const IntegratorOptions& opt, unsigned jobs) {
  const std::size_t n = g.heights.size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < k; ++i) total *= n;
  std::vector<PeriodicOrbitResult> out(total);
  parallel_for(total, jobs, [&](std::size_t idx) {
    std::vector<int> w(k);
    std::size_t x = idx;
    for (std::size_t i = k; i-- > 0;) {
      w[i] = static_cast<int>(x % n);
      x /= n;
    }
    out[idx] = find_periodic(params, g, w, opt);
  });
  return out;
}

CoveringReport check_coverings(const LocalModelParams& params, const GlobalMapSpec& g, const IntegratorOptions& opt) {
  CoveringReport rep;
  const std::size_t n = g.heights.size();
  std::vector<Rect> rects;
  if (params.lambda > 0.0) {
    rects = symbol_rectangles(params, g, opt);
  } else {
    // the rectangles of the reference chart, on which the map is now tested
    LocalModelParams ref = params;
    ref.lambda = g.chart_lambda;
    rects = symbol_rectangles(ref, g, opt);
  }
  constexpr int kEdge = 17, kMid = 200;
  for (std::size_t from = 0; from < n; ++from) {
    const auto& R = rects[from];
    std::vector<Point2> left, right, mid, top;
    bool defined = true;
    auto img = [&](Point2 p) {
      auto q = poincare_map(p, params, g, opt);
      if (!q) defined = false;
      return q.value_or(Point2{0, 0});
    };
    for (int i = 0; i <= kEdge; ++i) {
      const double y = R.y0 + (R.y1 - R.y0) * i / kEdge;
      left.push_back(img({R.u0, y}));
      right.push_back(img({R.u1, y}));
    }
    for (int i = 0; i <= kMid; ++i) {
      const double u = R.u0 + (R.u1 - R.u0) * i / kMid;
      mid.push_back(img({u, 0.0}));
      top.push_back(img({u, R.y0}));
      top.push_back(img({u, R.y1}));
    }
    for (std::size_t to = 0; to < n; ++to) {
      ++rep.relations_checked;
      const auto& T = rects[to];
      bool ok = defined;
      auto all_of = [&](const std::vector<Point2>& v, auto pred) {
        return std::all_of(v.begin(), v.end(), pred);
      };
      auto inside_y = [&](const Point2& q) { return q.v > T.y0 && q.v < T.y1; };
      ok = ok && all_of(top, inside_y) && all_of(mid, inside_y);
      const bool lr = all_of(left, [&](const Point2& q) { return q.u < T.u0; }) &&
                      all_of(right, [&](const Point2& q) { return q.u > T.u1; });
      const bool rl = all_of(left, [&](const Point2& q) { return q.u > T.u1; }) &&
                      all_of(right, [&](const Point2& q) { return q.u < T.u0; });
      ok = ok && (lr || rl);
      // the image of the mid line runs from one side of T to the other inside T's height
      bool crossed = false;
      if (ok) {
        int state = 0;  // -1 left of T, +1 right of T
        for (const auto& q : mid) {
          const int side = q.u < T.u0 ? -1 : q.u > T.u1 ? 1 : 0;
          if (side != 0) {
            if (state != 0 && side != state) crossed = true;
            state = side;
          }
        }
      }
      if (!(ok && crossed)) rep.failures.push_back({static_cast<int>(from), static_cast<int>(to)});
    }
  }
  rep.all_hold = rep.failures.empty();
  return rep;
}

FullShiftReport verify_full_shift(const LocalModelParams& params, const GlobalMapSpec& g, std::size_t k_max,
                                  const IntegratorOptions& opt, unsigned jobs) {
  FullShiftReport rep;
  rep.coverings = check_coverings(params, g, opt);
  if (!rep.coverings.all_hold) {
    rep.itineraries_ok = false;
    return rep;
  }
  IntegratorOptions half = opt;
  half.tolerance = opt.tolerance / 2;
  rep.itineraries_ok = true;
  for (std::size_t k = 1; k <= k_max; ++k) {
    const auto orbits = periodic_sweep(params, g, k, opt, jobs);
    const auto refined = periodic_sweep(params, g, k, half, jobs);
    std::vector<Point2> distinct;
    for (std::size_t i = 0; i < orbits.size(); ++i) {
      const auto& o = orbits[i];
      rep.max_residual = std::max(rep.max_residual, o.residual);
      rep.itineraries_ok = rep.itineraries_ok && o.itinerary_ok;
      const auto& p = o.points.front();
      const auto& q = refined[i].points.front();
      rep.tolerance_drift = std::max(rep.tolerance_drift, std::max(std::abs(p.u - q.u), std::abs(p.v - q.v)));
      bool seen = false;
      for (const auto& d : distinct) seen = seen || std::hypot(d.u - p.u, d.v - p.v) < 1e-9;
      if (!seen) distinct.push_back(p);
    }
    rep.counts.push_back(distinct.size());
  }
  return rep;
}

MorseSmaleReport verify_morse_smale(const LocalModelParams& params, const GlobalMapSpec& g, std::size_t samples,
                                    std::uint64_t seed, const IntegratorOptions& opt) {
  if (!(params.lambda < 0.0)) throw Error(ErrorCode::InvalidArgument, "the Morse-Smale check needs lambda < 0");
  MorseSmaleReport rep;
  rep.equilibria = equilibria(params);
  rep.seed = seed;
  rep.samples = samples;

  const auto D = attracting_region(g);
  Point2 p{0.5 * (D.u0 + D.u1), 0.0};
  for (int i = 0; i < 20; ++i) p = must_map(p, params, g, opt);
  for (int it = 0; it < 10; ++it) {
    const auto q = must_map(p, params, g, opt);
    auto J = poincare_jacobian(p, params, g, opt);
    J[0] -= 1.0;
    J[3] -= 1.0;
    const double gu = q.u - p.u, gv = q.v - p.v;
    const double det = J[0] * J[3] - J[1] * J[2];
    if (std::hypot(gu, gv) < 1e-14 || det == 0.0) break;
    p.u -= (J[3] * gu - J[1] * gv) / det;
    p.v -= (-J[2] * gu + J[0] * gv) / det;
  }
  rep.attractor = p;
  const auto q = must_map(p, params, g, opt);
  rep.attractor_residual = std::hypot(q.u - p.u, q.v - p.v);
  rep.spectral_radius = spectral_radius(poincare_jacobian(p, params, g, opt));
  rep.attractor_in_d = D.contains(p);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> du(-g.box_u, g.box_u), dy(-g.box_y, g.box_y);
  for (std::size_t i = 0; i < samples; ++i) {
    Point2 x{du(rng), dy(rng)};
    bool done = false;
    for (int it = 0; it < 60 && !done; ++it) {
      auto nx = poincare_map(x, params, g, opt);
      if (!nx) {
        ++rep.to_equilibrium;
        rep.nonconvergent.push_back(i);
        done = true;
        break;
      }
      x = *nx;
      if (std::hypot(x.u - p.u, x.v - p.v) < 1e-6) {
        ++rep.converged;
        done = true;
      }
    }
    if (!done) rep.nonconvergent.push_back(i);
  }
  return rep;
}

ExperimentConfig parse_experiment_config(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto e = line.find_last_not_of(" \t\r");
    line = line.substr(b, e - b + 1);
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": expected key=value");
    auto trim = [](std::string s) {
      const auto x = s.find_first_not_of(" \t"), y = s.find_last_not_of(" \t");
      return x == std::string::npos ? std::string() : s.substr(x, y - x + 1);
    };
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != value.size() || value.empty())
      throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": '" + value + "' is not a number");
    if (key == "alpha") cfg.params.alpha = v;
    else if (key == "beta") cfg.params.beta = v;
    else if (key == "mu") cfg.params.mu = v;
    else if (key == "nu") cfg.params.nu = v;
    else if (key == "lambda") cfg.params.lambda = v;
    else if (key == "theta_bar") cfg.params.theta_bar = v;
    else if (key == "tolerance") cfg.integrator.tolerance = v;
    else if (key == "max_steps") cfg.integrator.max_steps = static_cast<std::size_t>(v);
    else if (key == "equilibrium_radius") cfg.integrator.equilibrium_radius = v;
    else if (key == "k_max") cfg.k_max = static_cast<std::size_t>(v);
    else if (key == "samples") cfg.samples = static_cast<std::size_t>(v);
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(v);
    else throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": unknown key '" + key + "'");
  }
  require_valid(cfg.params);
  return cfg;
}

}  // namespace knotflow
