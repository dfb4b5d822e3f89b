#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "knotflow/error.hpp"
#include "knotflow/invariants.hpp"
#include "knotflow/shilnikov.hpp"

namespace knotflow {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMajor = 4.0;  // solid torus core radius
constexpr double kScaleX = 0.4;  // display units per unit of u or s
constexpr double kScaleZ = 0.8;  // display units per unit of Y
constexpr double kSquash = 0.02;

// Fractions of one turn spent in each stage of a passage.
constexpr double kLocalEnd = 0.30, kSquashEnd = 0.40, kTwistEnd = 0.65, kDepthEnd = 0.75;

Vec3 embed(double phi, double X, double Z) {
  return {(kMajor + X) * std::cos(phi), (kMajor + X) * std::sin(phi), Z};
}

// Ribbon direction (X, Z) in the section plane, turned to ambient space.
Vec3 embed_dir(double phi, double dx, double dz) { return {dx * std::cos(phi), dx * std::sin(phi), dz}; }

int half_twists_of(const GlobalMapSpec& g, std::size_t k) {
  const int tau = g.twists[k];
  return (tau % 2 != 0) ? tau : 2 * tau;
}

double smooth(double x) { return x * x * (3 - 2 * x); }

struct Sample {
  double phi, X, Z, rx, rz;
};

// theta levels of the local passage, with t(theta) by cubic Hermite
// interpolation of the accepted steps (dt/dtheta = 1/theta').
std::vector<double> times_at(const LocalResult& r, const SectionPoint& p0, const LocalModelParams& params,
                             const std::vector<double>& levels) {
  auto rate = [&](double t, double th) {
    const double x = p0.x == 0.0 ? 0.0 : p0.x * std::exp(params.alpha * t);
    const double y = p0.y == 0.0 ? 0.0 : p0.y * std::exp(-params.beta * t);
    return params.lambda + th * th + params.mu * x * x + params.nu * y * y;
  };
  std::vector<double> out;
  std::size_t i = 0;
  for (double th : levels) {
    while (i + 2 < r.trace.size() && r.trace[i + 1][1] < th) ++i;
    const auto& a = r.trace[i];
    const auto& b = r.trace[std::min(i + 1, r.trace.size() - 1)];
    const double h = b[1] - a[1];
    if (h <= 0.0) {
      out.push_back(a[0]);
      continue;
    }
    const double s = std::clamp((th - a[1]) / h, 0.0, 1.0);
    const double ma = h / rate(a[0], a[1]), mb = h / rate(b[0], b[1]);
    const double s2 = s * s, s3 = s2 * s;
    out.push_back((2 * s3 - 3 * s2 + 1) * a[0] + (s3 - 2 * s2 + s) * ma + (-2 * s3 + 3 * s2) * b[0] + (s3 - s2) * mb);
  }
  return out;
}

}  // namespace

SpatialOrbit realize_orbit(const PeriodicOrbitResult& orbit, const LocalModelParams& params, const GlobalMapSpec& g,
                           const IntegratorOptions& opt, std::size_t m) {
  if (!(params.lambda > 0.0)) throw Error(ErrorCode::InvalidArgument, "orbit realization needs lambda > 0");
  if (orbit.points.empty() || orbit.points.size() != orbit.word.size())
    throw Error(ErrorCode::InvalidArgument, "periodic orbit has no iterates");
  if (m < 8) m = 8;
  const auto ch = chart_of(params, g);
  const double t_ratio = ch.t0 / axis_time(params, params.theta_bar);

  SpatialOrbit out;
  int orient = 1;  // ribbon orientation relative to +X on entering Sigma-
  for (std::size_t i = 0; i < orbit.points.size(); ++i) {
    const Point2 p = orbit.points[i];
    const int k = orbit.word[i];
    const SectionPoint p0{p.u * ch.x_scale, p.v * ch.y_in};
    const auto lr = integrate_local(p0, params, opt, true);
    if (lr.outcome != LocalOutcome::Exited) throw Error(ErrorCode::NoConvergence, "periodic point fell into U");
    const Point2 sp{lr.exit.x / ch.x_out, lr.exit.y / ch.y_out};
    if (sp.u < g.piece_lo[k] || sp.u > g.piece_hi[k])
      throw Error(ErrorCode::InvalidArgument, "orbit leaves its symbol strip on Sigma+");
    const Point2 target = global_map(g, sp);

    std::vector<Sample> ss;
    // local passage, sampled at common theta levels
    std::vector<double> levels;
    for (std::size_t j = 0; j < m; ++j)
      levels.push_back(-params.theta_bar + 2 * params.theta_bar * static_cast<double>(j) / static_cast<double>(m));
    const auto ts = times_at(lr, p0, params, levels);
    for (std::size_t j = 0; j < m; ++j) {
      const double th = levels[j], t = ts[j];
      const double t0 = (j == 0 ? 0.0 : axis_time(params, th)) * t_ratio;
      const double x = p0.x * std::exp(params.alpha * t), y = p0.y * std::exp(-params.beta * t);
      const double X = kScaleX * x / (ch.x_scale * std::exp(params.alpha * t0));
      const double Z = -kScaleZ * y / (ch.y_in * std::exp(-params.beta * t0));
      ss.push_back({2 * kPi * kLocalEnd * static_cast<double>(j) / static_cast<double>(m), X, Z, double(orient), 0.0});
    }
    const double X1 = kScaleX * sp.u, Z1 = -kScaleZ * sp.v;
    const double Xc = kScaleX * 0.5 * (g.piece_lo[k] + g.piece_hi[k]);
    const int h = half_twists_of(g, static_cast<std::size_t>(k));
    auto stage = [&](double f0, double f1, std::size_t count, auto&& at) {
      for (std::size_t j = 0; j < count; ++j) {
        const double q = static_cast<double>(j) / static_cast<double>(count);
        auto smp = at(q);
        smp.phi = 2 * kPi * (f0 + (f1 - f0) * q);
        ss.push_back(smp);
      }
    };
    // squash the transverse coordinate
    stage(kLocalEnd, kSquashEnd, m / 4, [&](double q) {
      return Sample{0, X1, Z1 * (1 - (1 - kSquash) * smooth(q)), double(orient), 0.0};
    });
    // rigid turn of the strip about its centre line by pi * h
    const double Zs = Z1 * kSquash;
    auto turned = [&](double q) {
      const double w = kPi * h * smooth(q), c = std::cos(w), s = std::sin(w);
      const double dx = X1 - Xc, dz = Zs;
      return Sample{0, Xc + dx * c + dz * s, -dx * s + dz * c, orient * c, -orient * s};
    };
    stage(kSquashEnd, kTwistEnd, m, turned);
    const auto end_turn = turned(1.0);
    const double Zt = -kScaleZ * target.v, Xt = kScaleX * target.u;
    const double rx_end = end_turn.rx;
    stage(kTwistEnd, kDepthEnd, m / 4, [&](double q) {
      const double a = smooth(q);
      return Sample{0, end_turn.X, end_turn.Z + (Zt - end_turn.Z) * a, rx_end, 0.0};
    });
    stage(kDepthEnd, 1.0, m, [&](double q) {
      const double a = smooth(q);
      return Sample{0, end_turn.X + (Xt - end_turn.X) * a, Zt, rx_end, 0.0};
    });
    for (const auto& s : ss) {
      out.curve.push_back(embed(s.phi, s.X, s.Z));
      out.ribbon.push_back(embed_dir(s.phi, s.rx, s.rz));
    }
    out.ribbon_half_turns += h;
    orient = rx_end > 0 ? 1 : -1;
  }
  return out;
}

namespace {

struct View {
  Vec3 v, e1, e2;
};

View make_view(double a, double b) {
  auto norm = [](Vec3 p) {
    const double l = std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z);
    return Vec3{p.x / l, p.y / l, p.z / l};
  };
  const Vec3 v = norm({a, b, 1.0});
  const double d = v.x;
  const Vec3 e1 = norm({1 - d * v.x, -d * v.y, -d * v.z});
  const Vec3 e2{v.y * e1.z - v.z * e1.y, v.z * e1.x - v.x * e1.z, v.x * e1.y - v.y * e1.x};
  return {v, e1, e2};
}

double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

struct Seg {
  std::size_t comp, index;
  double ax, ay, bx, by, da, db;  // projected ends and depths
};

struct RawCrossing {
  std::size_t over_comp, under_comp;
  double over_pos, under_pos;  // segment index + parameter
  int sign;
};

PlanarDiagram project(const std::vector<std::vector<Vec3>>& comps, const View& view) {
  std::vector<Seg> segs;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    const auto& pts = comps[c];
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const auto& a = pts[i];
      const auto& b = pts[(i + 1) % pts.size()];
      segs.push_back({c, i, dot(a, view.e1), dot(a, view.e2), dot(b, view.e1), dot(b, view.e2), dot(a, view.v),
                      dot(b, view.v)});
    }
  }
  std::vector<std::size_t> order(segs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  auto lo = [&](const Seg& s) { return std::min(s.ax, s.bx); };
  auto hi = [&](const Seg& s) { return std::max(s.ax, s.bx); };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return lo(segs[a]) < lo(segs[b]); });

  std::vector<RawCrossing> raw;
  const double eps = 1e-10;
  for (std::size_t oi = 0; oi < order.size(); ++oi) {
    const auto& s = segs[order[oi]];
    const double s_hi = hi(s);
    for (std::size_t oj = oi + 1; oj < order.size(); ++oj) {
      const auto& r = segs[order[oj]];
      if (lo(r) > s_hi) break;
      if (s.comp == r.comp) {
        const std::size_t n = comps[s.comp].size();
        if ((s.index + 1) % n == r.index || (r.index + 1) % n == s.index || s.index == r.index) continue;
      }
      const double dxs = s.bx - s.ax, dys = s.by - s.ay, dxr = r.bx - r.ax, dyr = r.by - r.ay;
      const double den = dxs * dyr - dys * dxr;
      const double ex = r.ax - s.ax, ey = r.ay - s.ay;
      if (std::abs(den) < 1e-300) continue;
      const double a = (ex * dyr - ey * dxr) / den, b = (ex * dys - ey * dxs) / den;
      if (a < -eps || a > 1 + eps || b < -eps || b > 1 + eps) continue;
      const double scale = std::hypot(dxs, dys) * std::hypot(dxr, dyr);
      if (a < eps || a > 1 - eps || b < eps || b > 1 - eps || std::abs(den) < 1e-9 * scale)
        throw Error(ErrorCode::DegenerateProjection, "projection passes through a vertex or a tangency");
      const double depth_s = s.da + a * (s.db - s.da), depth_r = r.da + b * (r.db - r.da);
      if (std::abs(depth_s - depth_r) < 1e-12)
        throw Error(ErrorCode::DegenerateProjection, "two strands meet in space along the view direction");
      const bool s_over = depth_s > depth_r;
      const auto& ov = s_over ? s : r;
      const auto& un = s_over ? r : s;
      const double cr = (ov.bx - ov.ax) * (un.by - un.ay) - (ov.by - ov.ay) * (un.bx - un.ax);
      raw.push_back({ov.comp, un.comp, static_cast<double>(ov.index) + (s_over ? a : b),
                     static_cast<double>(un.index) + (s_over ? b : a), cr > 0 ? 1 : -1});
    }
  }

  PlanarDiagram d;
  d.components.resize(comps.size());
  std::vector<std::vector<std::pair<double, Visit>>> events(comps.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    DiagramCrossing x;
    x.sign = raw[i].sign;
    x.over_component = raw[i].over_comp;
    x.under_component = raw[i].under_comp;
    d.crossings.push_back(x);
    events[raw[i].over_comp].push_back({raw[i].over_pos, Visit{i, true}});
    events[raw[i].under_comp].push_back({raw[i].under_pos, Visit{i, false}});
  }
  for (std::size_t c = 0; c < comps.size(); ++c) {
    auto& ev = events[c];
    std::sort(ev.begin(), ev.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    d.components[c].label = "c" + std::to_string(c);
    for (std::size_t j = 0; j < ev.size(); ++j) {
      const auto& v = ev[j].second;
      d.components[c].visits.push_back(v);
      if (v.over) d.crossings[v.crossing].over_passage = j;
      else d.crossings[v.crossing].under_passage = j;
    }
  }
  return d;
}

template <class F>
auto with_generic_view(F&& f) {
  static const double tilts[][2] = {{0.013, 0.021}, {-0.017, 0.011}, {0.023, -0.019}, {0.031, 0.007}, {-0.009, -0.027}};
  for (std::size_t i = 0;; ++i) {
    try {
      return f(make_view(tilts[i][0], tilts[i][1]));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DegenerateProjection || i + 1 == std::size(tilts)) throw;
    }
  }
}

}  // namespace

ExtractedKnot knot_from_orbit(const SpatialOrbit& orbit) {
  if (orbit.curve.size() < 3 || orbit.ribbon.size() != orbit.curve.size())
    throw Error(ErrorCode::InvalidArgument, "spatial orbit needs a closed polyline with ribbon directions");
  ExtractedKnot k;
  k.diagram = with_generic_view([&](const View& v) { return project({orbit.curve}, v); });
  k.alexander = alexander_from_gauss(k.diagram).normalized();

  // push-off along the ribbon, far closer than any two strands
  const double eps = 1e-6;
  std::vector<Vec3> plus, minus;
  for (std::size_t i = 0; i < orbit.curve.size(); ++i) {
    const auto& c = orbit.curve[i];
    const auto& r = orbit.ribbon[i];
    plus.push_back({c.x + eps * r.x, c.y + eps * r.y, c.z + eps * r.z});
    minus.push_back({c.x - eps * r.x, c.y - eps * r.y, c.z - eps * r.z});
  }
  std::vector<Vec3> partner = plus;
  if (orbit.ribbon_half_turns % 2 != 0) partner.insert(partner.end(), minus.begin(), minus.end());
  const auto pair = with_generic_view([&](const View& v) { return project({orbit.curve, partner}, v); });
  k.self_linking = linking_number(pair, 0, 1);
  return k;
}

CrosscheckResult crosscheck(const PeriodicOrbitResult& orbit, const LocalModelParams& params, const GlobalMapSpec& g,
                            const Template& pretemplate, const IntegratorOptions& opt) {
  CrosscheckResult res;
  std::vector<std::size_t> strips;
  for (int s : orbit.word) {
    const std::string id = "g" + std::to_string(s + 1);
    std::size_t idx = pretemplate.strips.size();
    for (std::size_t i = 0; i < pretemplate.strips.size(); ++i)
      if (pretemplate.strips[i].id == id) idx = i;
    if (idx == pretemplate.strips.size()) throw Error(ErrorCode::InvalidArgument, "pretemplate has no strip " + id);
    strips.push_back(idx);
  }
  const Word w(strips);
  res.word = format_word(pretemplate, w);
  res.template_alexander = alexander(orbits_to_diagram(pretemplate, std::vector<Word>{w})).normalized();
  res.template_twist = twist_of_orbit(pretemplate, w);
  const auto knot = knot_from_orbit(realize_orbit(orbit, params, g, opt));
  res.ode_alexander = knot.alexander;
  res.ode_twist = knot.self_linking;
  res.match = res.ode_alexander == res.template_alexander && res.ode_twist == res.template_twist;
  return res;
}

}  // namespace knotflow
