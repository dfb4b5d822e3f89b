#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include <boost/numeric/odeint.hpp>

#include "knotflow/error.hpp"
#include "knotflow/shilnikov.hpp"

namespace knotflow {

namespace odeint = boost::numeric::odeint;

namespace {

using State = std::array<double, 1>;
using Stepper = odeint::runge_kutta_fehlberg78<State>;

// c * exp(r) without the 0 * inf trap on the invariant axes
double along(double c, double r) { return c == 0.0 ? 0.0 : c * std::exp(r); }

// theta' along the trajectory through (x0, y0) at t = 0; x and y are the exact
// exponentials of the linear part.
struct ThetaField {
  const LocalModelParams& p;
  double x0, y0;
  double direction;  // +1 forward, -1 backward in time

  void operator()(const State& s, State& ds, double t) const {
    const double x = along(x0, p.alpha * direction * t), y = along(y0, -p.beta * direction * t);
    ds[0] = direction * (p.lambda + s[0] * s[0] + p.mu * x * x + p.nu * y * y);
  }
};

// Advances theta from start to target (crossing in the sign of `direction`),
// locating the crossing by secant refinement of the last step size.
LocalResult run(const SectionPoint& start, double theta_start, double theta_target, double direction,
                const LocalModelParams& p, const IntegratorOptions& opt, bool keep_trace) {
  require_valid(p);
  ThetaField field{p, start.x, start.y, direction};
  auto controlled = odeint::make_controlled(opt.tolerance * 1e-3, opt.tolerance, Stepper{});
  Stepper single;
  const auto eq = equilibria(p);

  LocalResult res;
  State s{theta_start};
  double t = 0.0, dt = 1e-3;
  if (keep_trace) res.trace.push_back({0.0, theta_start});
  auto beyond = [&](double th) { return direction > 0 ? th >= theta_target : th <= theta_target; };

  while (res.steps < opt.max_steps) {
    State prev = s;
    const double t_prev = t;
    if (controlled.try_step(field, s, t, dt) != odeint::success) continue;
    ++res.steps;
    if (beyond(s[0])) {
      // secant on h in [0, t - t_prev], f(h) = theta(t_prev + h) - target
      double h0 = 0.0, f0 = prev[0] - theta_target;
      double h1 = t - t_prev, f1 = s[0] - theta_target;
      for (int it = 0; it < 60 && std::abs(f1) > 1e-15; ++it) {
        double h = h1 - f1 * (h1 - h0) / (f1 - f0);
        if (!(h > 0.0) || h > t - t_prev) h = 0.5 * (h0 + h1);
        State q = prev;
        single.do_step(field, q, t_prev, h);
        h0 = h1;
        f0 = f1;
        h1 = h;
        f1 = q[0] - theta_target;
      }
      res.time = t_prev + h1;
      res.theta = theta_target;
      res.exit = {along(start.x, p.alpha * direction * res.time), along(start.y, -p.beta * direction * res.time)};
      if (keep_trace) res.trace.push_back({res.time, theta_target});
      return res;
    }
    if (keep_trace) res.trace.push_back({t, s[0]});
    const double x = along(start.x, p.alpha * direction * t), y = along(start.y, -p.beta * direction * t);
    for (double e : eq) {
      if (std::abs(x) < opt.equilibrium_radius && std::abs(y) < opt.equilibrium_radius &&
          std::abs(s[0] - e) < opt.equilibrium_radius) {
        res.outcome = LocalOutcome::ConvergedToEquilibrium;
        res.time = t;
        res.theta = s[0];
        res.exit = {x, y};
        return res;
      }
    }
  }
  std::ostringstream os;
  os << "local integration exceeded " << opt.max_steps << " steps from (" << start.x << ", " << start.y << ")";
  throw Error(ErrorCode::StepBudgetExceeded, os.str());
}

}  // namespace

void require_valid(const LocalModelParams& p) {
  auto finite_pos = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!finite_pos(p.alpha) || !finite_pos(p.beta) || !finite_pos(p.mu) || !finite_pos(p.nu) ||
      !finite_pos(p.theta_bar) || !std::isfinite(p.lambda))
    throw Error(ErrorCode::InvalidArgument, "alpha, beta, mu, nu and theta_bar must be positive and finite");
}

std::vector<double> equilibria(const LocalModelParams& p) {
  if (p.lambda > 0.0) return {};
  if (p.lambda == 0.0) return {0.0};
  const double r = std::sqrt(-p.lambda);
  return {-r, r};
}

double axis_time(const LocalModelParams& p, double theta) {
  if (!(p.lambda > 0.0)) throw Error(ErrorCode::InvalidArgument, "axis transit time needs lambda > 0");
  const double r = std::sqrt(p.lambda);
  return (std::atan(theta / r) - std::atan(-p.theta_bar / r)) / r;
}

LocalResult integrate_local(const SectionPoint& p, const LocalModelParams& params, const IntegratorOptions& opt,
                            bool keep_trace) {
  if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw Error(ErrorCode::InvalidArgument, "section point not finite");
  return run(p, -params.theta_bar, params.theta_bar, +1.0, params, opt, keep_trace);
}

LocalResult integrate_local_backward(const SectionPoint& p, const LocalModelParams& params,
                                     const IntegratorOptions& opt) {
  if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw Error(ErrorCode::InvalidArgument, "section point not finite");
  return run(p, params.theta_bar, -params.theta_bar, -1.0, params, opt, false);
}

std::vector<ManifoldSample> unstable_manifold_graph(const LocalModelParams& params, double x_max, std::size_t samples,
                                                    double tolerance, double seed_x) {
  require_valid(params);
  if (!(x_max > 0.0) || samples < 2) throw Error(ErrorCode::InvalidArgument, "need x_max > 0 and at least 2 samples");
  const double a = params.mu / (2.0 * params.alpha);
  const double c = a * a / (4.0 * params.alpha);
  // Series H = a x^2 + c x^4 + O(x^6); the seed must sit where the dropped
  // terms are far below the tolerance.
  if (!(seed_x > 0.0) || seed_x >= x_max || c * std::pow(seed_x, 6) / a > tolerance * 1e-2)
    throw Error(ErrorCode::SeedingFailure, "series seed for H is not accurate at x = " + std::to_string(seed_x));

  auto rhs = [&](const State& s, State& ds, double x) {
    ds[0] = (s[0] * s[0] + params.mu * x * x) / (params.alpha * x);
  };
  auto solve_to = [&](double x_end) {
    State s{a * seed_x * seed_x + c * std::pow(seed_x, 4)};
    if (x_end <= seed_x) return a * x_end * x_end + c * std::pow(x_end, 4);
    odeint::integrate_adaptive(odeint::make_controlled(std::max(tolerance * 1e-3, 1e-15), std::max(tolerance * 1e-3, 1e-15), Stepper{}), rhs, s, seed_x,
                               x_end, (x_end - seed_x) / 64.0);
    return s[0];
  };

  std::vector<ManifoldSample> out;
  out.reserve(samples);
  const double h = 1e-3 * x_max;
  for (std::size_t i = 1; i <= samples; ++i) {
    ManifoldSample m;
    m.x = x_max * static_cast<double>(i) / static_cast<double>(samples);
    m.h = solve_to(m.x);
    // five-point central derivative; the series below the seed
    double dh;
    if (m.x - 2 * h > seed_x) {
      dh = (-solve_to(m.x + 2 * h) + 8 * solve_to(m.x + h) - 8 * solve_to(m.x - h) + solve_to(m.x - 2 * h)) / (12 * h);
    } else {
      dh = 2 * a * m.x + 4 * c * m.x * m.x * m.x;
    }
    m.residual = std::abs(params.alpha * m.x * dh - m.h * m.h - params.mu * m.x * m.x);
    out.push_back(m);
  }
  return out;
}

}  // namespace knotflow
