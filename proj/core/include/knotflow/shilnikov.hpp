#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "knotflow/diagram.hpp"
#include "knotflow/laurent.hpp"
#include "knotflow/pleated.hpp"

namespace knotflow {

// Local saddle-node model near p = (0, 0, 0):
//   x' = alpha x,  y' = -beta y,  theta' = lambda + theta^2 + mu x^2 + nu y^2
// with sections Sigma-/Sigma+ at theta = -theta_bar / +theta_bar.
struct LocalModelParams {
  double alpha = 1.0;
  double beta = 1.0;
  double mu = 1.0;
  double nu = 1.0;
  double lambda = 0.01;
  double theta_bar = 0.5;
};
void require_valid(const LocalModelParams& p);

struct IntegratorOptions {
  double tolerance = 1e-12;
  std::size_t max_steps = 1'000'000;
  double equilibrium_radius = 1e-6;
};

struct SectionPoint {
  double x = 0.0;
  double y = 0.0;
};

enum class LocalOutcome { Exited, ConvergedToEquilibrium };

struct LocalResult {
  LocalOutcome outcome = LocalOutcome::Exited;
  SectionPoint exit;          // on Sigma+ when Exited
  double time = 0.0;          // transit time, or time the ball was entered
  double theta = 0.0;         // final theta
  std::size_t steps = 0;
  // (t, theta) at every accepted step, when requested
  std::vector<std::array<double, 2>> trace;
};

// Flows a point of Sigma- through the local region.  Throws StepBudgetExceeded.
LocalResult integrate_local(const SectionPoint& p, const LocalModelParams& params, const IntegratorOptions& opt = {},
                            bool keep_trace = false);
// Same, integrating backwards in time from a point of Sigma+ to Sigma-.
LocalResult integrate_local_backward(const SectionPoint& p, const LocalModelParams& params,
                                     const IntegratorOptions& opt = {});

// Time the axis point (0, 0, -theta_bar) needs to reach theta (lambda > 0).
double axis_time(const LocalModelParams& params, double theta);

// theta-equilibria of the local model: -sqrt(-lambda), +sqrt(-lambda) for
// lambda < 0, the single point 0 for lambda = 0, none for lambda > 0.
std::vector<double> equilibria(const LocalModelParams& params);

// Graph theta = H(x) of the unstable manifold at lambda = 0, solving
// alpha x H' = H^2 + mu x^2 from the series seed H = a x^2 + a^2 x^4 / (4 alpha).
struct ManifoldSample {
  double x = 0.0;
  double h = 0.0;
  double residual = 0.0;  // |alpha x H' - H^2 - mu x^2| with H' from finite differences
};
std::vector<ManifoldSample> unstable_manifold_graph(const LocalModelParams& params, double x_max, std::size_t samples,
                                                    double tolerance = 1e-12, double seed_x = 1e-3);

// Closed-form double-horseshoe global map in normalized section coordinates.
// Sigma- points are (u, Y) with x = u * x_scale and y = Y * y_scale; Sigma+
// points are (s, Yp) with x = s * x_out and y = Yp * y_scale * exp(-beta T0),
// where T0 is the axis transit time at the running lambda (at chart_lambda when
// lambda <= 0).
struct GlobalMapSpec {
  PleatingSignature pleating;
  TwistSignature twists;
  double x_out = 0.02;
  double y_scale = 0.05;
  double chart_lambda = 0.01;
  double u_reach = 1.2;       // straight pieces run over |u| <= u_reach
  double height_step = 0.2;   // spacing of the piece heights in Y
  double normal_gain = 0.05;  // Y-contraction along each piece
  double box_u = 2.2;         // Sigma- domain |u| <= box_u
  double box_y = 0.6;         // Sigma- domain |Y| <= box_y
  double core_y = 0.45;       // symbol rectangles live in |Y| <= core_y

  // Derived layout, filled by make_global_map.
  std::vector<double> piece_lo, piece_hi;  // s-range of each straight piece
  std::vector<double> heights;             // Y of each piece
  std::vector<int> direction;              // +1 when u increases with s
};

// The model of the canonical example: n = 4, order (1,2,4,3), sides RLR,
// tau (0,1,0,-1).
GlobalMapSpec canonical_global_map();
GlobalMapSpec make_global_map(const PleatingSignature& p, const TwistSignature& tau);

struct Chart {
  double x_scale = 0.0;
  double x_out = 0.0;
  double y_in = 0.0;   // physical y per unit Y on Sigma-
  double y_out = 0.0;  // physical y per unit Yp on Sigma+
  double t0 = 0.0;     // reference axis transit time
};
Chart chart_of(const LocalModelParams& params, const GlobalMapSpec& g);

struct Point2 {
  double u = 0.0;
  double v = 0.0;
};

// Sigma+ (s, Yp) to Sigma- (u, Y).
Point2 global_map(const GlobalMapSpec& g, const Point2& splus);
// Inverse on the straight pieces and the repelling end; nullopt elsewhere.
std::optional<Point2> global_map_inverse(const GlobalMapSpec& g, const Point2& sminus);

// F = F_gl o F_lc on normalized Sigma- coordinates; nullopt when the orbit
// converges to an equilibrium inside U.
std::optional<Point2> poincare_map(const Point2& p, const LocalModelParams& params, const GlobalMapSpec& g,
                                   const IntegratorOptions& opt = {});
std::optional<Point2> poincare_map_inverse(const Point2& p, const LocalModelParams& params, const GlobalMapSpec& g,
                                           const IntegratorOptions& opt = {});
// Central-difference Jacobian of F.
std::array<double, 4> poincare_jacobian(const Point2& p, const LocalModelParams& params, const GlobalMapSpec& g,
                                        const IntegratorOptions& opt = {});

struct Rect {
  double u0 = 0, u1 = 0, y0 = 0, y1 = 0;
  bool contains(const Point2& p) const { return p.u >= u0 && p.u <= u1 && p.v >= y0 && p.v <= y1; }
};
// Symbol rectangles (one per straight piece), plus the repelling region A and
// the attracting region D.
std::vector<Rect> symbol_rectangles(const LocalModelParams& params, const GlobalMapSpec& g,
                                    const IntegratorOptions& opt = {});
Rect repelling_region(const GlobalMapSpec& g);
Rect attracting_region(const GlobalMapSpec& g);

struct PeriodicOrbitResult {
  std::vector<int> word;  // 0-based symbols
  std::vector<Point2> points;  // F-iterates, points[i+1] = F(points[i])
  double residual = 0.0;       // max |F(points[i]) - points[i+1]|, cyclically
  std::vector<double> newton_residuals;
  bool itinerary_ok = false;
};

// Newton on F^k = id by multiple shooting over the whole cycle, seeded by
// iterating approximate inverse branches. Throws NoConvergence.
PeriodicOrbitResult find_periodic(const LocalModelParams& params, const GlobalMapSpec& g, const std::vector<int>& word,
                                  const IntegratorOptions& opt = {});
// All points of period dividing k, one Newton solve per word of length k.
std::vector<PeriodicOrbitResult> periodic_sweep(const LocalModelParams& params, const GlobalMapSpec& g, std::size_t k,
                                                const IntegratorOptions& opt = {}, unsigned jobs = 1);

struct CoveringReport {
  bool all_hold = false;
  std::vector<std::array<int, 2>> failures;  // (from, to) pairs
  std::size_t relations_checked = 0;
};
CoveringReport check_coverings(const LocalModelParams& params, const GlobalMapSpec& g, const IntegratorOptions& opt = {});

struct FullShiftReport {
  CoveringReport coverings;
  std::vector<std::size_t> counts;  // distinct periodic points for k = 1..k_max
  double max_residual = 0.0;
  bool itineraries_ok = false;
  double tolerance_drift = 0.0;  // max coordinate change under tolerance halving
};
FullShiftReport verify_full_shift(const LocalModelParams& params, const GlobalMapSpec& g, std::size_t k_max,
                                  const IntegratorOptions& opt = {}, unsigned jobs = 1);

struct MorseSmaleReport {
  std::vector<double> equilibria;
  Point2 attractor;
  double attractor_residual = 0.0;
  double spectral_radius = 0.0;
  bool attractor_in_d = false;
  std::size_t samples = 0;
  std::size_t converged = 0;
  std::size_t to_equilibrium = 0;
  std::uint64_t seed = 0;
  std::vector<std::size_t> nonconvergent;  // sample indices
};
MorseSmaleReport verify_morse_smale(const LocalModelParams& params, const GlobalMapSpec& g, std::size_t samples,
                                    std::uint64_t seed = 20240601, const IntegratorOptions& opt = {});

// 3-d realization and knot extraction.
struct Vec3 {
  double x = 0, y = 0, z = 0;
};
struct SpatialOrbit {
  std::vector<Vec3> curve;     // closed polyline, last point joins the first
  std::vector<Vec3> ribbon;    // unit ribbon direction at every vertex
  int ribbon_half_turns = 0;   // half turns of the ribbon over one period
};
SpatialOrbit realize_orbit(const PeriodicOrbitResult& orbit, const LocalModelParams& params, const GlobalMapSpec& g,
                           const IntegratorOptions& opt = {}, std::size_t samples_per_stage = 80);

struct ExtractedKnot {
  PlanarDiagram diagram;
  LaurentPoly alexander;
  int self_linking = 0;  // linking number with the ribbon push-off or band boundary
};
// Projects along a generic direction; throws DegenerateProjection when the
// projection is not generic, in which case a rotated view is tried.
ExtractedKnot knot_from_orbit(const SpatialOrbit& orbit);

struct CrosscheckResult {
  bool match = false;
  std::string word;
  LaurentPoly ode_alexander, template_alexander;
  int ode_twist = 0, template_twist = 0;
};
CrosscheckResult crosscheck(const PeriodicOrbitResult& orbit, const LocalModelParams& params, const GlobalMapSpec& g,
                            const Template& pretemplate, const IntegratorOptions& opt = {});

// key=value experiment configuration ('#' comments).
struct ExperimentConfig {
  LocalModelParams params;
  IntegratorOptions integrator;
  std::size_t k_max = 3;
  std::size_t samples = 1000;
  std::uint64_t seed = 20240601;
};
ExperimentConfig parse_experiment_config(const std::string& text);

}  // namespace knotflow
