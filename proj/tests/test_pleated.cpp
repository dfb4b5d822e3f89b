#include <cmath>
#include <random>

#include "doctest.h"
#include "knotflow/diagram.hpp"
#include "knotflow/error.hpp"
#include "knotflow/pleated.hpp"
#include "knotflow/symbolic.hpp"
#include "knotflow/universality.hpp"

using namespace knotflow;

namespace {

const PleatedSystem kFourHomoclinic{4, {{1, 2, 4, 3}, {Side::R, Side::L, Side::R}}, {0, 1, 0, -1}, Carrier::Unknot};
const PleatedSystem kEightStrip{8,
                            {{5, 6, 7, 8, 4, 1, 2, 3},
                             {Side::R, Side::L, Side::R, Side::L, Side::R, Side::L, Side::R}},
                            {0, 1, 0, 1, 2, 1, 0, 1},
                            Carrier::Unknot};

// Total turning of the fold drawn as a half circle on its side of the stable
// arc (the arc is the vertical axis, positions increase upward): +1 for a
// counterclockwise half turn.
int fold_turning(int from, int to, Side side) {
  const double cy = 0.5 * (from + to), r = 0.5 * std::abs(to - from);
  const double sx = side == Side::R ? 1.0 : -1.0;
  // sample the half circle from the start point to the end point through x*sx > 0
  double turning = 0.0;
  const int m = 64;
  double px = 0, py = from, tx = 0, ty = 0;
  for (int k = 1; k <= m; ++k) {
    const double a = M_PI * k / m;
    const double x = sx * r * std::sin(a);
    const double y = cy + (from < to ? -1 : 1) * r * std::cos(a);
    const double nx = x - px, ny = y - py;
    if (k > 1) turning += std::atan2(tx * ny - ty * nx, tx * nx + ty * ny);
    tx = nx;
    ty = ny;
    px = x;
    py = y;
  }
  return turning > 0 ? 1 : -1;
}

}  // namespace

TEST_CASE("pleating validation") {
  CHECK(validate_pleating({{1, 2, 3, 4, 5}, {Side::R, Side::L, Side::R, Side::L}}).empty());
  const auto bad = validate_pleating({{1, 3, 2, 4}, {Side::R, Side::L, Side::R}});
  REQUIRE_FALSE(bad.empty());
  CHECK(bad[0].kind == PleatViolationKind::SelfIntersectingPleat);
  CHECK(validate_pleating(kFourHomoclinic.pleating).empty());
  CHECK(validate_pleating({{1, 1, 2}, {Side::R, Side::L}})[0].kind == PleatViolationKind::NotAPermutation);
  CHECK(validate_pleating({{1, 2, 3}, {Side::R}})[0].kind == PleatViolationKind::SideCount);
}

TEST_CASE("incremental twist signatures") {
  CHECK_FALSE(check_incremental({0, 1, 0, -1}).has_value());
  CHECK_FALSE(check_incremental({0, 1, 0, 1, 2, 1, 0, 1}).has_value());
  CHECK(check_incremental({0, 2, 1}) == std::optional<std::size_t>{1});
  CHECK(derive_twists(kFourHomoclinic.pleating, 0) == kFourHomoclinic.twists);
  CHECK(derive_twists(kEightStrip.pleating, 0) == kEightStrip.twists);
}

TEST_CASE("pretemplate construction") {
  const auto one = build_pretemplate({1, {{1}, {}}, {0}, Carrier::Unknot});
  CHECK(validate(one).empty());
  CHECK(one.strips.size() == 1);
  CHECK(one.branch_lines.size() == 1);

  const auto t = build_pretemplate(kFourHomoclinic);
  CHECK(t.strips.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) CHECK(twist_of_orbit(t, Word({i})) == kFourHomoclinic.twists[i]);

  auto bad = kFourHomoclinic;
  bad.twists = {0, 2, 1, 0};
  CHECK_THROWS_AS(build_pretemplate(bad), Error);
  try {
    build_pretemplate(bad);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonIncrementalTwists);
  }
  bad = kFourHomoclinic;
  bad.pleating.order = {1, 3, 2, 4};
  CHECK_THROWS_AS(build_pretemplate(bad), Error);
}

TEST_CASE("random pleatings: twists step by one in the direction the fold turns") {
  std::mt19937_64 rng(38);
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial) % 9;
    PleatedSystem s;
    s.n = n;
    s.pleating = random_pleating(n, rng);
    s.twists = derive_twists(s.pleating, trial % 5 - 2);
    const auto t = build_pretemplate(s);
    CHECK(validate(t).empty());
    CHECK(t.branch_lines.size() == 1);
    std::vector<int> measured;
    for (std::size_t i = 0; i < n; ++i) measured.push_back(twist_of_orbit(t, Word({i})));
    CHECK(measured == s.twists);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      CHECK(measured[i + 1] - measured[i] ==
            fold_turning(s.pleating.order[i], s.pleating.order[i + 1], s.pleating.sides[i]));
    }
  }
}

TEST_CASE("classification examples") {
  const auto a = classify_bifurcation(kFourHomoclinic, 8);
  CHECK(a.kind == Classification::UniversalByThm43);
  REQUIRE(a.certificate);
  CHECK(a.certificate_verified);
  CHECK(verify_certificate(build_pretemplate(kFourHomoclinic), *a.certificate));

  ClassifyOptions o;
  o.max_period = 8;
  o.twist_kappa_prime = -2;
  const auto b = classify_bifurcation(kEightStrip, o);
  CHECK(b.kind == Classification::CertificateFound);
  REQUIRE(b.certificate);
  CHECK(b.certificate->twist_kappa == 0);
  CHECK(b.certificate->twist_kappa_prime == -2);

  auto tre = kFourHomoclinic;
  tre.carrier = Carrier::Trefoil;
  const auto c = classify_bifurcation(tre, 5);
  CHECK(c.kind == Classification::NotUniversalByGenus);
  CHECK(c.min_genus_bound >= 1);
  CHECK_FALSE(c.any_unknot);
}

TEST_CASE("pleat file format") {
  const auto s = parse_pleat("pleat n=4 order=1,2,4,3 sides=RLR tau=0,1,0,-1 carrier=unknot\n");
  CHECK(s == kFourHomoclinic);
  CHECK(parse_pleat(format_pleat(kEightStrip)) == kEightStrip);
  CHECK_THROWS_AS(parse_pleat("pleat n=4 order=1,2"), Error);
  const auto cat = catalogue_three_strip();
  CHECK(cat.size() == 4);
  for (const auto& e : cat) CHECK(validate(build_pretemplate(e)).empty());
}
