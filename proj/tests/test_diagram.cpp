#include "doctest.h"
#include "knotflow/diagram.hpp"
#include "knotflow/pleated.hpp"
#include "knotflow/symbolic.hpp"
#include "knotflow/template.hpp"

using namespace knotflow;

TEST_CASE("orbit diagrams of the standard templates") {
  const auto L = lorenz();
  const auto dx = orbits_to_diagram(L, std::vector<Word>{parse_word(L, "x")});
  CHECK(dx.components.size() == 1);
  CHECK(dx.crossing_count() == 0);
  CHECK(twist_of_orbit(L, parse_word(L, "x")) == 0);

  const auto H = horseshoe();
  const auto y = parse_word(H, "y");
  CHECK(twist_of_orbit(H, y) == 1);
  CHECK(framing_of_component(orbits_to_diagram(H, std::vector<Word>{y}), 0) == 1);
  CHECK(orbits_to_diagram(H, std::vector<Word>{}).components.empty());
}

TEST_CASE("a single strip with one full twist") {
  Template t;
  t.branch_lines.push_back({"b", {"s"}, {"s"}});
  t.strips.push_back({"s", {"b", 0}, {"b", 0}, 2});
  CHECK(twist_of_orbit(t, Word({0})) == 1);
}

TEST_CASE("linking and writhe on small diagrams") {
  CHECK(linking_number(diagram_from_braid(BraidWord{2, {}}), 0, 1) == 0);
  const auto hopf = diagram_from_braid(BraidWord{2, {1, 1}});
  CHECK(linking_number(hopf, 0, 1) == 1);
  CHECK(linking_number(hopf, 1, 0) == 1);
  CHECK(writhe(diagram_from_braid(BraidWord{1, {}}), 0) == 0);
  CHECK(writhe(diagram_from_braid(BraidWord{2, {1}}), 0) == 1);
  const auto L = lorenz();
  const auto d = orbits_to_diagram(L, std::vector<Word>{parse_word(L, "x"), parse_word(L, "y")});
  CHECK(linking_number(d, 0, 1) == 0);
}

TEST_CASE("twist decomposes into writhe plus ribbon twisting") {
  const auto H = horseshoe();
  for (const auto& w : enumerate_orbits(H, 7).words) {
    const auto d = orbits_to_diagram(H, std::vector<Word>{w});
    const int ribbon = d.components[0].ribbon_half_twists;
    CAPTURE(format_word(H, w));
    CHECK(twist_of_orbit(H, w) == framing_of_component(d, 0));
    if (ribbon % 2 == 0) CHECK(twist_of_orbit(H, w) == writhe(d, 0) + ribbon / 2);
  }
}

TEST_CASE("mirror negates every twist") {
  const PleatedSystem four{4, {{1, 2, 4, 3}, {Side::R, Side::L, Side::R}}, {0, 1, 0, -1}, Carrier::Unknot};
  for (const auto& t : {horseshoe(), universal_v(), build_pretemplate(four)}) {
    const auto m = mirror(t);
    for (const auto& w : enumerate_orbits(t, 5).words) CHECK(twist_of_orbit(m, w) == -twist_of_orbit(t, w));
  }
}

TEST_CASE("diagram consistency, symmetry and determinism") {
  const auto V = universal_v();
  const auto os = enumerate_orbits(V, 5);
  const auto d = orbits_to_diagram(V, os);
  CHECK(gauss_consistent(d));
  std::vector<int> passages(d.crossing_count(), 0);
  for (const auto& c : d.components)
    for (const auto& v : c.visits) ++passages[v.crossing];
  for (int p : passages) CHECK(p == 2);
  for (std::size_t i = 0; i < d.components.size(); ++i)
    for (std::size_t j = i + 1; j < d.components.size(); ++j)
      CHECK(linking_number(d, i, j) == linking_number(d, j, i));
  CHECK(gauss_code(d) == gauss_code(orbits_to_diagram(V, os)));
}

TEST_CASE("component subdiagram keeps only self crossings") {
  const auto hopf_kinked = diagram_from_braid(BraidWord{3, {1, 1, 2}});
  for (std::size_t c = 0; c < hopf_kinked.components.size(); ++c) {
    const auto s = component_subdiagram(hopf_kinked, c);
    CHECK(s.components.size() == 1);
    CHECK(writhe(s, 0) == writhe(hopf_kinked, c));
  }
}
