#include <algorithm>
#include <fstream>

#include "doctest.h"
#include "knotflow/diagram.hpp"
#include "knotflow/error.hpp"
#include "knotflow/pleated.hpp"
#include "knotflow/symbolic.hpp"
#include "knotflow/template.hpp"

using namespace knotflow;

namespace {
bool has_kind(const std::vector<Violation>& v, ViolationKind k) {
  return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.kind == k; });
}

std::set<std::string> all_strips(const Template& t) {
  std::set<std::string> s;
  for (const auto& x : t.strips) s.insert(x.id);
  return s;
}
}  // namespace

TEST_CASE("builtins validate") {
  CHECK(validate(lorenz()).empty());
  CHECK(validate(horseshoe()).empty());
  const auto v = universal_v();
  CHECK(validate(v).empty());
  CHECK(v.branch_lines.size() == 2);
}

TEST_CASE("double claim of an in-slot is a DuplicateSlot") {
  auto t = lorenz();
  t.strips[1].target.slot = 0;
  t.branch_lines[0].in_slots = {"x", "x"};
  CHECK(has_kind(validate(t), ViolationKind::DuplicateSlot));
  CHECK_THROWS_AS(require_valid(t), Error);
}

TEST_CASE("single-field mutations that break slot bijectivity are rejected") {
  for (const auto& base : {lorenz(), horseshoe(), universal_v()}) {
    for (std::size_t i = 0; i < base.strips.size(); ++i) {
      auto a = base;
      a.strips[i].source.slot += 7;
      CHECK_FALSE(validate(a).empty());
      auto b = base;
      b.strips[i].target.line = "nowhere";
      CHECK_FALSE(validate(b).empty());
    }
    for (std::size_t l = 0; l < base.branch_lines.size(); ++l) {
      auto c = base;
      c.branch_lines[l].out_slots.pop_back();
      CHECK_FALSE(validate(c).empty());
      auto d = base;
      d.branch_lines[l].in_slots.clear();
      CHECK_FALSE(validate(d).empty());
    }
  }
}

TEST_CASE("mirror") {
  const auto L = lorenz();
  const auto mL = mirror(L);
  for (const auto& s : mL.strips) CHECK(s.half_twists == 0);
  // merge crossings change sign: compare the diagram of {x.y}
  const auto d = orbits_to_diagram(L, std::vector<Word>{parse_word(L, "x.y")});
  const auto dm = orbits_to_diagram(mL, std::vector<Word>{parse_word(mL, "x.y")});
  REQUIRE(d.crossing_count() == dm.crossing_count());
  CHECK(writhe(dm, 0) == -writhe(d, 0));
  CHECK(writhe(d, 0) != 0);
  const auto H = horseshoe();
  CHECK(mirror(mirror(H)) == H);
  CHECK(mirror(H).strips[1].half_twists == -1);
  const auto V = universal_v();
  const auto mV = mirror(V);
  REQUIRE(mV.crossings.size() == V.crossings.size());
  for (std::size_t i = 0; i < V.crossings.size(); ++i) CHECK(mV.crossings[i].sign == -V.crossings[i].sign);
  CHECK(mirror(mirror(V)) == V);
}

TEST_CASE("restriction") {
  const auto L = lorenz();
  const auto x = restrict_to_strips(L, {"x"});
  CHECK(x.strips.size() == 1);
  CHECK(validate(x).empty());
  CHECK(enumerate_orbits(x, 4).words.size() == 1);
  for (const auto& t : {lorenz(), horseshoe(), universal_v()}) CHECK(restrict_to_strips(t, all_strips(t)) == t);
  CHECK_THROWS_AS(restrict_to_strips(L, {}), Error);
}

TEST_CASE("restriction keeps only orbits of the original") {
  const auto V = universal_v();
  const auto full = enumerate_orbits(V, 6);
  for (const std::set<std::string>& keep :
       {std::set<std::string>{"a1", "a2", "b1"}, {"a2", "b1", "b2"}, {"a1"}, {"a2", "b1"}}) {
    const auto r = restrict_to_strips(V, keep);
    for (const auto& w : enumerate_orbits(r, 6).words) {
      const auto lifted = parse_word(V, format_word(r, w));
      CHECK(std::find(full.words.begin(), full.words.end(), lifted) != full.words.end());
    }
  }
}

TEST_CASE("restricting pleated pretemplates") {
  const PleatedSystem four{4, {{1, 2, 4, 3}, {Side::R, Side::L, Side::R}}, {0, 1, 0, -1}, Carrier::Unknot};
  const auto t = build_pretemplate(four);
  const auto sub = restrict_to_strips(t, {"g2", "g3", "g4"});
  CHECK(validate(sub).empty());
  std::vector<int> tw;
  for (const auto& s : sub.strips) tw.push_back(s.half_twists);
  CHECK(tw == std::vector<int>{1, 0, -1});

  const PleatedSystem eight{8,
                          {{5, 6, 7, 8, 4, 1, 2, 3},
                           {Side::R, Side::L, Side::R, Side::L, Side::R, Side::L, Side::R}},
                          {0, 1, 0, 1, 2, 1, 0, 1},
                          Carrier::Unknot};
  const auto t8 = build_pretemplate(eight);
  const auto zero = restrict_to_strips(t8, {"g1", "g3", "g7"});
  CHECK(zero.strips.size() == 3);
  for (const auto& s : zero.strips) CHECK(s.half_twists == 0);
}

TEST_CASE("serialize round trip and file loading") {
  for (const auto& t : {lorenz(), horseshoe(), universal_v(), mirror(universal_v())}) {
    CHECK(parse_template(serialize(t)) == t);
  }
  const std::string path = "roundtrip_template.txt";
  {
    std::ofstream out(path);
    out << "# comment line\n" << serialize(universal_v());
  }
  CHECK(load_template(path) == universal_v());
  CHECK(load_template("lorenz") == lorenz());
  CHECK_THROWS_AS(parse_template("strip x L.0"), Error);
  try {
    parse_template("bogus");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
  }
}
