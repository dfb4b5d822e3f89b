#include <random>

#include "doctest.h"
#include "knotflow/diagram.hpp"
#include "knotflow/invariants.hpp"
#include "knotflow/symbolic.hpp"
#include "knotflow/template.hpp"
#include "oracles.hpp"

using namespace knotflow;

namespace {

LaurentPoly P(int low, std::vector<std::int64_t> c) { return LaurentPoly(low, std::move(c)); }

BraidWord random_knot_braid(std::mt19937_64& rng, std::size_t strands, std::size_t length, bool positive) {
  std::uniform_int_distribution<int> gen(1, static_cast<int>(strands) - 1);
  for (std::size_t attempt = 0;; ++attempt) {
    // two-strand closures need an odd length, so lengthen now and then
    if (attempt % 4 == 3) ++length;
    BraidWord b{strands, {}};
    for (std::size_t i = 0; i < length; ++i) {
      int g = gen(rng);
      if (!positive && (rng() & 1)) g = -g;
      b.letters.push_back(g);
    }
    if (b.closure_components() == 1) return b;
  }
}

}  // namespace

TEST_CASE("oracle reproduces the textbook polynomials") {
  CHECK(oracle::alexander_burau(1, {}) == LaurentPoly(1));
  CHECK(oracle::alexander_burau(2, {1, 1, 1}) == P(-1, {1, -1, 1}));
  CHECK(oracle::alexander_burau(3, {1, -2, 1, -2}) == P(-1, {-1, 3, -1}));
}

TEST_CASE("alexander on the standard knots") {
  CHECK(alexander(diagram_from_braid(BraidWord{1, {}})) == LaurentPoly(1));
  CHECK(alexander(BraidWord{2, {1, 1, 1}}) == P(-1, {1, -1, 1}));
  CHECK(alexander(BraidWord{3, {1, -2, 1, -2}}) == P(-1, {-1, 3, -1}));
  CHECK(alexander(BraidWord{2, {1, 1, 1}}).to_string() == "t^-1 - 1 + t");
}

TEST_CASE("alexander agrees with the Burau oracle on random knots, both routes") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + trial % 3;
    const auto b = random_knot_braid(rng, n, 3 + trial % 7, false);
    const auto expect = oracle::alexander_burau(n, b.letters);
    CAPTURE(trial);
    CHECK(alexander(b) == expect);
    CHECK(alexander_from_gauss(diagram_from_braid(b)) == expect);
  }
}

TEST_CASE("mirror diagram gives t -> 1/t") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    auto b = random_knot_braid(rng, 3, 6, false);
    auto m = b;
    for (auto& l : m.letters) l = -l;
    CHECK(alexander(m) == alexander(b).inverted().normalized());
  }
}

TEST_CASE("alexander is invariant under conjugation and under simplification") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    auto b = random_knot_braid(rng, 3, 7, false);
    const auto a = alexander(b);
    auto r = b;
    std::rotate(r.letters.begin(), r.letters.begin() + 1 + trial % 3, r.letters.end());
    CHECK(alexander(r) == a);
    const auto s = simplify_braid(b, 200);
    CHECK(alexander(s.braid) == a);
  }
}

TEST_CASE("genus of positive braids against Seifert-circle tracing") {
  std::mt19937_64 rng(50);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + trial % 4;
    const auto b = random_knot_braid(rng, n, n + 2 + trial % 6, true);
    const auto d = diagram_from_braid(b);
    const std::size_t s = oracle::seifert_by_tracing(d);
    CAPTURE(trial);
    CHECK(seifert_circles(d) == s);
    const int expected = (static_cast<int>(b.letters.size()) - static_cast<int>(s) + 1) / 2;
    CHECK(canonical_genus_positive_braid(b) == expected);
    // positive braids are fibred, so the Alexander span is twice the genus
    CHECK(oracle::alexander_burau(n, b.letters).span() == 2 * expected);
  }
  CHECK(canonical_genus_positive_braid(BraidWord{2, {1, 1, 1}}) == 1);
  CHECK(canonical_genus_positive_braid(BraidWord{2, {1, 1, 1, 1, 1}}) == 2);
  CHECK(genus_lower_bound(diagram_from_braid(BraidWord{1, {}})) == 0);
}

TEST_CASE("is_unknot verdicts") {
  const auto loop = is_unknot(diagram_from_braid(BraidWord{1, {}}));
  CHECK(loop.value == Tri::Yes);
  const auto trefoil = is_unknot(diagram_from_braid(BraidWord{2, {1, 1, 1}}));
  CHECK(trefoil.value == Tri::No);
  const auto kink = is_unknot(diagram_from_braid(BraidWord{2, {1}}));
  CHECK(kink.value == Tri::Yes);
  CHECK(kink.certificate.size() == 1);
}

TEST_CASE("is_unknot is confluent across conjugates") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    auto b = random_knot_braid(rng, 3, 6, false);
    std::set<Tri> seen;
    for (std::size_t r = 0; r < b.letters.size(); ++r) {
      auto c = b;
      std::rotate(c.letters.begin(), c.letters.begin() + static_cast<long>(r), c.letters.end());
      const auto v = is_unknot(diagram_from_braid(c)).value;
      if (v != Tri::Unknown) seen.insert(v);
    }
    CHECK(seen.size() <= 1);
  }
}

TEST_CASE("separability") {
  CHECK(are_separable(diagram_from_braid(BraidWord{2, {}}), 0, 1).value == Tri::Yes);
  CHECK(are_separable(diagram_from_braid(BraidWord{2, {1, 1}}), 0, 1).value == Tri::No);
  const auto L = lorenz();
  const auto d = orbits_to_diagram(L, std::vector<Word>{parse_word(L, "x"), parse_word(L, "y")});
  CHECK(are_separable(d, 0, 1).value == Tri::Yes);
}
