#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "knotflow/diagram.hpp"
#include "knotflow/laurent.hpp"

namespace knotflow {

// Alexander polynomial of a knot diagram, normalized so that it is symmetric
// (t <-> 1/t) with value 1 at t = 1. Uses the braid view when one is present
// and the Alexander matrix of the Gauss diagram otherwise.
LaurentPoly alexander(const PlanarDiagram& d);
LaurentPoly alexander(const BraidWord& b);
// Always uses the Gauss-diagram route; exposed so the two paths can be compared.
LaurentPoly alexander_from_gauss(const PlanarDiagram& d);

// Number of Seifert circles of the oriented smoothing of the diagram.
std::size_t seifert_circles(const PlanarDiagram& d);

// (c - s + 1) / 2 for a positive braid with connected closure.
int canonical_genus_positive_braid(const BraidWord& b);

// max(half the Alexander span, positive-braid genus when it applies).
int genus_lower_bound(const PlanarDiagram& d);

enum class Tri { Yes, No, Unknown };
std::string_view to_string(Tri v);

struct Verdict {
  Tri value = Tri::Unknown;
  // Move sequence for Yes, obstruction text for No, reason for Unknown.
  std::vector<std::string> certificate;
};

// Budget 0 means the default of 10 c^2 moves.
Verdict is_unknot(const PlanarDiagram& d, std::size_t budget = 0);
Verdict are_separable(const PlanarDiagram& d, std::size_t c1, std::size_t c2, std::size_t budget = 0);

// Braid simplification used by the verdicts. Every recorded move preserves
// the link type of the closure.
struct SimplifyResult {
  BraidWord braid;
  std::vector<std::string> moves;
  bool budget_exhausted = false;
};
SimplifyResult simplify_braid(const BraidWord& b, std::size_t budget);

}  // namespace knotflow
