#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "knotflow/symbolic.hpp"
#include "knotflow/template.hpp"

namespace knotflow {

enum class CrossingOrigin { Explicit, HalfTwist, StripCrossing, Merge, Carrier };

struct DiagramCrossing {
  int sign = 1;
  std::size_t over_component = 0;
  std::size_t under_component = 0;
  std::size_t over_passage = 0;   // index into the over component's visit list
  std::size_t under_passage = 0;  // index into the under component's visit list
  CrossingOrigin origin = CrossingOrigin::Explicit;
  int line = -1;         // merge crossings: the branch line being entered
  int over_strip = -1;   // band carrying the over strand, when known
  int under_strip = -1;  // band carrying the under strand, when known
};

struct Visit {
  std::size_t crossing = 0;
  bool over = false;

  friend bool operator==(const Visit&, const Visit&) = default;
};

struct DiagramComponent {
  std::string label;
  std::vector<Visit> visits;   // cyclic Gauss sequence
  int ribbon_half_twists = 0;  // surface twisting not visible as crossings
};

// Braid generator sigma_i^(+-1) stored as +-(i+1); positive means the left
// strand passes over the right one.
struct BraidWord {
  std::size_t strands = 1;
  std::vector<int> letters;

  int exponent_sum() const;
  std::size_t crossing_count() const { return letters.size(); }
  // Permutation of the closure: end position of the strand starting at p.
  std::vector<std::size_t> permutation() const;
  std::size_t closure_components() const;
};

struct PlanarDiagram {
  std::vector<DiagramComponent> components;
  std::vector<DiagramCrossing> crossings;
  std::optional<BraidWord> braid;  // present when the diagram is a braid closure

  std::size_t crossing_count() const { return crossings.size(); }
};

struct LetterInfo {
  CrossingOrigin origin = CrossingOrigin::Explicit;
  int line = -1;
  int left_strip = -1;
  int right_strip = -1;
};

// Closure of a braid; strand_labels (optional) name the components in order of
// their lowest strand.
PlanarDiagram diagram_from_braid(const BraidWord& braid, const std::vector<LetterInfo>& info = {},
                                 const std::vector<int>& strand_ribbon = {});

PlanarDiagram orbits_to_diagram(const Template& t, const std::vector<Word>& orbits);
PlanarDiagram orbits_to_diagram(const Template& t, const OrbitSet& orbits);

int writhe(const PlanarDiagram& d, std::size_t component);
int linking_number(const PlanarDiagram& d, std::size_t c1, std::size_t c2);
// Framing of a component: lk with its push-off for annular bands, lk with the
// band boundary for Moebius bands.
int framing_of_component(const PlanarDiagram& d, std::size_t component);
int twist_of_orbit(const Template& t, const Word& w);

// Each crossing visited exactly twice, once over and once under.
bool gauss_consistent(const PlanarDiagram& d);

// One line per component: "<label>: O1+ U2- ...".
std::string gauss_code(const PlanarDiagram& d);

// Diagram restricted to one component (its self-crossings only).
PlanarDiagram component_subdiagram(const PlanarDiagram& d, std::size_t component);

}  // namespace knotflow
