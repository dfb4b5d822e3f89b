#pragma once

// Combinatorial embedded templates.
//
// A template is stored as the data of one fixed planar projection. Every strip
// makes one trip around a common axis: it leaves its source branch line, makes
// its half-twists, passes through the explicit strip crossings in list order,
// and then merges into its target branch line. Branch lines sit side by side
// (declaration order, left to right) in the cross-section where strips merge.
// At a merge, in-slot 0 is the frontmost layer.

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace knotflow {

struct SlotRef {
  std::string line;
  int slot = 0;

  friend bool operator==(const SlotRef&, const SlotRef&) = default;
};

struct BranchLine {
  std::string id;
  std::vector<std::string> out_slots;  // left to right along the line
  std::vector<std::string> in_slots;   // front to back

  friend bool operator==(const BranchLine&, const BranchLine&) = default;
};

struct Strip {
  std::string id;
  SlotRef source;
  SlotRef target;
  int half_twists = 0;  // left-over-right positive; a full twist is 2

  friend bool operator==(const Strip&, const Strip&) = default;
};

struct Crossing {
  std::string over;
  std::string under;
  int sign = 1;
  int over_pos = 0;   // ordinal among the crossings met along the over strip
  int under_pos = 0;  // ordinal among the crossings met along the under strip

  friend bool operator==(const Crossing&, const Crossing&) = default;
};

// Knot type of the solid torus all strips run inside. A trefoil carrier ties
// the whole bundle into a zero-framed right-handed trefoil.
enum class Carrier { Unknot, Trefoil };

struct Template {
  std::vector<BranchLine> branch_lines;
  std::vector<Strip> strips;
  std::vector<Crossing> crossings;
  Carrier carrier = Carrier::Unknot;

  std::optional<std::size_t> strip_index(std::string_view id) const;
  std::optional<std::size_t> line_index(std::string_view id) const;

  // Index helpers for validated templates; they throw on unknown ids.
  std::size_t source_line(std::size_t strip) const;
  std::size_t target_line(std::size_t strip) const;
  // Position of the strip among the out-slots of its source line.
  int out_position(std::size_t strip) const { return strips[strip].source.slot; }
  int in_position(std::size_t strip) const { return strips[strip].target.slot; }

  friend bool operator==(const Template&, const Template&) = default;
};

enum class ViolationKind {
  DuplicateSlot,
  DanglingSlot,
  EmptyLine,
  DuplicateId,
  InconsistentCrossingOrder,
  CrossingSignMismatch,
  MergeOrder,
};

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string element;
  std::string message;
};

// Empty result means the template is valid.
std::vector<Violation> validate(const Template& t);
// Throws Error(InvalidTemplate) listing the first violation.
void require_valid(const Template& t);

Template lorenz();
Template horseshoe();
Template universal_v();

Template mirror(const Template& t);
Template restrict_to_strips(const Template& t, const std::set<std::string>& keep);

std::string serialize(const Template& t);
Template parse_template(std::string_view text);

// Loads a template by builtin name ("lorenz", "horseshoe", "universal-v") or
// from a file path.
Template load_template(const std::string& name_or_path);

}  // namespace knotflow
