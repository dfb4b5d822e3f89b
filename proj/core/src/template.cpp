#include "knotflow/template.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "knotflow/error.hpp"

namespace knotflow {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidTemplate: return "InvalidTemplate";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::EmptyRestriction: return "EmptyRestriction";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::NotAKnot: return "NotAKnot";
    case ErrorCode::DisconnectedClosure: return "DisconnectedClosure";
    case ErrorCode::InvalidPleating: return "InvalidPleating";
    case ErrorCode::NonIncrementalTwists: return "NonIncrementalTwists";
    case ErrorCode::UnsupportedCarrier: return "UnsupportedCarrier";
    case ErrorCode::StepBudgetExceeded: return "StepBudgetExceeded";
    case ErrorCode::SeedingFailure: return "SeedingFailure";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DegenerateProjection: return "DegenerateProjection";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::DuplicateSlot: return "DuplicateSlot";
    case ViolationKind::DanglingSlot: return "DanglingSlot";
    case ViolationKind::EmptyLine: return "EmptyLine";
    case ViolationKind::DuplicateId: return "DuplicateId";
    case ViolationKind::InconsistentCrossingOrder: return "InconsistentCrossingOrder";
    case ViolationKind::CrossingSignMismatch: return "CrossingSignMismatch";
    case ViolationKind::MergeOrder: return "MergeOrder";
  }
  return "Unknown";
}

std::optional<std::size_t> Template::strip_index(std::string_view id) const {
  for (std::size_t i = 0; i < strips.size(); ++i)
    if (strips[i].id == id) return i;
  return std::nullopt;
}

std::optional<std::size_t> Template::line_index(std::string_view id) const {
  for (std::size_t i = 0; i < branch_lines.size(); ++i)
    if (branch_lines[i].id == id) return i;
  return std::nullopt;
}

std::size_t Template::source_line(std::size_t strip) const {
  auto idx = line_index(strips.at(strip).source.line);
  if (!idx) throw Error(ErrorCode::InvalidTemplate, "unknown line " + strips[strip].source.line);
  return *idx;
}

std::size_t Template::target_line(std::size_t strip) const {
  auto idx = line_index(strips.at(strip).target.line);
  if (!idx) throw Error(ErrorCode::InvalidTemplate, "unknown line " + strips[strip].target.line);
  return *idx;
}

namespace {

void check_slots(const Template& t, std::vector<Violation>& out) {
  std::set<std::string> line_ids;
  for (const auto& line : t.branch_lines) {
    if (!line_ids.insert(line.id).second)
      out.push_back({ViolationKind::DuplicateId, line.id, "branch line id declared twice"});
    if (line.out_slots.empty())
      out.push_back({ViolationKind::EmptyLine, line.id, "no out-slots"});
    if (line.in_slots.empty())
      out.push_back({ViolationKind::EmptyLine, line.id, "no in-slots"});
  }
  std::set<std::string> strip_ids;
  for (const auto& s : t.strips)
    if (!strip_ids.insert(s.id).second)
      out.push_back({ViolationKind::DuplicateId, s.id, "strip id declared twice"});

  // Every strip appears in exactly one out-slot and one in-slot overall.
  std::map<std::string, int> out_count, in_count;
  for (const auto& line : t.branch_lines) {
    for (std::size_t k = 0; k < line.out_slots.size(); ++k) {
      const auto& id = line.out_slots[k];
      if (++out_count[id] > 1)
        out.push_back({ViolationKind::DuplicateSlot, id, "strip occupies two out-slots"});
      auto si = t.strip_index(id);
      if (!si) {
        out.push_back({ViolationKind::DanglingSlot, line.id,
                       "out-slot " + std::to_string(k) + " names unknown strip " + id});
      } else if (t.strips[*si].source != SlotRef{line.id, static_cast<int>(k)}) {
        out.push_back({ViolationKind::DuplicateSlot, id,
                       "out-slot " + line.id + "." + std::to_string(k) + " is not the strip's source"});
      }
    }
    for (std::size_t k = 0; k < line.in_slots.size(); ++k) {
      const auto& id = line.in_slots[k];
      if (++in_count[id] > 1)
        out.push_back({ViolationKind::DuplicateSlot, id, "strip occupies two in-slots"});
      auto si = t.strip_index(id);
      if (!si) {
        out.push_back({ViolationKind::DanglingSlot, line.id,
                       "in-slot " + std::to_string(k) + " names unknown strip " + id});
      } else if (t.strips[*si].target != SlotRef{line.id, static_cast<int>(k)}) {
        out.push_back({ViolationKind::DuplicateSlot, id,
                       "in-slot " + line.id + "." + std::to_string(k) + " is not the strip's target"});
      }
    }
  }
  for (const auto& s : t.strips) {
    for (const auto* ref : {&s.source, &s.target}) {
      auto li = t.line_index(ref->line);
      const bool is_source = ref == &s.source;
      if (!li) {
        out.push_back({ViolationKind::DanglingSlot, s.id, "unknown branch line " + ref->line});
        continue;
      }
      const auto& slots = is_source ? t.branch_lines[*li].out_slots : t.branch_lines[*li].in_slots;
      if (ref->slot < 0 || ref->slot >= static_cast<int>(slots.size()) ||
          slots[static_cast<std::size_t>(ref->slot)] != s.id) {
        out.push_back({ViolationKind::DanglingSlot, s.id,
                       std::string(is_source ? "source " : "target ") + ref->line + "." +
                           std::to_string(ref->slot) + " does not back-reference the strip"});
      }
    }
  }
}

// Replays the band layout: start order, explicit crossings, merge order.
void check_layout(const Template& t, std::vector<Violation>& out) {
  std::vector<std::string> bands;
  for (const auto& line : t.branch_lines)
    for (const auto& id : line.out_slots) bands.push_back(id);
  std::map<std::string, int> seen;
  for (std::size_t c = 0; c < t.crossings.size(); ++c) {
    const auto& x = t.crossings[c];
    const std::string name = "crossing " + std::to_string(c) + " (" + x.over + "/" + x.under + ")";
    if (x.sign != 1 && x.sign != -1) {
      out.push_back({ViolationKind::CrossingSignMismatch, name, "sign must be +1 or -1"});
      continue;
    }
    if (!t.strip_index(x.over) || !t.strip_index(x.under)) {
      out.push_back({ViolationKind::DanglingSlot, name, "crossing names an unknown strip"});
      continue;
    }
    if (x.over == x.under) {
      if (x.over_pos != seen[x.over] || x.under_pos != seen[x.over])
        out.push_back({ViolationKind::InconsistentCrossingOrder, name, "kink ordinal out of sequence"});
      ++seen[x.over];
      continue;
    }
    if (x.over_pos != seen[x.over] || x.under_pos != seen[x.under])
      out.push_back({ViolationKind::InconsistentCrossingOrder, name, "ordinal out of sequence"});
    ++seen[x.over];
    ++seen[x.under];
    auto io = std::find(bands.begin(), bands.end(), x.over) - bands.begin();
    auto iu = std::find(bands.begin(), bands.end(), x.under) - bands.begin();
    if (io >= static_cast<long>(bands.size()) || iu >= static_cast<long>(bands.size())) continue;
    if (std::abs(io - iu) != 1) {
      out.push_back({ViolationKind::InconsistentCrossingOrder, name, "strips are not adjacent bands"});
      continue;
    }
    const int geometric = io < iu ? 1 : -1;
    if (geometric != x.sign)
      out.push_back({ViolationKind::CrossingSignMismatch, name,
                     "declared sign disagrees with over/under and left/right order"});
    std::swap(bands[static_cast<std::size_t>(io)], bands[static_cast<std::size_t>(iu)]);
  }
  long last = -1;
  for (const auto& id : bands) {
    auto si = t.strip_index(id);
    if (!si) continue;
    auto li = t.line_index(t.strips[*si].target.line);
    if (!li) continue;
    if (static_cast<long>(*li) < last) {
      out.push_back({ViolationKind::MergeOrder, id,
                     "bands reach their target lines out of left-to-right order"});
      return;
    }
    last = static_cast<long>(*li);
  }
}

}  // namespace

std::vector<Violation> validate(const Template& t) {
  std::vector<Violation> out;
  check_slots(t, out);
  if (out.empty()) check_layout(t, out);
  return out;
}

void require_valid(const Template& t) {
  auto v = validate(t);
  if (!v.empty())
    throw Error(ErrorCode::InvalidTemplate,
                std::string(to_string(v.front().kind)) + " at " + v.front().element + ": " + v.front().message);
}

Template lorenz() {
  Template t;
  t.branch_lines.push_back({"L", {"x", "y"}, {"x", "y"}});
  t.strips.push_back({"x", {"L", 0}, {"L", 0}, 0});
  t.strips.push_back({"y", {"L", 1}, {"L", 1}, 0});
  return t;
}

Template horseshoe() {
  Template t;
  t.branch_lines.push_back({"H", {"x", "y"}, {"x", "y"}});
  t.strips.push_back({"x", {"H", 0}, {"H", 0}, 0});
  t.strips.push_back({"y", {"H", 1}, {"H", 1}, 1});
  return t;
}

Template universal_v() {
  // Two branch lines; b1 passes over a2 on its way back to A, and b2 carries a
  // negative full twist.
  Template t;
  t.branch_lines.push_back({"A", {"a1", "a2"}, {"a1", "b1"}});
  t.branch_lines.push_back({"B", {"b1", "b2"}, {"a2", "b2"}});
  t.strips.push_back({"a1", {"A", 0}, {"A", 0}, 0});
  t.strips.push_back({"a2", {"A", 1}, {"B", 0}, 0});
  t.strips.push_back({"b1", {"B", 0}, {"A", 1}, 0});
  t.strips.push_back({"b2", {"B", 1}, {"B", 1}, -2});
  t.crossings.push_back({"b1", "a2", -1, 0, 0});
  return t;
}

Template mirror(const Template& t) {
  Template m = t;
  for (auto& line : m.branch_lines) std::reverse(line.in_slots.begin(), line.in_slots.end());
  for (auto& s : m.strips) {
    s.half_twists = -s.half_twists;
    auto li = t.line_index(s.target.line);
    if (li) s.target.slot = static_cast<int>(t.branch_lines[*li].in_slots.size()) - 1 - s.target.slot;
  }
  for (auto& x : m.crossings) {
    std::swap(x.over, x.under);
    std::swap(x.over_pos, x.under_pos);
    x.sign = -x.sign;
  }
  return m;
}

Template restrict_to_strips(const Template& t, const std::set<std::string>& keep) {
  if (keep.empty()) throw Error(ErrorCode::EmptyRestriction, "no strips kept");
  for (const auto& id : keep)
    if (!t.strip_index(id)) throw Error(ErrorCode::EmptyRestriction, "unknown strip " + id);
  Template r;
  r.carrier = t.carrier;
  for (const auto& line : t.branch_lines) {
    BranchLine nl{line.id, {}, {}};
    for (const auto& id : line.out_slots)
      if (keep.count(id)) nl.out_slots.push_back(id);
    for (const auto& id : line.in_slots)
      if (keep.count(id)) nl.in_slots.push_back(id);
    if (nl.out_slots.empty() && nl.in_slots.empty()) continue;
    if (nl.out_slots.empty() || nl.in_slots.empty())
      throw Error(ErrorCode::EmptyRestriction, "branch line " + line.id + " loses all of its " +
                                                   (nl.out_slots.empty() ? "out" : "in") + "-slots");
    r.branch_lines.push_back(std::move(nl));
  }
  for (const auto& s : t.strips) {
    if (!keep.count(s.id)) continue;
    Strip ns = s;
    for (const auto& line : r.branch_lines) {
      if (line.id == s.source.line)
        ns.source.slot = static_cast<int>(std::find(line.out_slots.begin(), line.out_slots.end(), s.id) -
                                          line.out_slots.begin());
      if (line.id == s.target.line)
        ns.target.slot = static_cast<int>(std::find(line.in_slots.begin(), line.in_slots.end(), s.id) -
                                          line.in_slots.begin());
    }
    r.strips.push_back(ns);
  }
  std::map<std::string, int> seen;
  for (const auto& x : t.crossings) {
    if (!keep.count(x.over) || !keep.count(x.under)) continue;
    Crossing nx = x;
    if (x.over == x.under) {
      nx.over_pos = nx.under_pos = seen[x.over]++;
    } else {
      nx.over_pos = seen[x.over]++;
      nx.under_pos = seen[x.under]++;
    }
    r.crossings.push_back(nx);
  }
  return r;
}

}  // namespace knotflow
