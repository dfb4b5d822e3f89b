#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "knotflow/template.hpp"

namespace knotflow {

// A cyclic itinerary of strips, stored in its lexicographically least rotation
// (strip indices follow declaration order).
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<std::size_t> strips);

  const std::vector<std::size_t>& strips() const { return strips_; }
  std::size_t period() const { return strips_.size(); }
  std::size_t operator[](std::size_t i) const { return strips_[i % strips_.size()]; }
  bool empty() const { return strips_.empty(); }
  bool is_primitive() const;

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word& a, const Word& b) {
    if (a.period() != b.period()) return a.period() <=> b.period();
    return a.strips_ <=> b.strips_;
  }

 private:
  std::vector<std::size_t> strips_;
};

// Dot-joined strip ids, e.g. "x.y.y".
std::string format_word(const Template& t, const Word& w);
Word parse_word(const Template& t, std::string_view text);

bool is_admissible(const Word& w, const Template& t);

struct OrbitSet {
  std::vector<Word> words;  // sorted by (period, strips)
  std::size_t max_period = 0;
};

inline constexpr std::size_t kDefaultOrbitCap = 2'000'000;

// All primitive admissible words with period <= max_period.
OrbitSet enumerate_orbits(const Template& t, std::size_t max_period, std::size_t cap = kDefaultOrbitCap);

// Counts of primitive period-k words on a full shift with n symbols.
unsigned long long necklace_count(unsigned n, unsigned k);

struct StrandRef {
  std::size_t word = 0;   // index into the orbit list
  std::size_t phase = 0;  // the strand leaves the line through strip word[phase]

  friend bool operator==(const StrandRef&, const StrandRef&) = default;
};

// Compares the forward itineraries of two points on a common branch line.
// Returns -1, 0 or +1 (left of, equal, right of).
int compare_itineraries(const Template& t, const Word& a, std::size_t phase_a, const Word& b, std::size_t phase_b);

// Left-to-right order of every strand passage through the branch line.
std::vector<StrandRef> strand_order(const Template& t, const std::vector<Word>& orbits, std::size_t line);

}  // namespace knotflow
