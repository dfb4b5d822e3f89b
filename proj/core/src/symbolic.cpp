#include "knotflow/symbolic.hpp"

#include <algorithm>

#include "knotflow/error.hpp"

namespace knotflow {

namespace {

// Booth's least-rotation would do; periods here are small enough for the
// quadratic scan.
std::vector<std::size_t> least_rotation(const std::vector<std::size_t>& s) {
  const std::size_t n = s.size();
  std::size_t best = 0;
  for (std::size_t r = 1; r < n; ++r) {
    for (std::size_t i = 0; i < n; ++i) {
      auto a = s[(r + i) % n], b = s[(best + i) % n];
      if (a != b) {
        if (a < b) best = r;
        break;
      }
    }
  }
  std::vector<std::size_t> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = s[(best + i) % n];
  return out;
}

int parity_of_half_twists(const Template& t, std::size_t strip) {
  int h = t.strips[strip].half_twists;
  return ((h % 2) + 2) % 2;
}

}  // namespace

Word::Word(std::vector<std::size_t> strips) : strips_(least_rotation(strips)) {}

bool Word::is_primitive() const {
  const std::size_t n = strips_.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d) continue;
    bool periodic = true;
    for (std::size_t i = 0; i + d < n && periodic; ++i) periodic = strips_[i] == strips_[i + d];
    if (periodic) return false;
  }
  return n > 0;
}

std::string format_word(const Template& t, const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.period(); ++i) {
    if (i) out += '.';
    out += t.strips.at(w[i]).id;
  }
  return out;
}

Word parse_word(const Template& t, std::string_view text) {
  std::vector<std::size_t> strips;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto dot = text.find('.', start);
    auto id = text.substr(start, dot == std::string_view::npos ? std::string_view::npos : dot - start);
    auto idx = t.strip_index(id);
    if (!idx) throw Error(ErrorCode::InvalidArgument, "unknown strip '" + std::string(id) + "' in word");
    strips.push_back(*idx);
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return Word(std::move(strips));
}

bool is_admissible(const Word& w, const Template& t) {
  if (w.empty()) return false;
  for (auto s : w.strips())
    if (s >= t.strips.size()) return false;
  for (std::size_t i = 0; i < w.period(); ++i) {
    const auto& here = t.strips[w[i]];
    const auto& next = t.strips[w[i + 1]];
    if (here.target.line != next.source.line) return false;
  }
  return true;
}

unsigned long long necklace_count(unsigned n, unsigned k) {
  auto mobius = [](unsigned d) {
    int mu = 1;
    for (unsigned p = 2; p * p <= d; ++p) {
      if (d % p) continue;
      d /= p;
      if (d % p == 0) return 0;
      mu = -mu;
    }
    if (d > 1) mu = -mu;
    return mu;
  };
  long long total = 0;
  for (unsigned d = 1; d <= k; ++d) {
    if (k % d) continue;
    long long pw = 1;
    for (unsigned i = 0; i < k / d; ++i) pw *= n;
    total += mobius(d) * pw;
  }
  return static_cast<unsigned long long>(total / k);
}

namespace {

// Fredricksen-Kessler-Maiorana generation of Lyndon words restricted to
// admissible prefixes.
struct LyndonSearch {
  const Template& t;
  std::size_t length;
  std::size_t cap;
  std::vector<std::vector<bool>> follows;  // follows[a][b]: strip b may follow strip a
  std::vector<std::size_t> a;
  std::vector<Word>& out;

  void run() {
    a.assign(length + 1, 0);
    gen(1, 1);
  }

  void gen(std::size_t pos, std::size_t p) {
    const std::size_t k = t.strips.size();
    if (pos > length) {
      if (length % p == 0 && p == length && follows[a[length]][a[1]]) {
        if (out.size() >= cap) throw Error(ErrorCode::BudgetExceeded, "orbit count exceeds cap");
        out.emplace_back(std::vector<std::size_t>(a.begin() + 1, a.end()));
      }
      return;
    }
    const std::size_t start = pos == 1 ? 0 : a[pos - p];
    for (std::size_t j = start; j < k; ++j) {
      if (pos > 1 && !follows[a[pos - 1]][j]) continue;
      a[pos] = j;
      gen(pos + 1, j == start && pos > 1 ? p : pos);
    }
  }
};

}  // namespace

OrbitSet enumerate_orbits(const Template& t, std::size_t max_period, std::size_t cap) {
  if (max_period < 1) throw Error(ErrorCode::InvalidArgument, "max_period must be >= 1");
  const std::size_t k = t.strips.size();
  std::vector<std::vector<bool>> follows(k, std::vector<bool>(k, false));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) follows[i][j] = t.strips[i].target.line == t.strips[j].source.line;
  OrbitSet set;
  set.max_period = max_period;
  for (std::size_t len = 1; len <= max_period; ++len) {
    LyndonSearch search{t, len, cap, follows, {}, set.words};
    search.run();
  }
  return set;
}

int compare_itineraries(const Template& t, const Word& a, std::size_t phase_a, const Word& b, std::size_t phase_b) {
  // The itineraries are periodic, so a first difference (if any) shows up
  // within period(a) * period(b) symbols.
  const std::size_t horizon = a.period() * b.period() + 1;
  bool flipped = false;
  for (std::size_t k = 0; k < horizon; ++k) {
    const auto sa = a[phase_a + k];
    const auto sb = b[phase_b + k];
    if (sa != sb) {
      const int r = t.out_position(sa) < t.out_position(sb) ? -1 : 1;
      return flipped ? -r : r;
    }
    if (parity_of_half_twists(t, sa)) flipped = !flipped;
  }
  return 0;
}

std::vector<StrandRef> strand_order(const Template& t, const std::vector<Word>& orbits, std::size_t line) {
  const auto& line_id = t.branch_lines.at(line).id;
  std::vector<StrandRef> strands;
  for (std::size_t w = 0; w < orbits.size(); ++w)
    for (std::size_t ph = 0; ph < orbits[w].period(); ++ph)
      if (t.strips[orbits[w][ph]].source.line == line_id) strands.push_back({w, ph});
  std::stable_sort(strands.begin(), strands.end(), [&](const StrandRef& x, const StrandRef& y) {
    return compare_itineraries(t, orbits[x.word], x.phase, orbits[y.word], y.phase) < 0;
  });
  return strands;
}

}  // namespace knotflow
