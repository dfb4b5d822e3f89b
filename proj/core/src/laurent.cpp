#include "knotflow/laurent.hpp"

#include <algorithm>
#include <cstdlib>

namespace knotflow {

LaurentPoly::LaurentPoly(std::int64_t constant) : low_(0), coeffs_{constant} { trim(); }

LaurentPoly::LaurentPoly(int low, std::vector<std::int64_t> coeffs) : low_(low), coeffs_(std::move(coeffs)) {
  trim();
}

LaurentPoly LaurentPoly::monomial(std::int64_t c, int exponent) { return LaurentPoly(exponent, {c}); }

void LaurentPoly::trim() {
  std::size_t first = 0;
  while (first < coeffs_.size() && coeffs_[first] == 0) ++first;
  if (first == coeffs_.size()) {
    coeffs_.clear();
    low_ = 0;
    return;
  }
  std::size_t last = coeffs_.size();
  while (coeffs_[last - 1] == 0) --last;
  coeffs_ = std::vector<std::int64_t>(coeffs_.begin() + static_cast<long>(first), coeffs_.begin() + static_cast<long>(last));
  low_ += static_cast<int>(first);
}

std::int64_t LaurentPoly::coeff(int exponent) const {
  if (is_zero() || exponent < low() || exponent > high()) return 0;
  return coeffs_[static_cast<std::size_t>(exponent - low_)];
}

std::int64_t LaurentPoly::eval_at_one() const {
  std::int64_t s = 0;
  for (auto c : coeffs_) s += c;
  return s;
}

bool LaurentPoly::is_palindromic() const {
  for (std::size_t i = 0, j = coeffs_.size(); i < j; ++i, --j)
    if (coeffs_[i] != coeffs_[j - 1]) return false;
  return true;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  const int lo = std::min(low(), o.low()), hi = std::max(high(), o.high());
  std::vector<std::int64_t> c(static_cast<std::size_t>(hi - lo + 1), 0);
  for (int e = lo; e <= hi; ++e) c[static_cast<std::size_t>(e - lo)] = coeff(e) + o.coeff(e);
  return LaurentPoly(lo, std::move(c));
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const { return *this + (-o); }

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<std::int64_t> c(coeffs_.size() + o.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * o.coeffs_[j];
  return LaurentPoly(low_ + o.low_, std::move(c));
}

LaurentPoly LaurentPoly::shifted(int by) const {
  LaurentPoly r = *this;
  if (!r.is_zero()) r.low_ += by;
  return r;
}

LaurentPoly LaurentPoly::inverted() const {
  if (is_zero()) return {};
  std::vector<std::int64_t> c(coeffs_.rbegin(), coeffs_.rend());
  return LaurentPoly(-high(), std::move(c));
}

LaurentPoly LaurentPoly::normalized() const {
  if (is_zero()) return {};
  const int s = span();
  LaurentPoly r = shifted(-low() - (s % 2 == 0 ? s / 2 : 0));
  const auto at_one = r.eval_at_one();
  if (at_one < 0 || (at_one == 0 && r.coeffs_.back() < 0)) r = -r;
  return r;
}

std::string LaurentPoly::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (int e = low(); e <= high(); ++e) {
    const auto c = coeff(e);
    if (c == 0) continue;
    const auto mag = std::llabs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    std::string mono;
    if (e == 0) {
      mono = std::to_string(mag);
    } else {
      if (mag != 1) mono = std::to_string(mag);
      mono += e == 1 ? "t" : "t^" + std::to_string(e);
    }
    out += mono;
  }
  return out;
}

}  // namespace knotflow
