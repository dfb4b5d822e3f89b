#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace knotflow {

// Integer Laurent polynomial in t: coefficient i multiplies t^(low + i).
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(std::int64_t constant);  // NOLINT(google-explicit-constructor)
  LaurentPoly(int low, std::vector<std::int64_t> coeffs);

  static LaurentPoly monomial(std::int64_t c, int exponent);

  bool is_zero() const { return coeffs_.empty(); }
  int low() const { return low_; }
  int high() const { return low_ + static_cast<int>(coeffs_.size()) - 1; }
  int span() const { return is_zero() ? 0 : high() - low(); }
  std::int64_t coeff(int exponent) const;
  const std::vector<std::int64_t>& coeffs() const { return coeffs_; }

  std::int64_t eval_at_one() const;
  bool is_palindromic() const;

  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  LaurentPoly operator-() const;
  LaurentPoly shifted(int by) const;
  // t -> t^-1
  LaurentPoly inverted() const;

  // Representative of the class up to +-t^k: exponents centred on zero when
  // the span is even (else lowest exponent 0), sign chosen so that p(1) > 0,
  // or the leading coefficient is positive when p(1) = 0.
  LaurentPoly normalized() const;

  // Canonical text such as "t^-1 - 1 + t".
  std::string to_string() const;

  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

 private:
  void trim();

  int low_ = 0;
  std::vector<std::int64_t> coeffs_;
};

}  // namespace knotflow
