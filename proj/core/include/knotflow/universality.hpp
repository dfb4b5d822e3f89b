#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "knotflow/invariants.hpp"
#include "knotflow/symbolic.hpp"
#include "knotflow/template.hpp"

namespace knotflow {

// A pair of disjoint closed orbits witnessing the sufficient condition for a
// template to be universal: both are unknots, they are unlinked, the first
// has twist 0 and the second nonzero twist, and they cross at a branch line
// between adjacent stacking slots with sign opposite to the second twist.
struct UniversalityCertificate {
  Word kappa;
  Word kappa_prime;
  int twist_kappa = 0;
  int twist_kappa_prime = 0;
  std::string witness_line;
  int crossing_sign = 0;
  Verdict unknot_kappa;
  Verdict unknot_kappa_prime;
  Verdict separable;
};

struct UniversalityQuery {
  std::size_t max_period = 8;
  // Restrict the search to pairs whose second orbit has exactly this twist.
  std::optional<int> twist_kappa_prime;
  std::size_t orbit_cap = kDefaultOrbitCap;
  unsigned jobs = 1;
};

std::optional<UniversalityCertificate> check_universal_sufficient(const Template& t, std::size_t max_period);
std::optional<UniversalityCertificate> check_universal_sufficient(const Template& t, const UniversalityQuery& q);

bool verify_certificate(const Template& t, const UniversalityCertificate& cert);

// Text block echoing words, twists, witness line, sign and both verdicts.
std::string format_certificate(const Template& t, const UniversalityCertificate& cert);

}  // namespace knotflow
