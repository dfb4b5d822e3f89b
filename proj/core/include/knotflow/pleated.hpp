#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "knotflow/template.hpp"
#include "knotflow/universality.hpp"

namespace knotflow {

enum class Side { L, R };

// order[i] is the 1-based position of gamma_(i+1) along the stable arc; the
// fold joining gamma_(i+1) and gamma_(i+2) lies on side sides[i].
struct PleatingSignature {
  std::vector<int> order;
  std::vector<Side> sides;

  friend bool operator==(const PleatingSignature&, const PleatingSignature&) = default;
};

using TwistSignature = std::vector<int>;

struct PleatedSystem {
  std::size_t n = 0;
  PleatingSignature pleating;
  TwistSignature twists;
  Carrier carrier = Carrier::Unknot;

  friend bool operator==(const PleatedSystem&, const PleatedSystem&) = default;
};

enum class PleatViolationKind { NotAPermutation, SideCount, SidesDoNotAlternate, SelfIntersectingPleat };
std::string_view to_string(PleatViolationKind k);

struct PleatViolation {
  PleatViolationKind kind;
  std::size_t first = 0;   // fold index (or position) involved
  std::size_t second = 0;  // second fold of a crossing pair
  std::string message;
};

std::vector<PleatViolation> validate_pleating(const PleatingSignature& p);

// Index of the first entry that is not one step from its predecessor.
std::optional<std::size_t> check_incremental(const TwistSignature& tau);

// +1 for a counterclockwise fold, -1 for a clockwise one.
std::vector<int> fold_rotations(const PleatingSignature& p);
TwistSignature derive_twists(const PleatingSignature& p, int base_twist = 0);

// One branch line "p" with strips g1..gn. Odd-twist strips are Moebius bands
// carrying tau_i half twists; even-twist strips carry 2 tau_i half twists.
Template build_pretemplate(const PleatedSystem& s);

enum class Classification { UniversalByThm43, NotUniversalByGenus, CertificateFound, Inconclusive };
std::string_view to_string(Classification c);

struct ClassifyOptions {
  std::size_t max_period = 8;
  std::optional<int> twist_kappa_prime;  // forwarded to the certificate search
  unsigned jobs = 1;
};

struct ClassificationResult {
  Classification kind = Classification::Inconclusive;
  Template pretemplate;
  // Template the certificate lives on: the zero-twist subtemplate or the
  // full pretemplate.
  std::optional<Template> searched;
  std::optional<UniversalityCertificate> certificate;
  bool certificate_verified = false;
  // Knotted carriers: orbit count and smallest genus bound seen.
  std::size_t orbits_checked = 0;
  int min_genus_bound = 0;
  bool any_unknot = false;
};

ClassificationResult classify_bifurcation(const PleatedSystem& s, const ClassifyOptions& opt);
ClassificationResult classify_bifurcation(const PleatedSystem& s, std::size_t max_period);

// `pleat n=<int> order=<perm> sides=<L/R string> tau=<ints> carrier=<unknot|trefoil>`
PleatedSystem parse_pleat(std::string_view text);
std::string format_pleat(const PleatedSystem& s);
PleatedSystem load_pleat(const std::string& path);

// The four three-strip pleatings of the local catalogue; the last two mirror
// the first two.
std::vector<PleatedSystem> catalogue_three_strip();

// Uniformly random valid pleating on n points, by rejection.
PleatingSignature random_pleating(std::size_t n, std::mt19937_64& rng);

}  // namespace knotflow
