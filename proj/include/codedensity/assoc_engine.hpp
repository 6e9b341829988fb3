#pragma once

// Bounds on the number of non-isolated right vertices of a bipartite graph,
// computed from an abstract description of the graph (never a materialized
// one).
//
// Left-regular graph of degree D > 0:        |F| <= |V| * D.
// Association-regular graph, magnitude r:    |F| >= W_r^2 |V|^2 / sum_l W_l |alpha^-1(l)|.

#include <string>
#include <vector>

#include "codedensity/numeric.hpp"

namespace codedensity {

/// An association alpha of magnitude r on the left vertex set V, together with
/// the co-neighbourhood counts W_l of an alpha-regular graph on V.
struct AssociationProfile {
  unsigned magnitude = 0;
  Count v_size;
  std::vector<Count> class_sizes;  ///< |alpha^-1(l)| for l = 0..r
  std::vector<Count> w_values;     ///< W_l(alpha) for l = 0..r

  /// Left degree; W_r for an alpha-regular graph.
  const Count& degree() const { return w_values.at(magnitude); }
};

struct ProfileViolation {
  std::string code;  ///< stable identifier, e.g. "class-size sum"
  std::string detail;
};

struct ProfileReport {
  std::vector<ProfileViolation> violations;
  /// False when W_r = 0, which voids the lower bound.
  bool lower_bound_applicable = true;

  bool valid() const { return violations.empty(); }
  bool has(const std::string& code) const;
};

struct BoundPair {
  Rational lower;
  Count upper;
};

ProfileReport validate_profile(const AssociationProfile& profile);

/// |V| * degree. Throws ParameterError when degree == 0.
Count upper_bound_nonisolated(const Count& v_size, const Count& degree);

/// Exact rational lower bound. Throws ParameterError on an invalid profile or W_r = 0.
Rational lower_bound_nonisolated(const AssociationProfile& profile);

BoundPair nonisolated_bounds(const AssociationProfile& profile);

}  // namespace codedensity
