#include "codedensity/assoc_engine.hpp"

#include <algorithm>

#include "codedensity/errors.hpp"

namespace codedensity {

bool ProfileReport::has(const std::string& code) const {
  return std::any_of(violations.begin(), violations.end(), [&](const ProfileViolation& v) { return v.code == code; });
}

ProfileReport validate_profile(const AssociationProfile& profile) {
  ProfileReport report;
  const size_t expected = static_cast<size_t>(profile.magnitude) + 1;
  if (profile.class_sizes.size() != expected || profile.w_values.size() != expected) {
    report.violations.push_back({"class count", "expected " + std::to_string(expected) + " classes, got " +
                                                    std::to_string(profile.class_sizes.size()) + " sizes and " +
                                                    std::to_string(profile.w_values.size()) + " W values"});
    report.lower_bound_applicable = false;
    return report;
  }
  if (sgn(profile.v_size) <= 0) report.violations.push_back({"empty left side", "|V| must be positive"});

  Count sum = 0;
  bool negative = false;
  for (size_t l = 0; l < expected; ++l) {
    negative = negative || sgn(profile.class_sizes[l]) < 0 || sgn(profile.w_values[l]) < 0;
    sum += profile.class_sizes[l];
  }
  if (negative) report.violations.push_back({"negative entry", "class sizes and W values must be non-negative"});
  if (sum != profile.v_size * profile.v_size) {
    report.violations.push_back(
        {"class-size sum", "sum of class sizes is " + sum.get_str() + ", |V|^2 is " +
                               Count(profile.v_size * profile.v_size).get_str()});
  }
  if (profile.class_sizes[profile.magnitude] < profile.v_size) {
    report.violations.push_back({"diagonal class", "|alpha^-1(r)| = " + profile.class_sizes[profile.magnitude].get_str() +
                                                       " is smaller than |V| = " + profile.v_size.get_str()});
  }
  if (sgn(profile.w_values[profile.magnitude]) == 0) report.lower_bound_applicable = false;
  return report;
}

Count upper_bound_nonisolated(const Count& v_size, const Count& degree) {
  if (sgn(degree) <= 0) throw ParameterError("degree > 0", "left degree is " + degree.get_str());
  return v_size * degree;
}

Rational lower_bound_nonisolated(const AssociationProfile& profile) {
  ProfileReport report = validate_profile(profile);
  if (!report.valid()) {
    throw ParameterError("valid association profile", report.violations.front().code + " (" +
                                                          report.violations.front().detail + ")");
  }
  if (!report.lower_bound_applicable) throw ParameterError("W_r > 0", "lower bound inapplicable: W_r = 0");

  const Count& top = profile.degree();
  Count denominator = 0;
  for (size_t l = 0; l <= profile.magnitude; ++l) denominator += profile.w_values[l] * profile.class_sizes[l];
  Rational out(top * top * profile.v_size * profile.v_size, denominator);
  out.canonicalize();
  return out;
}

BoundPair nonisolated_bounds(const AssociationProfile& profile) {
  return {lower_bound_nonisolated(profile), upper_bound_nonisolated(profile.v_size, profile.degree())};
}

}  // namespace codedensity
