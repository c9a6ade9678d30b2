#pragma once

// Run reports: JSON with 17 significant digits (lossless for doubles) and a
// flat CSV view.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "korops/criteria.hpp"

namespace korops {

struct LowerBoundEntry {
  TubePoint z = TubePoint::unit(1);
  double value = 0.0;
};

struct PsummingEntry {
  int family_size = 0;
  double p = 1.0;
  double ratio = 0.0;
};

struct RunReport {
  std::string scenario;
  std::string version;
  std::uint64_t seed = 0;
  std::size_t n = 1;
  std::vector<double> gamma;
  std::string phi;
  std::string psi;
  std::string phi_validation;
  std::string psi_validation;
  BoundednessReport boundedness;
  CompactnessReport compactness;
  std::vector<LowerBoundEntry> lower_bounds;
  std::vector<PsummingEntry> psumming;
  double wall_ms = 0.0;
};

std::string report_to_json(const RunReport& r);
RunReport report_from_json(std::string_view text);
std::string report_to_csv(const RunReport& r);

/// %.17g, with non-finite values spelled Infinity, -Infinity, NaN.
std::string format_number(double x);

}  // namespace korops
