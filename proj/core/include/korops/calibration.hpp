#pragma once

// Seeded verification suites: metric inequalities, polydisc membership, the
// extremal test functions, and the lemma ratio cases with their calibrated caps.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace korops {

inline constexpr std::uint64_t kCalibrationSeed = 0x6b6f72656e626c75ULL;
inline constexpr long long kCalibrationSamples = 100000;

struct InequalityStats {
  long long checked = 0;
  long long violations = 0;
};

/// which = 1: Im z / Im w; 2: |z - conj w| / (2 Im z); 3: |(z - conj a)/(w - conj a)|.
/// Pairs are drawn with d(z,w) < delta by construction.
InequalityStats inequality_suite(int which, long long samples, std::uint64_t seed,
                                 double delta = 0.5);

struct PolydiscStats {
  long long checked = 0;
  long long disagreements = 0;  // outside the 1e-9 band
  long long in_band = 0;
  double torus_max_error = 0.0;
  long long torus_points = 0;
};

PolydiscStats polydisc_equivalence_suite(long long samples, std::uint64_t seed);

struct ExtremalStats {
  int instances = 0;
  double max_center_deviation = 0.0;  // f_a only: max |W f_a(a) - 1|
  double max_sampled = 0.0;
  long long nonfinite = 0;
};

/// Random n <= 3, gamma_k in [0.25, 4], centre a; `samples` points per instance.
ExtremalStats f_a_suite(int instances, int samples, std::uint64_t seed);
ExtremalStats g_am_suite(int instances, int samples, std::uint64_t seed);

/// sup of |f_a| over a 32-point grid of [-1,1] x [1/2, 2] for a = i 10^{-j}, j = 0..8.
std::vector<double> f_a_decay_trace();

struct LemmaStats {
  std::string id;
  double max_ratio = 0.0;
  long long samples = 0;
  long long nonfinite = 0;
};

std::vector<std::string> lemma_case_ids();
LemmaStats run_lemma_case(const std::string& id, long long samples, std::uint64_t seed);

std::string calibration_to_json(const std::vector<LemmaStats>& cases, long long samples,
                                 std::uint64_t seed);
std::map<std::string, double> calibration_from_json(std::string_view text);
/// Calibration compiled into the library from the committed fixture.
std::map<std::string, double> embedded_calibration();

}  // namespace korops
