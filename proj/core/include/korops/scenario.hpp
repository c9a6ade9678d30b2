#pragma once

// Scenario files: UTF-8 "key = value" lines, '#' starts a comment.
//
//   name, n, gamma (comma separated), phi, psi      required
//   expected.bounded, expected.compact              true | false
//   cfg.seed, cfg.starts, cfg.refine_steps, cfg.threshold,
//   cfg.epsilon_compact, cfg.schedule_ratio, cfg.schedule_steps

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "korops/criteria.hpp"

namespace korops {

struct CfgOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> starts;
  std::optional<int> refine_steps;
  std::optional<double> threshold;
  std::optional<double> epsilon_compact;
  std::optional<double> schedule_ratio;
  std::optional<int> schedule_steps;

  /// Overrides on top of `base`; schedule keys rewrite every schedule for dimension n.
  CriterionConfig apply(CriterionConfig base, std::size_t n) const;
};

struct Scenario {
  std::string name;
  std::size_t n = 1;
  std::vector<double> gamma;
  std::string phi_text;
  std::string psi_text;
  std::optional<bool> expected_bounded;
  std::optional<bool> expected_compact;
  CfgOverrides cfg;

  Weight weight() const { return Weight(gamma); }
  SelfMap phi() const { return parse_selfmap(phi_text, n); }
  SelfMap psi() const { return parse_selfmap(psi_text, n); }
  std::string to_text() const;
};

/// Errors carry the line number.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::string& path);

std::vector<Scenario> builtin_scenarios();
std::optional<Scenario> find_builtin(std::string_view name);

}  // namespace korops
