#include "korops/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "korops/error.hpp"

namespace korops {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  throw DomainError("scenario line " + std::to_string(line) + ": " + msg);
}

template <class T>
T parse_number(std::string_view v, std::size_t line, const std::string& key) {
  T out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    fail(line, "invalid value '" + std::string(v) + "' for " + key);
  }
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(out)) fail(line, "non-finite value for " + key);
  }
  return out;
}

bool parse_bool(std::string_view v, std::size_t line, const std::string& key) {
  if (v == "true") return true;
  if (v == "false") return false;
  fail(line, "expected true or false for " + key);
}

std::string fmt(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

}  // namespace

CriterionConfig CfgOverrides::apply(CriterionConfig base, std::size_t n) const {
  if (seed) base.seed = *seed;
  if (starts) base.starts = *starts;
  if (refine_steps) base.refine_steps = *refine_steps;
  if (threshold) base.unbounded_threshold = *threshold;
  if (epsilon_compact) base.compact_epsilon = *epsilon_compact;
  if (schedule_ratio || schedule_steps) {
    if (base.schedules.empty()) base.schedules = CriterionConfig::default_schedules(n);
    for (auto& s : base.schedules) {
      if (schedule_ratio) s.ratio = *schedule_ratio;
      if (schedule_steps) s.steps = *schedule_steps;
    }
  }
  return base;
}

Scenario parse_scenario(std::string_view text) {
  Scenario sc;
  std::set<std::string> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail(line_no, "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (!seen.insert(key).second) fail(line_no, "duplicate key " + key);
    if (value.empty()) fail(line_no, "empty value for " + key);

    if (key == "name") {
      sc.name = value;
    } else if (key == "n") {
      sc.n = parse_number<std::size_t>(value, line_no, key);
      if (sc.n < 1) fail(line_no, "n must be >= 1");
    } else if (key == "gamma") {
      sc.gamma.clear();
      std::size_t start = 0;
      for (;;) {
        const auto comma = value.find(',', start);
        const auto part = trim(value.substr(start, comma == std::string_view::npos ? value.npos : comma - start));
        const double g = parse_number<double>(part, line_no, key);
        if (!(g > 0.0)) fail(line_no, "gamma components must be > 0");
        sc.gamma.push_back(g);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
      }
    } else if (key == "phi") {
      sc.phi_text = value;
    } else if (key == "psi") {
      sc.psi_text = value;
    } else if (key == "expected.bounded") {
      sc.expected_bounded = parse_bool(value, line_no, key);
    } else if (key == "expected.compact") {
      sc.expected_compact = parse_bool(value, line_no, key);
    } else if (key == "cfg.seed") {
      sc.cfg.seed = parse_number<std::uint64_t>(value, line_no, key);
    } else if (key == "cfg.starts") {
      sc.cfg.starts = parse_number<int>(value, line_no, key);
    } else if (key == "cfg.refine_steps") {
      sc.cfg.refine_steps = parse_number<int>(value, line_no, key);
    } else if (key == "cfg.threshold") {
      sc.cfg.threshold = parse_number<double>(value, line_no, key);
    } else if (key == "cfg.epsilon_compact") {
      sc.cfg.epsilon_compact = parse_number<double>(value, line_no, key);
    } else if (key == "cfg.schedule_ratio") {
      sc.cfg.schedule_ratio = parse_number<double>(value, line_no, key);
    } else if (key == "cfg.schedule_steps") {
      sc.cfg.schedule_steps = parse_number<int>(value, line_no, key);
    } else {
      fail(line_no, "unknown key " + key);
    }
  }
  for (const char* k : {"name", "n", "gamma", "phi", "psi"}) {
    if (!seen.count(k)) throw DomainError(std::string("scenario is missing required key ") + k);
  }
  if (sc.gamma.size() != sc.n) {
    throw DomainError("scenario gamma has " + std::to_string(sc.gamma.size()) +
                      " components but n = " + std::to_string(sc.n));
  }
  sc.phi();
  sc.psi();
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open scenario file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

std::string Scenario::to_text() const {
  std::ostringstream os;
  os << "name = " << name << "\n";
  os << "n = " << n << "\n";
  os << "gamma = ";
  for (std::size_t k = 0; k < gamma.size(); ++k) os << (k ? ", " : "") << fmt(gamma[k]);
  os << "\nphi = " << phi_text << "\npsi = " << psi_text << "\n";
  if (expected_bounded) os << "expected.bounded = " << (*expected_bounded ? "true" : "false") << "\n";
  if (expected_compact) os << "expected.compact = " << (*expected_compact ? "true" : "false") << "\n";
  if (cfg.seed) os << "cfg.seed = " << *cfg.seed << "\n";
  if (cfg.starts) os << "cfg.starts = " << *cfg.starts << "\n";
  if (cfg.refine_steps) os << "cfg.refine_steps = " << *cfg.refine_steps << "\n";
  if (cfg.threshold) os << "cfg.threshold = " << fmt(*cfg.threshold) << "\n";
  if (cfg.epsilon_compact) os << "cfg.epsilon_compact = " << fmt(*cfg.epsilon_compact) << "\n";
  if (cfg.schedule_ratio) os << "cfg.schedule_ratio = " << fmt(*cfg.schedule_ratio) << "\n";
  if (cfg.schedule_steps) os << "cfg.schedule_steps = " << *cfg.schedule_steps << "\n";
  return os.str();
}

std::vector<Scenario> builtin_scenarios() {
  std::vector<Scenario> out;
  auto add = [&](std::string name, std::size_t n, std::vector<double> gamma, std::string phi,
                 std::string psi, bool bounded, std::optional<bool> compact) {
    Scenario s;
    s.name = std::move(name);
    s.n = n;
    s.gamma = std::move(gamma);
    s.phi_text = std::move(phi);
    s.psi_text = std::move(psi);
    s.expected_bounded = bounded;
    s.expected_compact = compact;
    out.push_back(std::move(s));
  };
  add("identity-pair", 1, {1.0}, "z1", "z1", true, true);
  add("translation-1d", 1, {1.0}, "z1", "z1 + i", true, false);
  add("translation-2d", 2, {1.0, 1.0}, "z1; z2", "z1 + i; z2 + i", true, false);
  add("dilation-1d", 1, {1.0}, "z1", "2*z1", true, false);
  add("inversion-shift-1d", 1, {1.0}, "-1/z1", "-1/z1 + i", false, false);
  return out;
}

std::optional<Scenario> find_builtin(std::string_view name) {
  for (auto& s : builtin_scenarios()) {
    if (s.name == name) return s;
  }
  return std::nullopt;
}

}  // namespace korops
