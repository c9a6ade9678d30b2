#include "korops/harness.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "korops/calibration.hpp"
#include "korops/error.hpp"
#include "korops/random.hpp"
#include "korops/version.hpp"

namespace korops {

CriterionConfig effective_config(const Scenario& s, const CfgOverrides& flags) {
  CriterionConfig cfg = flags.apply(s.cfg.apply(CriterionConfig{}, s.n), s.n);
  cfg.validate();
  return cfg;
}

namespace {

std::string validation_text(const ValidationReport& v) {
  std::string out = to_string(v.verdict);
  if (v.verdict == ValidationVerdict::NumericallyValid) {
    out += " (" + std::to_string(v.samples_checked) + " samples)";
  }
  return out;
}

}  // namespace

RunReport run_check(const Scenario& s, const CheckOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  const CriterionConfig cfg = effective_config(s, opts.flags);
  const Weight gamma = s.weight();
  const SelfMap phi = s.phi();
  const SelfMap psi = s.psi();
  if (gamma.dim() != s.n) throw DimensionMismatch(s.n, gamma.dim());

  RunReport r;
  r.scenario = s.name;
  r.version = KOROPS_VERSION;
  r.seed = cfg.seed;
  r.n = s.n;
  r.gamma = s.gamma;
  r.phi = phi.to_string();
  r.psi = psi.to_string();

  const std::uint64_t vseed = derive_seed(cfg.seed, 0x76616c);
  require_self_maps(phi, psi, vseed);
  r.phi_validation = validation_text(validate(phi, 1000, vseed));
  r.psi_validation = validation_text(validate(psi, 1000, vseed));

  r.boundedness = estimate_sup_boundedness(phi, psi, gamma, cfg);
  r.compactness = compactness_limits(phi, psi, gamma, cfg);
  for (const auto& z : probe_points(cfg, s.n)) {
    r.lower_bounds.push_back({z, lower_bound_at(phi, psi, gamma, z)});
  }
  if (!opts.psumming_sizes.empty()) {
    const int largest = *std::max_element(opts.psumming_sizes.begin(), opts.psumming_sizes.end());
    const auto family = random_f_family(gamma, largest, derive_seed(cfg.seed, 0x66616d));
    for (int size : opts.psumming_sizes) {
      const std::vector<AnalyticFn> head(family.begin(), family.begin() + size);
      r.psumming.push_back(
          {size, 1.0, psumming_ratio(phi, psi, gamma, head, opts.psumming_xi, 1.0, cfg.budget())});
    }
  }
  if (opts.wall_clock) {
    r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                    .count();
  }
  return r;
}

int exit_code_for(const RunReport& r) {
  if (r.boundedness.verdict == BoundednessVerdict::Inconclusive ||
      r.compactness.verdict == CompactnessVerdict::Inconclusive) {
    return kExitInconclusive;
  }
  return kExitOk;
}

std::string render_report(const RunReport& r, ReportFormat format) {
  return format == ReportFormat::Json ? report_to_json(r) : report_to_csv(r);
}

void print_summary(const RunReport& r, std::ostream& out) {
  out << "scenario     " << r.scenario << " (n = " << r.n << ", seed " << r.seed << ")\n";
  out << "phi          " << r.phi << "  [" << r.phi_validation << "]\n";
  out << "psi          " << r.psi << "  [" << r.psi_validation << "]\n";
  out << "boundedness  " << to_string(r.boundedness.verdict)
      << "  sup B ~ " << format_number(r.boundedness.sup_estimate) << "\n";
  out << "compactness  " << to_string(r.compactness.verdict)
      << "  limsup phi ~ " << format_number(r.compactness.limsup_phi)
      << ", psi ~ " << format_number(r.compactness.limsup_psi) << "\n";
  double lb = 0.0;
  for (const auto& e : r.lower_bounds) lb = std::max(lb, e.value);
  out << "lower bound  " << format_number(lb) << " (max over " << r.lower_bounds.size()
      << " probe points)\n";
  for (const auto& p : r.psumming) {
    out << "p-summing    size " << p.family_size << ": " << format_number(p.ratio) << "\n";
  }
}

void write_atomically(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot open " + tmp.string() + " for writing");
    f << content;
    f.flush();
    if (!f) throw Error("failed writing " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error("cannot rename onto " + path + ": " + ec.message());
  }
}

std::vector<SuiteLine> verify_lemmas(const VerifyOptions& opts) {
  if (opts.samples < 100) throw DomainError("--samples must be >= 100");
  if (opts.inequality_samples < 100) throw DomainError("--inequality-samples must be >= 100");
  std::vector<SuiteLine> out;
  auto num = [](double x) { return format_number(x); };

  for (int which = 1; which <= 3; ++which) {
    const auto st = inequality_suite(which, opts.inequality_samples, opts.seed);
    out.push_back({"inequality-" + std::to_string(which), st.violations == 0 && st.checked > 0,
                   std::to_string(st.violations) + " violations / " + std::to_string(st.checked)});
  }
  {
    const auto st = polydisc_equivalence_suite(opts.inequality_samples, opts.seed);
    out.push_back({"polydisc-equivalence",
                   st.disagreements == 0 && st.torus_max_error <= 1e-12,
                   std::to_string(st.disagreements) + " disagreements, " +
                       std::to_string(st.in_band) + " in band, torus error " +
                       num(st.torus_max_error)});
  }
  {
    const auto st = f_a_suite(100, static_cast<int>(opts.samples), opts.seed);
    out.push_back({"f_a-normalization",
                   st.max_center_deviation < 1e-10 && st.max_sampled <= 1.0 + 1e-9 &&
                       st.nonfinite == 0,
                   "deviation at a " + num(st.max_center_deviation) + ", sampled max " +
                       num(st.max_sampled)});
  }
  {
    const auto st = g_am_suite(100, static_cast<int>(opts.samples), opts.seed);
    out.push_back({"g_am-bound", st.max_sampled <= 1.0 + 1e-9 && st.nonfinite == 0,
                   "sampled max " + num(st.max_sampled)});
  }
  {
    const auto trace = f_a_decay_trace();
    out.push_back({"f_a-decay", trace.back() < 1e-6, "final " + num(trace.back())});
  }
  const auto caps = embedded_calibration();
  for (const auto& id : lemma_case_ids()) {
    const auto st = run_lemma_case(id, opts.samples, opts.seed);
    const auto it = caps.find(id);
    if (it == caps.end()) {
      out.push_back({id, false, "no calibration value"});
      continue;
    }
    const double cap = 2.0 * it->second;
    const bool ok = st.nonfinite == 0 && std::isfinite(st.max_ratio) && st.max_ratio <= cap;
    out.push_back({id, ok, "max " + num(st.max_ratio) + ", cap " + num(cap) + ", nonfinite " +
                               std::to_string(st.nonfinite)});
  }
  return out;
}

int cmd_verify_lemmas(const VerifyOptions& opts, std::ostream& out) {
  const auto lines = verify_lemmas(opts);
  bool all = true;
  for (const auto& l : lines) {
    out << (l.pass ? "ok    " : "FAIL  ") << std::left << std::setw(24) << l.name << l.detail
        << "\n";
    all = all && l.pass;
  }
  return all ? kExitOk : kExitError;
}

void cmd_scenarios_list(std::ostream& out) {
  auto yn = [](const std::optional<bool>& b) {
    return b ? std::string(*b ? "true" : "false") : std::string("-");
  };
  out << std::left << std::setw(22) << "name" << std::setw(4) << "n" << std::setw(10) << "bounded"
      << std::setw(10) << "compact" << "phi | psi\n";
  for (const auto& s : builtin_scenarios()) {
    out << std::setw(22) << s.name << std::setw(4) << s.n << std::setw(10)
        << yn(s.expected_bounded) << std::setw(10) << yn(s.expected_compact) << s.phi_text
        << " | " << s.psi_text << "\n";
  }
}

}  // namespace korops
