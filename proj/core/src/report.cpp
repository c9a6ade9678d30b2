#include "korops/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "korops/error.hpp"

namespace korops {

using Json = nlohmann::ordered_json;

namespace {

Json num(double x) {
  if (std::isfinite(x)) return x;
  return format_number(x);
}

double dbl(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "Infinity") return std::numeric_limits<double>::infinity();
    if (s == "-Infinity") return -std::numeric_limits<double>::infinity();
    if (s == "NaN") return std::numeric_limits<double>::quiet_NaN();
  }
  throw Error("report: expected a number, got " + j.dump());
}

Json point(const TubePoint& z) {
  Json a = Json::array();
  for (std::size_t k = 0; k < z.dim(); ++k) a.push_back(Json::array({num(z.re(k)), num(z.im(k))}));
  return a;
}

TubePoint point_of(const Json& j) {
  std::vector<Complex> c;
  for (const auto& p : j) c.emplace_back(dbl(p.at(0)), dbl(p.at(1)));
  return TubePoint(std::move(c));
}

Json numbers(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

std::vector<double> numbers_of(const Json& j) {
  std::vector<double> v;
  for (const auto& x : j) v.push_back(dbl(x));
  return v;
}

Json points(const std::vector<TubePoint>& v) {
  Json a = Json::array();
  for (const auto& z : v) a.push_back(point(z));
  return a;
}

std::vector<TubePoint> points_of(const Json& j) {
  std::vector<TubePoint> v;
  for (const auto& z : j) v.push_back(point_of(z));
  return v;
}

Json flags(const std::vector<bool>& v) {
  Json a = Json::array();
  for (bool b : v) a.push_back(b);
  return a;
}

std::vector<bool> flags_of(const Json& j) {
  std::vector<bool> v;
  for (const auto& b : j) v.push_back(b.get<bool>());
  return v;
}

bool is_scalar(const Json& j) { return !j.is_array() && !j.is_object(); }

bool flat(const Json& j) {
  if (is_scalar(j)) return true;
  for (const auto& e : j) {
    if (e.is_object()) return false;
    if (e.is_array()) {
      for (const auto& x : e) {
        if (!is_scalar(x) && !(x.is_array() && std::all_of(x.begin(), x.end(), is_scalar))) {
          return false;
        }
      }
    }
  }
  return true;
}

void write(const Json& j, std::string& out, int depth) {
  if (j.is_number_float()) {
    out += format_number(j.get<double>());
    return;
  }
  if (is_scalar(j)) {
    out += j.dump();
    return;
  }
  const bool obj = j.is_object();
  if (j.empty()) {
    out += obj ? "{}" : "[]";
    return;
  }
  if (!obj && flat(j)) {
    out += '[';
    bool first = true;
    for (const auto& e : j) {
      if (!first) out += ", ";
      first = false;
      write(e, out, depth + 1);
    }
    out += ']';
    return;
  }
  const std::string pad(2 * (depth + 1), ' ');
  out += obj ? "{\n" : "[\n";
  bool first = true;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!first) out += ",\n";
    first = false;
    out += pad;
    if (obj) {
      out += Json(it.key()).dump();
      out += ": ";
    }
    write(it.value(), out, depth + 1);
  }
  out += '\n';
  out += std::string(2 * depth, ' ');
  out += obj ? '}' : ']';
}

template <class E>
E verdict_of(const std::string& s, std::initializer_list<E> all) {
  for (E e : all) {
    if (s == to_string(e)) return e;
  }
  throw Error("report: unknown verdict " + s);
}

std::string csv_point(const TubePoint& z) {
  std::string s;
  for (std::size_t k = 0; k < z.dim(); ++k) {
    if (k) s += ';';
    s += format_number(z.re(k));
    s += z.im(k) < 0 ? "" : "+";
    s += format_number(z.im(k));
    s += 'i';
  }
  return s;
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "NaN";
  if (std::isinf(x)) return x > 0 ? "Infinity" : "-Infinity";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string report_to_json(const RunReport& r) {
  Json j;
  j["scenario"] = r.scenario;
  j["version"] = r.version;
  j["seed"] = r.seed;
  j["n"] = r.n;
  j["gamma"] = numbers(r.gamma);
  j["phi"] = r.phi;
  j["psi"] = r.psi;
  j["validation"] = {{"phi", r.phi_validation}, {"psi", r.psi_validation}};

  Json b;
  b["sup_estimate"] = num(r.boundedness.sup_estimate);
  b["witness"] = point(r.boundedness.witness);
  b["verdict"] = to_string(r.boundedness.verdict);
  b["evaluations"] = r.boundedness.evaluations;
  b["traces"] = Json::array();
  for (const auto& t : r.boundedness.traces) {
    b["traces"].push_back({{"name", t.name}, {"points", points(t.points)}, {"values", numbers(t.values)}});
  }
  j["boundedness"] = b;

  Json c;
  c["limsup_phi"] = num(r.compactness.limsup_phi);
  c["limsup_psi"] = num(r.compactness.limsup_psi);
  c["verdict"] = to_string(r.compactness.verdict);
  c["traces"] = Json::array();
  for (const auto& t : r.compactness.traces) {
    c["traces"].push_back({{"name", t.name},
                           {"points", points(t.points)},
                           {"phi_values", numbers(t.phi_values)},
                           {"psi_values", numbers(t.psi_values)},
                           {"phi_attributed", flags(t.phi_attributed)},
                           {"psi_attributed", flags(t.psi_attributed)}});
  }
  j["compactness"] = c;

  j["lower_bounds"] = Json::array();
  for (const auto& e : r.lower_bounds) {
    j["lower_bounds"].push_back({{"z", point(e.z)}, {"value", num(e.value)}});
  }
  j["psumming"] = Json::array();
  for (const auto& e : r.psumming) {
    j["psumming"].push_back({{"family_size", e.family_size}, {"p", num(e.p)}, {"ratio", num(e.ratio)}});
  }
  j["wall_ms"] = num(r.wall_ms);

  std::string out;
  write(j, out, 0);
  out += '\n';
  return out;
}

RunReport report_from_json(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(std::string("report: malformed JSON: ") + e.what());
  }
  try {
    RunReport r;
    r.scenario = j.at("scenario").get<std::string>();
    r.version = j.at("version").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.n = j.at("n").get<std::size_t>();
    r.gamma = numbers_of(j.at("gamma"));
    r.phi = j.at("phi").get<std::string>();
    r.psi = j.at("psi").get<std::string>();
    r.phi_validation = j.at("validation").at("phi").get<std::string>();
    r.psi_validation = j.at("validation").at("psi").get<std::string>();

    const auto& b = j.at("boundedness");
    r.boundedness.sup_estimate = dbl(b.at("sup_estimate"));
    r.boundedness.witness = point_of(b.at("witness"));
    r.boundedness.verdict = verdict_of<BoundednessVerdict>(
        b.at("verdict").get<std::string>(),
        {BoundednessVerdict::Bounded, BoundednessVerdict::Unbounded, BoundednessVerdict::Inconclusive});
    r.boundedness.evaluations = b.at("evaluations").get<int>();
    for (const auto& t : b.at("traces")) {
      r.boundedness.traces.push_back(
          {t.at("name").get<std::string>(), points_of(t.at("points")), numbers_of(t.at("values"))});
    }

    const auto& c = j.at("compactness");
    r.compactness.limsup_phi = dbl(c.at("limsup_phi"));
    r.compactness.limsup_psi = dbl(c.at("limsup_psi"));
    r.compactness.verdict = verdict_of<CompactnessVerdict>(
        c.at("verdict").get<std::string>(),
        {CompactnessVerdict::Compact, CompactnessVerdict::Noncompact, CompactnessVerdict::Inconclusive});
    for (const auto& t : c.at("traces")) {
      CompactnessTrace ct;
      ct.name = t.at("name").get<std::string>();
      ct.points = points_of(t.at("points"));
      ct.phi_values = numbers_of(t.at("phi_values"));
      ct.psi_values = numbers_of(t.at("psi_values"));
      ct.phi_attributed = flags_of(t.at("phi_attributed"));
      ct.psi_attributed = flags_of(t.at("psi_attributed"));
      r.compactness.traces.push_back(std::move(ct));
    }

    for (const auto& e : j.at("lower_bounds")) {
      r.lower_bounds.push_back({point_of(e.at("z")), dbl(e.at("value"))});
    }
    for (const auto& e : j.at("psumming")) {
      r.psumming.push_back({e.at("family_size").get<int>(), dbl(e.at("p")), dbl(e.at("ratio"))});
    }
    r.wall_ms = dbl(j.at("wall_ms"));
    return r;
  } catch (const Json::exception& e) {
    throw Error(std::string("report: missing or invalid field: ") + e.what());
  }
}

std::string report_to_csv(const RunReport& r) {
  std::ostringstream os;
  auto row = [&](const std::string& record, const std::string& name, const std::string& step,
                 const std::string& z, const std::string& value) {
    os << record << ',' << name << ',' << step << ',' << z << ',' << value << '\n';
  };
  os << "record,name,step,z,value\n";
  row("scenario", r.scenario, "", "", r.version);
  row("seed", "", "", "", std::to_string(r.seed));
  row("sup_estimate", "boundedness", "", csv_point(r.boundedness.witness),
      format_number(r.boundedness.sup_estimate));
  row("verdict", "boundedness", "", "", to_string(r.boundedness.verdict));
  row("limsup", "phi", "", "", format_number(r.compactness.limsup_phi));
  row("limsup", "psi", "", "", format_number(r.compactness.limsup_psi));
  row("verdict", "compactness", "", "", to_string(r.compactness.verdict));
  for (const auto& t : r.boundedness.traces) {
    for (std::size_t j = 0; j < t.values.size(); ++j) {
      row("trace_b", t.name, std::to_string(j + 1), csv_point(t.points[j]), format_number(t.values[j]));
    }
  }
  for (const auto& t : r.compactness.traces) {
    for (std::size_t j = 0; j < t.points.size(); ++j) {
      row("trace_phi", t.name, std::to_string(j + 1), csv_point(t.points[j]),
          format_number(t.phi_values[j]));
      row("trace_psi", t.name, std::to_string(j + 1), csv_point(t.points[j]),
          format_number(t.psi_values[j]));
    }
  }
  for (std::size_t i = 0; i < r.lower_bounds.size(); ++i) {
    row("lower_bound", "", std::to_string(i + 1), csv_point(r.lower_bounds[i].z),
        format_number(r.lower_bounds[i].value));
  }
  for (const auto& e : r.psumming) {
    row("psumming", "size=" + std::to_string(e.family_size) + ";p=" + format_number(e.p), "", "",
        format_number(e.ratio));
  }
  row("wall_ms", "", "", "", format_number(r.wall_ms));
  return os.str();
}

}  // namespace korops
