#include "activesep/scenario_io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

namespace activesep {

using nlohmann::json;

namespace {

double parse_angle(const json& v, const std::string& field) {
  if (v.is_number()) return v.get<double>();
  if (!v.is_string()) throw ValidationError(field + ": expected an angle");
  std::istringstream in(v.get<std::string>());
  double value = 0.0;
  std::string unit;
  if (!(in >> value)) throw ValidationError(field + ": cannot read angle '" + v.get<std::string>() + "'");
  in >> unit;
  if (unit.empty() || unit == "rad") return value;
  if (unit == "deg") return value * std::numbers::pi / 180.0;
  throw ValidationError(field + ": unknown angle unit '" + unit + "'");
}

double number(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key) || !obj.at(key).is_number()) throw ValidationError(where + "." + key + ": expected a number");
  return obj.at(key).get<double>();
}

std::vector<double> parse_grid(const json& v, const std::string& field, bool angular) {
  auto scalar = [&](const json& x) { return angular ? parse_angle(x, field) : x.get<double>(); };
  if (v.is_array()) {
    std::vector<double> out;
    for (const auto& x : v) {
      if (!angular && !x.is_number()) throw ValidationError(field + ": expected numbers");
      out.push_back(scalar(x));
    }
    return out;
  }
  if (v.is_object() && v.contains("from") && v.contains("to") && v.contains("step")) {
    return lattice_grid(scalar(v.at("from")), scalar(v.at("to")), scalar(v.at("step")));
  }
  throw ValidationError(field + ": expected an array or {from, to, step}");
}

template <typename E>
E parse_enum(const json& v, const std::string& field, std::initializer_list<std::pair<const char*, E>> names) {
  if (v.is_string()) {
    for (const auto& [name, value] : names) {
      if (v.get<std::string>() == name) return value;
    }
  }
  throw ValidationError(field + ": unrecognized value " + v.dump());
}

}  // namespace

Scenario scenario_from_json(const json& doc) {
  try {
    if (!doc.is_object()) throw ValidationError("scenario must be a JSON object");
    Scenario sc = Scenario::baseline();

    if (doc.contains("workspace")) {
      const auto& w = doc.at("workspace");
      sc.workspace = {number(w, "x_min", "workspace"), number(w, "x_max", "workspace"), number(w, "z_min", "workspace"),
                      number(w, "z_max", "workspace")};
    }
    if (doc.contains("classifier")) {
      const auto& c = doc.at("classifier");
      sc.classifier = {number(c, "rho", "classifier"), number(c, "c", "classifier")};
    }
    if (doc.contains("anchors")) {
      const auto& a = doc.at("anchors");
      if (!a.is_array() || a.size() != 4) throw ValidationError("anchors: expected exactly four points");
      for (std::size_t i = 0; i < 4; ++i) {
        const std::string where = "anchors[" + std::to_string(i) + "]";
        if (!a[i].contains("label") || !a[i].at("label").is_number_integer()) {
          throw ValidationError(where + ".label: expected an integer");
        }
        sc.anchors[i] = {number(a[i], "x", where), number(a[i], "z", where), a[i].at("label").get<int>()};
      }
    }
    if (doc.contains("initial_heading")) sc.initial_heading = parse_angle(doc.at("initial_heading"), "initial_heading");
    if (doc.contains("noise")) {
      const auto& n = doc.at("noise");
      if (n.is_null()) {
        sc.noise.reset();
      } else {
        NoiseField nf;
        for (const auto& c : n.at("trusted_centers")) {
          if (!c.is_array() || c.size() != 2) throw ValidationError("noise.trusted_centers: expected [x, z] pairs");
          nf.trusted_centers.push_back({c[0].get<double>(), c[1].get<double>()});
        }
        nf.radius = number(n, "radius", "noise");
        nf.keep_prob = number(n, "keep_prob", "noise");
        sc.noise = nf;
      }
    }
    if (doc.contains("v_grid")) sc.v_grid = parse_grid(doc.at("v_grid"), "v_grid", false);
    if (doc.contains("w_grid")) sc.w_grid = parse_grid(doc.at("w_grid"), "w_grid", true);
    if (doc.contains("varrho")) sc.varrho = doc.at("varrho").get<double>();
    if (doc.contains("horizon")) sc.horizon = doc.at("horizon").get<int>();
    if (doc.contains("seed")) sc.seed = doc.at("seed").get<std::uint64_t>();
    if (doc.contains("initial_box")) {
      const auto& b = doc.at("initial_box");
      sc.initial_box = {parse_angle(b.at("theta_min"), "initial_box.theta_min"),
                        parse_angle(b.at("theta_max"), "initial_box.theta_max"), number(b, "c_min", "initial_box"),
                        number(b, "c_max", "initial_box")};
    }
    if (doc.contains("controller")) {
      const auto& c = doc.at("controller");
      auto& opt = sc.controller;
      if (c.contains("heading_mode")) {
        opt.heading_mode = parse_enum<HeadingMode>(c.at("heading_mode"), "controller.heading_mode",
                                                   {{"free", HeadingMode::free}, {"bisector", HeadingMode::bisector}});
      }
      if (c.contains("bisector_tolerance")) {
        opt.bisector_tolerance = parse_angle(c.at("bisector_tolerance"), "controller.bisector_tolerance");
      }
      if (c.contains("weight_floor")) opt.weight_floor = c.at("weight_floor").get<double>();
      if (c.contains("stochastic_regions")) {
        opt.stochastic_regions = parse_enum<CertaintyRegions>(
            c.at("stochastic_regions"), "controller.stochastic_regions",
            {{"anchor", CertaintyRegions::anchor}, {"current", CertaintyRegions::current}});
      }
      if (c.contains("min_separation")) {
        if (c.at("min_separation").is_null()) {
          opt.min_separation.reset();
        } else {
          opt.min_separation = c.at("min_separation").get<double>();
        }
      }
      if (c.contains("credible_level")) opt.credible_level = c.at("credible_level").get<double>();
    }
    sc.validate();
    return sc;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed scenario: ") + e.what());
  }
}

json scenario_to_json(const Scenario& sc) {
  json doc;
  doc["workspace"] = {{"x_min", sc.workspace.x_min},
                      {"x_max", sc.workspace.x_max},
                      {"z_min", sc.workspace.z_min},
                      {"z_max", sc.workspace.z_max}};
  doc["classifier"] = {{"rho", sc.classifier.rho}, {"c", sc.classifier.c}};
  doc["anchors"] = json::array();
  for (const auto& a : sc.anchors) doc["anchors"].push_back({{"x", a.x}, {"z", a.z}, {"label", a.label}});
  doc["initial_heading"] = sc.initial_heading;
  if (sc.noise) {
    json centers = json::array();
    for (const auto& c : sc.noise->trusted_centers) centers.push_back({c.x, c.z});
    doc["noise"] = {{"trusted_centers", centers}, {"radius", sc.noise->radius}, {"keep_prob", sc.noise->keep_prob}};
  } else {
    doc["noise"] = nullptr;
  }
  doc["v_grid"] = sc.v_grid;
  doc["w_grid"] = sc.w_grid;
  doc["varrho"] = sc.varrho;
  doc["horizon"] = sc.horizon;
  doc["seed"] = sc.seed;
  doc["initial_box"] = {{"theta_min", sc.initial_box.theta_min},
                        {"theta_max", sc.initial_box.theta_max},
                        {"c_min", sc.initial_box.c_min},
                        {"c_max", sc.initial_box.c_max}};
  const auto& c = sc.controller;
  doc["controller"] = {
      {"heading_mode", c.heading_mode == HeadingMode::free ? "free" : "bisector"},
      {"bisector_tolerance", c.bisector_tolerance},
      {"weight_floor", c.weight_floor},
      {"stochastic_regions", c.stochastic_regions == CertaintyRegions::anchor ? "anchor" : "current"},
      {"min_separation", c.min_separation ? json(*c.min_separation) : json(nullptr)},
      {"credible_level", c.credible_level}};
  return doc;
}

void apply_override(json& doc, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw ValidationError("override '" + std::string(assignment) + "' is not key=value");
  }
  const std::string key(assignment.substr(0, eq));
  const std::string raw(assignment.substr(eq + 1));
  json value = json::parse(raw, nullptr, false);
  if (value.is_discarded()) value = raw;

  json* node = &doc;
  std::size_t start = 0;
  while (true) {
    const auto dot = key.find('.', start);
    const std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (part.empty()) throw ValidationError("override key '" + key + "' has an empty component");
    if (!node->is_object()) throw ValidationError("override key '" + key + "' descends into a non-object");
    if (dot == std::string::npos) {
      (*node)[part] = value;
      return;
    }
    node = &(*node)[part];
    if (node->is_null()) *node = json::object();
    start = dot + 1;
  }
}

Scenario load_scenario(const std::filesystem::path& path, std::span<const std::string> overrides) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open scenario file " + path.string());
  json doc = json::parse(in, nullptr, false, true);
  if (doc.is_discarded()) throw ValidationError("scenario file " + path.string() + " is not valid JSON");
  for (const auto& o : overrides) apply_override(doc, o);
  return scenario_from_json(doc);
}

std::string scenario_hash(const Scenario& sc) {
  const std::string text = scenario_to_json(sc).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<LabeledPoint> load_dataset_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open dataset file " + path.string());
  std::vector<LabeledPoint> out;
  std::string line;
  bool header_seen = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      if (line.rfind("x,z,label", 0) == 0) continue;
    }
    std::istringstream row(line);
    LabeledPoint p;
    char c1 = 0, c2 = 0;
    if (!(row >> p.x >> c1 >> p.z >> c2 >> p.label) || c1 != ',' || c2 != ',') {
      throw ValidationError(path.string() + ":" + std::to_string(lineno) + ": expected x,z,label");
    }
    if (p.label != 1 && p.label != -1) {
      throw ValidationError(path.string() + ":" + std::to_string(lineno) + ": label must be +1 or -1");
    }
    out.push_back(p);
  }
  return out;
}

}  // namespace activesep
