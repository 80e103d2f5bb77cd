#include "skewform/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "skewform/error.hpp"
#include "skewform/expression.hpp"

namespace skewform {
namespace {

const std::map<std::string, std::set<std::string>> kFixedKeys = {
    {"model", {"kind", "alpha", "beta", "g", "coriolis_f0", "coriolis_beta"}},
    {"grid", {"order", "n", "min", "max", "periodic"}},
    {"time", {"mode", "dt", "t_end", "cfl", "stride", "dual_coefficients"}},
    {"output", {"csv", "state"}},
    {"analysis", {"state", "perturbation", "normal", "position", "formulation"}},
};
const std::set<std::string> kFieldSections = {"initial", "mean", "forcing"};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(const ConfigDocument& doc, const ConfigEntry& e,
                    const std::string& text) {
  try {
    return Expression::parse(text)(Position{0.0, 0.0, 0.0});
  } catch (const ConfigError& err) {
    doc.fail(e, err.what());
  }
}

}  // namespace

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(text);
  while (std::getline(is, cur, ',')) out.push_back(trim(cur));
  if (!text.empty() && text.back() == ',') out.push_back("");
  return out;
}

ConfigDocument ConfigDocument::parse(const std::string& text, const std::string& source) {
  ConfigDocument doc;
  doc.source_ = source;
  std::istringstream is(text);
  std::string raw;
  std::string section;
  int line = 0;
  while (std::getline(is, raw)) {
    ++line;
    const auto hash = raw.find_first_of("#;");
    const std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    const ConfigEntry here{s, line};
    if (s.front() == '[') {
      if (s.back() != ']') doc.fail(here, "malformed section header");
      section = trim(s.substr(1, s.size() - 2));
      if (!kFixedKeys.count(section) && !kFieldSections.count(section) &&
          section != "boundary") {
        doc.fail(here, "unknown section [" + section + "]");
      }
      if (doc.sections_.count(section)) doc.fail(here, "duplicate section [" + section + "]");
      doc.sections_[section];
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) doc.fail(here, "expected 'key = value'");
    if (section.empty()) doc.fail(here, "key outside of any section");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (key.empty()) doc.fail(here, "empty key");
    if (value.empty()) doc.fail(here, "empty value for '" + key + "'");
    const auto fixed = kFixedKeys.find(section);
    if (fixed != kFixedKeys.end() && !fixed->second.count(key)) {
      doc.fail(here, "unknown key '" + key + "' in [" + section + "]");
    }
    auto& sec = doc.sections_[section];
    if (sec.count(key)) doc.fail(here, "duplicate key '" + key + "'");
    sec[key] = ConfigEntry{value, line};
  }
  return doc;
}

ConfigDocument ConfigDocument::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

const std::map<std::string, ConfigEntry>& ConfigDocument::section(const std::string& s) const {
  static const std::map<std::string, ConfigEntry> kEmpty;
  const auto it = sections_.find(s);
  return it == sections_.end() ? kEmpty : it->second;
}

const ConfigEntry* ConfigDocument::find(const std::string& s, const std::string& key) const {
  const auto& sec = section(s);
  const auto it = sec.find(key);
  return it == sec.end() ? nullptr : &it->second;
}

std::string ConfigDocument::text(const std::string& s, const std::string& key,
                                 const std::string& fallback) const {
  const ConfigEntry* e = find(s, key);
  return e ? e->value : fallback;
}

double ConfigDocument::number(const std::string& s, const std::string& key,
                              double fallback) const {
  const ConfigEntry* e = find(s, key);
  if (!e) return fallback;
  return parse_number(*this, *e, e->value);
}

void ConfigDocument::fail(const ConfigEntry& e, const std::string& what) const {
  throw ConfigError(source_ + ":" + std::to_string(e.line) + ": " + what);
}

void ConfigDocument::fail(const std::string& what) const {
  throw ConfigError(source_ + ": " + what);
}

std::vector<std::string> axis_names(ModelKind kind) {
  switch (kind) {
    case ModelKind::burgers1d:
      return {"x"};
    case ModelKind::euler2d:
    case ModelKind::swe2d:
      return {"x", "y"};
    case ModelKind::euler3d_cyl:
      return {"r", "theta", "z"};
  }
  return {};
}

namespace {

template <class F>
auto guarded(const ConfigDocument& doc, const ConfigEntry* e, F&& f) {
  try {
    return f();
  } catch (const ConfigError& err) {
    if (e) doc.fail(*e, err.what());
    throw;
  } catch (const Error& err) {
    if (e) doc.fail(*e, err.what());
    doc.fail(err.what());
  }
}

std::vector<double> per_axis(const ConfigDocument& doc, const std::string& key, int dim,
                             double fallback) {
  const ConfigEntry* e = doc.find("grid", key);
  if (!e) return std::vector<double>(dim, fallback);
  const auto items = split_list(e->value);
  if (items.size() != 1 && static_cast<int>(items.size()) != dim) {
    doc.fail(*e, "'" + key + "' needs 1 or " + std::to_string(dim) + " values");
  }
  std::vector<double> out;
  for (int a = 0; a < dim; ++a) {
    out.push_back(parse_number(doc, *e, items.size() == 1 ? items[0] : items[a]));
  }
  return out;
}

ModelSpec read_model(const ConfigDocument& doc) {
  const ConfigEntry* kind = doc.find("model", "kind");
  if (!kind) doc.fail("[model] kind is required");
  ModelParams p;
  p.alpha = doc.number("model", "alpha", p.alpha);
  p.beta = doc.number("model", "beta", p.beta);
  p.g = doc.number("model", "g", p.g);
  p.coriolis_f0 = doc.number("model", "coriolis_f0", p.coriolis_f0);
  p.coriolis_beta = doc.number("model", "coriolis_beta", p.coriolis_beta);
  return guarded(doc, kind, [&] { return make_model(parse_model_kind(kind->value), p); });
}

Grid read_grid(const ConfigDocument& doc, const ModelSpec& model, int level) {
  const int dim = model.dim();
  const auto names = axis_names(model.kind());
  const ConfigEntry* ne = doc.find("grid", "n");
  if (!ne) doc.fail("[grid] n is required");
  const auto ns = per_axis(doc, "n", dim, 0.0);
  const auto mins = per_axis(doc, "min", dim, 0.0);
  const auto maxs = per_axis(doc, "max", dim, 1.0);
  std::vector<bool> periodic(dim, false);
  if (const ConfigEntry* pe = doc.find("grid", "periodic")) {
    for (const std::string& item : split_list(pe->value)) {
      if (item == "none") continue;
      bool found = false;
      for (int a = 0; a < dim; ++a) {
        if (item == names[a] || (a < 3 && item == std::string(1, "xyz"[a]))) {
          periodic[a] = true;
          found = true;
        }
      }
      if (!found) doc.fail(*pe, "unknown axis '" + item + "' in periodic list");
    }
  }
  std::vector<Axis> axes;
  for (int a = 0; a < dim; ++a) {
    if (ns[a] < 2 || ns[a] != std::floor(ns[a])) doc.fail(*ne, "node counts must be integers >= 2");
    std::size_t n = static_cast<std::size_t>(ns[a]);
    n = periodic[a] ? n << level : ((n - 1) << level) + 1;
    axes.push_back(Axis{n, mins[a], maxs[a], periodic[a]});
  }
  return guarded(doc, ne, [&] { return Grid(axes); });
}

StateField read_field(const ConfigDocument& doc, const std::string& sec,
                      const Discretization& d, bool required) {
  const auto& entries = doc.section(sec);
  const ModelSpec& model = d.model;
  const bool swe = model.kind() == ModelKind::swe2d;
  bool primitive = false;
  if (const ConfigEntry* v = doc.find(sec, "variables")) {
    if (v->value == "primitive") {
      if (!swe) doc.fail(*v, "variables = primitive is available for swe2d only");
      primitive = true;
    } else if (v->value != "conservative") {
      doc.fail(*v, "variables must be 'conservative' or 'primitive'");
    }
  }
  const std::vector<std::string> names =
      primitive ? std::vector<std::string>{"phi", "u", "v"} : model.component_names();
  for (const auto& [key, e] : entries) {
    if (key == "variables") continue;
    if (std::find(names.begin(), names.end(), key) == names.end()) {
      std::string list;
      for (const auto& n : names) list += (list.empty() ? "" : ", ") + n;
      doc.fail(e, "unknown key '" + key + "' in [" + sec + "] (components: " + list + ")");
    }
  }
  StateField f = d.zero_state();
  for (std::size_t c = 0; c < names.size(); ++c) {
    const ConfigEntry* e = doc.find(sec, names[c]);
    if (!e) {
      if (required) doc.fail("[" + sec + "] is missing component '" + names[c] + "'");
      continue;
    }
    Expression ex = guarded(doc, e, [&] { return Expression::parse(e->value); });
    for (std::size_t node = 0; node < d.nodes(); ++node) {
      f(c, node) = ex(d.grid().position(node));
    }
    if (!f.all_finite()) doc.fail(*e, "expression produces non-finite values");
  }
  if (primitive) {
    return guarded(doc, doc.find(sec, "variables"), [&] { return swe_transform(f); });
  }
  return f;
}

SatConfig read_boundary(const ConfigDocument& doc, const Discretization& d,
                        std::vector<std::string>& face_names) {
  const Grid& g = d.grid();
  const auto names = axis_names(d.model.kind());
  SatConfig sat = SatConfig::natural(g);
  std::set<std::string> known;
  for (int a = 0; a < g.dim(); ++a) {
    for (Side side : {Side::low, Side::high}) {
      const std::string base = names[a] + (side == Side::low ? "_low" : "_high");
      const Face f{a, side};
      if (!g.axis(a).periodic) face_names.push_back(base);
      known.insert(base);
      known.insert(base + "_data");
      known.insert(base + "_sigma");
      const ConfigEntry* e = doc.find("boundary", base);
      if (!e) continue;
      FaceClosure fc;
      fc.kind = guarded(doc, e, [&] { return parse_closure(e->value); });
      fc.sigma = doc.number("boundary", base + "_sigma", 1.0);
      if (const ConfigEntry* de = doc.find("boundary", base + "_data")) {
        const auto items = split_list(de->value);
        const std::size_t want = fc.kind == Closure::swe_two_condition ? 2 : d.n_comp();
        if (items.size() != want) {
          doc.fail(*de, "expected " + std::to_string(want) + " data expressions");
        }
        const auto nodes = g.face_nodes(f);
        fc.data.resize(want * nodes.size());
        for (std::size_t c = 0; c < want; ++c) {
          const Expression ex = guarded(doc, de, [&] { return Expression::parse(items[c]); });
          for (std::size_t i = 0; i < nodes.size(); ++i)
            fc.data[c * nodes.size() + i] = ex(g.position(nodes[i]));
        }
      }
      sat.set(f, fc);
    }
  }
  for (const auto& [key, e] : doc.section("boundary")) {
    if (!known.count(key)) doc.fail(e, "unknown key '" + key + "' in [boundary]");
  }
  guarded(doc, nullptr, [&] {
    validate_sat(d, sat);
    return 0;
  });
  return sat;
}

}  // namespace

LoadedScenario load_scenario(const ConfigDocument& doc) { return load_scenario(doc, 0); }

LoadedScenario load_scenario(const ConfigDocument& doc, int level) {
  const ModelSpec model = read_model(doc);
  const ConfigEntry* oe = doc.find("grid", "order");
  const SbpOrder order =
      oe ? guarded(doc, oe, [&] { return parse_sbp_order(oe->value); }) : SbpOrder::second;
  Grid grid = read_grid(doc, model, level);
  const ConfigEntry* ne = doc.find("grid", "n");
  Discretization disc = guarded(doc, ne, [&] { return Discretization(model, grid, order); });

  const std::string mode_text = doc.text("time", "mode", "nonlinear");
  const ConfigEntry* me = doc.find("time", "mode");
  LoadedScenario out{Scenario{disc, MarchMode::nonlinear, {}, {}, {}, {}, {}}, false, {}, {}, {}};
  Scenario& s = out.scenario;
  if (mode_text == "identity") {
    out.identity = true;
  } else {
    s.mode = guarded(doc, me, [&] { return parse_march_mode(mode_text); });
    if (!model.norm_invertible()) {
      doc.fail(*me, to_string(model.kind()) +
                        " has a singular norm matrix and cannot be time-marched; "
                        "use mode = identity");
    }
  }
  s.initial = read_field(doc, "initial", disc, true);
  const bool dual_frozen = doc.text("time", "dual_coefficients", "nonlinear") == "frozen";
  if (const ConfigEntry* dc = doc.find("time", "dual_coefficients")) {
    if (dc->value != "frozen" && dc->value != "nonlinear") {
      doc.fail(*dc, "dual_coefficients must be 'nonlinear' or 'frozen'");
    }
  }
  const bool needs_mean = !out.identity && (s.mode == MarchMode::frozen ||
                                            s.mode == MarchMode::coupled ||
                                            s.mode == MarchMode::standard ||
                                            (s.mode == MarchMode::dual && dual_frozen));
  if (needs_mean && !doc.has_section("mean")) {
    doc.fail("time mode '" + mode_text + "' needs a [mean] section");
  }
  if (doc.has_section("mean")) s.mean = read_field(doc, "mean", disc, true);
  if (doc.has_section("forcing")) s.forcing = read_field(doc, "forcing", disc, false);
  s.sat = read_boundary(doc, disc, out.face_names);
  if (s.mode == MarchMode::coupled) {
    s.sat_pert = s.sat;
    for (auto& [id, fc] : s.sat_pert.faces) fc.data.clear();
  }

  const double scale = std::ldexp(1.0, -level);
  s.dt = doc.number("time", "dt", 0.0) * scale;
  s.t_end = doc.number("time", "t_end", 0.0);
  s.cfl = doc.number("time", "cfl", 0.2);
  const double stride = doc.number("time", "stride", 1.0);
  if (stride < 1 || stride != std::floor(stride)) {
    doc.fail(*doc.find("time", "stride"), "stride must be a positive integer");
  }
  s.stride = static_cast<std::size_t>(stride) << level;
  if (!out.identity) {
    if (!(s.t_end > 0.0)) doc.fail("[time] t_end must be positive");
    if (s.dt < 0.0) doc.fail(*doc.find("time", "dt"), "dt must be positive");
    if (s.dt > s.t_end) doc.fail(*doc.find("time", "dt"), "dt exceeds t_end");
    if (!(s.cfl > 0.0)) doc.fail("[time] cfl must be positive");
  }
  out.csv_path = doc.text("output", "csv", "energy.csv");
  out.state_path = doc.text("output", "state", "final_state.txt");
  return out;
}

}  // namespace skewform
