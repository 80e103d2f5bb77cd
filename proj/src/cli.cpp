#include "skewform/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "skewform/error.hpp"
#include "skewform/expression.hpp"

namespace skewform {
namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string short_fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string grid_text(const Grid& g) {
  std::ostringstream os;
  for (int a = 0; a < g.dim(); ++a) {
    const Axis& ax = g.axis(a);
    if (a) os << " x ";
    os << ax.n << (ax.periodic ? "p" : "") << "[" << fmt(ax.min) << "," << fmt(ax.max) << "]";
  }
  return os.str();
}

std::vector<double> parse_doubles(const ConfigDocument& doc, const ConfigEntry& e) {
  std::vector<double> out;
  for (const std::string& item : split_list(e.value)) {
    try {
      out.push_back(Expression::parse(item)(Position{0.0, 0.0, 0.0}));
    } catch (const ConfigError& err) {
      doc.fail(e, err.what());
    }
  }
  return out;
}

}  // namespace

void write_energy_csv(std::ostream& os, const std::vector<EnergyReport>& reports,
                      const std::vector<std::string>& face_names) {
  os << "t,E,rate,boundary_flux,volume_residual";
  for (const auto& n : face_names) os << ",flux_" << n;
  os << '\n';
  for (const EnergyReport& r : reports) {
    os << fmt(r.t) << ',' << fmt(r.E) << ',' << fmt(r.rate) << ',' << fmt(r.boundary_flux)
       << ',' << fmt(r.volume_residual);
    for (double f : r.face_flux) os << ',' << fmt(f);
    os << '\n';
  }
}

void write_state(std::ostream& os, const Discretization& d, const StateField& u) {
  require_state(d, u, "write_state");
  const auto axes = axis_names(d.model.kind());
  const auto comps = d.model.component_names();
  os << "# model = " << to_string(d.model.kind()) << '\n';
  os << "# order = " << to_string(d.ops.order()) << '\n';
  os << "# grid = " << grid_text(d.grid()) << '\n';
  os << "# layout =";
  for (int a = 0; a < d.grid().dim(); ++a) os << ' ' << axes[static_cast<std::size_t>(a)];
  for (const auto& c : comps) os << ' ' << c;
  os << " (one node per line, last axis fastest)\n";
  for (std::size_t node = 0; node < d.nodes(); ++node) {
    const Position p = d.grid().position(node);
    for (int a = 0; a < d.grid().dim(); ++a) os << (a ? " " : "") << fmt(p[static_cast<std::size_t>(a)]);
    for (std::size_t c = 0; c < d.n_comp(); ++c) os << ' ' << fmt(u(c, node));
    os << '\n';
  }
}

StateField read_state(std::istream& is, const Discretization& d) {
  StateField u = d.zero_state();
  std::string line;
  std::size_t node = 0;
  const int dim = d.grid().dim();
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (node >= d.nodes()) throw ShapeError("state block has more nodes than the grid");
    std::istringstream ls(line);
    double skip = 0.0;
    for (int a = 0; a < dim; ++a) ls >> skip;
    for (std::size_t c = 0; c < d.n_comp(); ++c) {
      if (!(ls >> u(c, node))) throw ShapeError("state line " + std::to_string(node) + " is short");
    }
    ++node;
  }
  if (node != d.nodes()) throw ShapeError("state block has fewer nodes than the grid");
  return u;
}

std::string output_path(const std::string& out_dir, const std::string& path) {
  const std::filesystem::path p(path);
  if (out_dir.empty() || p.is_absolute()) return path;
  return (std::filesystem::path(out_dir) / p).string();
}

void write_file(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << content;
  if (!out) throw Error("failed writing '" + path + "'");
}

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> kSuites = {"energy", "duality", "ansatz", "alpha",
                                                   "decomposition"};
  return kSuites;
}

int cmd_verify(const std::vector<std::string>& suites, const VerifyOptions& opt,
               const CommandIo& io) {
  std::vector<std::string> selected;
  for (const std::string& s : suites.empty() ? std::vector<std::string>{"all"} : suites) {
    if (s == "all") {
      selected.insert(selected.end(), verify_suites().begin(), verify_suites().end());
    } else if (std::find(verify_suites().begin(), verify_suites().end(), s) !=
               verify_suites().end()) {
      selected.push_back(s);
    } else {
      io.err << "unknown suite '" << s << "'; expected one of: all";
      for (const auto& k : verify_suites()) io.err << ", " << k;
      io.err << '\n';
      return exit_usage;
    }
  }
  std::vector<CheckReport> reports;
  for (const std::string& s : selected) {
    if (s == "energy") reports.push_back(check_energy_identity(opt));
    if (s == "duality") reports.push_back(check_duality(opt));
    if (s == "ansatz") reports.push_back(check_swe_ansatz(opt));
    if (s == "alpha") reports.push_back(check_alpha_independence(opt));
    if (s == "decomposition") reports.push_back(check_decomposition(opt));
  }
  std::ostringstream csv;
  write_csv(csv, reports);
  write_file(output_path(io.out_dir, "verify_report.csv"), csv.str());
  write_summary(io.out, reports);
  const bool pass = std::all_of(reports.begin(), reports.end(),
                                [](const CheckReport& r) { return r.pass(); });
  return pass ? exit_pass : exit_failure;
}

int cmd_run(const std::string& config_path, const CommandIo& io) {
  const ConfigDocument doc = ConfigDocument::load(config_path);
  const LoadedScenario ls = load_scenario(doc);
  const Scenario& s = ls.scenario;
  std::vector<EnergyReport> reports;
  StateField final_state;
  std::size_t steps = 0;
  double dt = 0.0;
  if (ls.identity) {
    const StateField* forcing = s.forcing.empty() ? nullptr : &s.forcing;
    const Residual res = eval_primal_residual(s.disc, s.initial, Nonlinear{}, s.sat, forcing);
    const CoefficientField coeff = coefficient_field(s.disc.model, s.disc.grid(), s.initial);
    reports.push_back(energy_report_from(s.disc, s.initial, res,
                                         face_contractions(s.disc, coeff, s.initial), 2.0, 0.0));
    final_state = s.initial;
  } else {
    MarchResult mr = march(s);
    reports = std::move(mr.reports);
    final_state = std::move(mr.final_state);
    steps = mr.steps;
    dt = mr.dt;
  }
  double worst = 0.0;
  for (const EnergyReport& r : reports) worst = std::max(worst, std::abs(r.volume_residual) / r.scale);

  std::ostringstream csv;
  write_energy_csv(csv, reports, ls.face_names);
  std::ostringstream state;
  write_state(state, s.disc, final_state);
  const std::string csv_path = output_path(io.out_dir, ls.csv_path);
  const std::string state_path = output_path(io.out_dir, ls.state_path);
  write_file(csv_path, csv.str());
  write_file(state_path, state.str());

  const std::string mode = ls.identity ? "identity" : to_string(s.mode);
  io.out << "model " << to_string(s.disc.model.kind()) << ", order "
         << to_string(s.disc.ops.order()) << ", grid " << grid_text(s.disc.grid())
         << ", mode " << mode << '\n';
  if (!ls.identity) io.out << "steps " << steps << ", dt " << short_fmt(dt) << '\n';
  io.out << "E(first) " << fmt(reports.front().E) << ", E(last) " << fmt(reports.back().E)
         << '\n';
  io.out << "max |volume_residual| / scale " << short_fmt(worst) << '\n';
  io.out << "wrote " << csv_path << " and " << state_path << '\n';
  // The standard linearisation is not energy conserving; its residual is a
  // measured quantity rather than a check.
  if (!ls.identity && s.mode == MarchMode::standard) return exit_pass;
  return worst <= 1e-12 ? exit_pass : exit_failure;
}

int cmd_analyze_boundary(const AnalyzeRequest& req, const CommandIo& io) {
  AnalyzeRequest r = req;
  if (!req.config_path.empty()) {
    const ConfigDocument doc = ConfigDocument::load(req.config_path);
    if (const ConfigEntry* e = doc.find("model", "kind")) r.model = e->value;
    r.params.alpha = doc.number("model", "alpha", r.params.alpha);
    r.params.beta = doc.number("model", "beta", r.params.beta);
    r.params.g = doc.number("model", "g", r.params.g);
    r.params.coriolis_f0 = doc.number("model", "coriolis_f0", r.params.coriolis_f0);
    r.params.coriolis_beta = doc.number("model", "coriolis_beta", r.params.coriolis_beta);
    if (const ConfigEntry* e = doc.find("analysis", "state")) r.state = parse_doubles(doc, *e);
    if (const ConfigEntry* e = doc.find("analysis", "perturbation"))
      r.perturbation = parse_doubles(doc, *e);
    if (const ConfigEntry* e = doc.find("analysis", "normal")) r.normal = parse_doubles(doc, *e);
    if (const ConfigEntry* e = doc.find("analysis", "position"))
      r.position = parse_doubles(doc, *e);
    r.formulation = doc.text("analysis", "formulation", r.formulation);
  }
  ModelSpec model = make_model(parse_model_kind(r.model), r.params);
  if (r.state.size() != static_cast<std::size_t>(model.n_comp())) {
    throw ConfigError("state needs " + std::to_string(model.n_comp()) + " values for " +
                      r.model);
  }
  AnalysisInput in{model, r.state, r.perturbation};
  if (r.normal.empty()) r.normal = {1.0};
  if (r.normal.size() > 3) throw ConfigError("normal has more than 3 components");
  in.normal = {0.0, 0.0, 0.0};
  std::copy(r.normal.begin(), r.normal.end(), in.normal.begin());
  if (r.position.size() > 3) throw ConfigError("position has more than 3 components");
  if (!r.position.empty()) {
    in.position = {0.0, 0.0, 0.0};
    std::copy(r.position.begin(), r.position.end(), in.position.begin());
  }
  std::vector<Formulation> forms;
  if (r.formulation == "all") {
    forms = {Formulation::nonlinear, Formulation::rewritten};
    if (!r.perturbation.empty()) forms.insert(forms.begin() + 1, Formulation::linearised);
  } else {
    forms = {parse_formulation(r.formulation)};
  }
  if (std::find(forms.begin(), forms.end(), Formulation::linearised) != forms.end() &&
      r.perturbation.size() != r.state.size()) {
    throw ConfigError("the linearised formulation needs a perturbation of " +
                      std::to_string(r.state.size()) + " values");
  }

  std::ostringstream csv;
  csv << "formulation,alpha,beta,negative,zero,positive,conditions,contraction,eigenvalues\n";
  io.out << std::left << std::setw(12) << "formulation" << std::setw(10) << "negative"
         << std::setw(6) << "zero" << std::setw(10) << "positive" << std::setw(12)
         << "conditions" << std::setw(14) << "contraction"
         << "eigenvalues\n";
  for (Formulation f : forms) {
    in.formulation = f;
    const BoundaryAnalysis a = analyze_boundary(in);
    std::string eig;
    for (double e : a.eigenvalues) eig += (eig.empty() ? "" : " ") + short_fmt(e);
    io.out << std::left << std::setw(12) << to_string(f) << std::setw(10) << a.negative
           << std::setw(6) << a.zero << std::setw(10) << a.positive << std::setw(12)
           << a.conditions << std::setw(14) << short_fmt(a.contraction) << eig << '\n';
    std::string eig_full;
    for (double e : a.eigenvalues) eig_full += (eig_full.empty() ? "" : " ") + fmt(e);
    csv << to_string(f) << ',' << fmt(a.alpha) << ',' << fmt(a.beta) << ',' << a.negative
        << ',' << a.zero << ',' << a.positive << ',' << a.conditions << ','
        << fmt(a.contraction) << ',' << eig_full << '\n';
  }
  write_file(output_path(io.out_dir, "boundary_analysis.csv"), csv.str());
  return exit_pass;
}

void fill_orders(std::vector<LevelError>& rows) {
  for (std::size_t k = 0; k < rows.size(); ++k) {
    rows[k].exact = rows[k].error == 0.0;
    if (k == 0) continue;
    const double prev = rows[k - 1].error;
    const double cur = rows[k].error;
    if (prev > 0.0 && cur > 0.0) rows[k].order = std::log(prev / cur) / std::log(rows[k - 1].h / rows[k].h);
  }
}

namespace {

double min_spacing(const Grid& g) {
  double h = g.axis(0).spacing();
  for (int a = 1; a < g.dim(); ++a) h = std::min(h, g.axis(a).spacing());
  return h;
}

// Injection of a field on a grid refined once onto the coarse grid.
StateField inject(const Discretization& coarse, const Grid& fine, const StateField& u) {
  StateField out = coarse.zero_state();
  for (std::size_t node = 0; node < coarse.nodes(); ++node) {
    auto idx = coarse.grid().unflatten(node);
    for (int a = 0; a < coarse.grid().dim(); ++a) idx[static_cast<std::size_t>(a)] *= 2;
    const std::size_t f = fine.flatten(idx);
    for (std::size_t c = 0; c < coarse.n_comp(); ++c) out(c, node) = u(c, f);
  }
  return out;
}

}  // namespace

std::vector<LevelError> self_convergence(const ConfigDocument& doc, int levels) {
  if (levels < 3) throw ConfigError("convergence needs at least 3 levels");
  std::vector<LoadedScenario> runs;
  std::vector<StateField> finals;
  for (int k = 0; k < levels; ++k) {
    runs.push_back(load_scenario(doc, k));
    if (runs.back().identity) throw ConfigError("convergence needs a time-marching mode");
    finals.push_back(march(runs.back().scenario).final_state);
  }
  std::vector<LevelError> rows;
  for (int k = 0; k + 1 < levels; ++k) {
    const Discretization& d = runs[static_cast<std::size_t>(k)].scenario.disc;
    const StateField diff = linear_combination(
        1.0, finals[static_cast<std::size_t>(k)], -1.0,
        inject(d, runs[static_cast<std::size_t>(k) + 1].scenario.disc.grid(),
               finals[static_cast<std::size_t>(k) + 1]));
    rows.push_back(LevelError{d.nodes(), min_spacing(d.grid()),
                              quadrature_norm(d.ops, diff.data().data(), d.n_comp()), {}, false});
  }
  fill_orders(rows);
  return rows;
}

LinearisationStudy burgers_linearisation_study(const ConfigDocument& doc, int levels) {
  if (levels < 3) throw ConfigError("convergence needs at least 3 levels");
  const ConfigEntry* me = doc.find("mean", "u");
  if (!me) doc.fail("the linearisation study needs [mean] u");
  const Expression mean = Expression::parse(me->value);
  LinearisationStudy out;
  for (int k = 0; k < levels; ++k) {
    const LoadedScenario ls = load_scenario(doc, k);
    const Scenario& s = ls.scenario;
    const Discretization& d = s.disc;
    if (d.model.kind() != ModelKind::burgers1d) {
      throw ConfigError("the linearisation study is defined for burgers1d");
    }
    const StateField& up = s.initial;
    const StateField& ubar = s.mean;
    // Derivative of the mean expression by a Richardson-extrapolated
    // central difference.
    StateField integrand = d.zero_state();
    const double eps = 1e-3;
    for (std::size_t i = 0; i < d.nodes(); ++i) {
      const double x = d.grid().position(i)[0];
      auto central = [&](double e) {
        return (mean(Position{x + e, 0.0, 0.0}) - mean(Position{x - e, 0.0, 0.0})) / (2.0 * e);
      };
      const double d1 = central(eps);
      const double d2 = central(eps / 2.0);
      const double d3 = central(eps / 4.0);
      const double r1 = (4.0 * d2 - d1) / 3.0;
      const double r2 = (4.0 * d3 - d2) / 3.0;
      const double ux = (16.0 * r2 - r1) / 15.0;
      integrand(0, i) = ux * up(0, i) * up(0, i);
    }
    const StateField ones(1, d.nodes(), 1.0);
    const double oracle = -inner_product(d.ops, ones, integrand);
    const EnergyReport std_rep = energy_report(d, up, StandardLinearised{ubar}, s.sat, 0.0);
    const EnergyReport new_rep = energy_report(d, up, NewLinearised{ubar}, s.sat, 0.0);
    out.standard_residual.push_back(std_rep.volume_residual);
    out.oracle.push_back(oracle);
    out.new_relative_residual.push_back(std::abs(new_rep.volume_residual) / new_rep.scale);
    out.defect.push_back(LevelError{d.nodes(), min_spacing(d.grid()),
                                    std::abs(std_rep.volume_residual - oracle), {}, false});
  }
  fill_orders(out.defect);
  return out;
}

namespace {

void print_table(std::ostream& os, const std::string& title,
                 const std::vector<LevelError>& rows) {
  os << title << '\n';
  os << std::left << std::setw(10) << "  nodes" << std::setw(14) << "h" << std::setw(16)
     << "error"
     << "order\n";
  for (const LevelError& r : rows) {
    os << "  " << std::left << std::setw(8) << r.nodes << std::setw(14) << short_fmt(r.h)
       << std::setw(16) << short_fmt(r.error);
    if (r.exact) {
      os << "exact";
    } else if (r.order) {
      os << std::fixed << std::setprecision(3) << *r.order << std::defaultfloat;
    } else {
      os << "-";
    }
    os << '\n';
  }
}

}  // namespace

int cmd_convergence(const std::string& config_path, int levels, const CommandIo& io) {
  if (levels < 3) throw ConfigError("--levels must be at least 3");
  const ConfigDocument doc = ConfigDocument::load(config_path);
  const LoadedScenario base = load_scenario(doc);
  const ModelKind kind = base.scenario.disc.model.kind();
  std::ostringstream report;
  std::ostringstream csv;
  csv << "study,level,nodes,h,error,order\n";
  auto add_csv = [&](const std::string& study, const std::vector<LevelError>& rows) {
    for (std::size_t k = 0; k < rows.size(); ++k) {
      csv << study << ',' << k << ',' << rows[k].nodes << ',' << fmt(rows[k].h) << ','
          << fmt(rows[k].error) << ','
          << (rows[k].exact ? "exact" : rows[k].order ? fmt(*rows[k].order) : "") << '\n';
    }
  };

  if (!base.identity) {
    const auto rows = self_convergence(doc, levels);
    print_table(report, "solution self-convergence (" + to_string(base.scenario.disc.ops.order()) + ")", rows);
    add_csv("self", rows);
  }
  if (kind == ModelKind::burgers1d && doc.has_section("mean")) {
    const LinearisationStudy st = burgers_linearisation_study(doc, levels);
    print_table(report, "standard linearisation defect against -quad(ubar_x u'^2)", st.defect);
    add_csv("standard_linearisation", st.defect);
    double worst = 0.0;
    for (double v : st.new_relative_residual) worst = std::max(worst, v);
    report << "new linearisation max |volume_residual| / scale " << short_fmt(worst) << '\n';
  }
  if (kind == ModelKind::swe2d) {
    VerifyOptions opt;
    opt.orders = {base.scenario.disc.ops.order()};
    std::vector<std::size_t> ns;
    const std::size_t n0 = base.scenario.disc.grid().axis(0).n;
    for (int k = 0; k < levels; ++k) ns.push_back(n0 << k);
    const CheckReport ansatz = check_swe_ansatz(opt, ns);
    report << "ansatz defect (periodic manufactured fields)\n";
    for (const CheckRow& r : ansatz.rows) {
      report << "  " << std::left << std::setw(28) << r.mode << std::setw(14)
             << short_fmt(r.max_residual) << (r.pass ? "pass" : "FAIL") << '\n';
      csv << "ansatz_" << r.mode << ",,,," << fmt(r.max_residual) << ",\n";
    }
  }
  write_file(output_path(io.out_dir, "convergence.csv"), csv.str());
  io.out << report.str();
  return exit_pass;
}

}  // namespace skewform
