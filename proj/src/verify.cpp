#include "skewform/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <mutex>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

#include "skewform/error.hpp"

namespace skewform {
namespace {

struct TrialResult {
  double residual = 0.0;
  std::string hash;
};

// SWE runs with non-default splitting parameters and Coriolis switched on so
// that every term of the operator is exercised.
ModelParams verify_params(ModelKind kind) {
  ModelParams p;
  if (kind == ModelKind::swe2d) {
    p.alpha = 0.75;
    p.beta = 0.25;
    p.coriolis_f0 = 0.5;
    p.coriolis_beta = 0.25;
  }
  return p;
}

std::string grid_label(const Grid& g) {
  std::string s;
  for (int a = 0; a < g.dim(); ++a) {
    if (a) s += "x";
    s += std::to_string(g.axis(a).n);
  }
  return s;
}

std::string order_label(SbpOrder o) { return o == SbpOrder::second ? "2,1" : "4,2"; }

CheckRow run_trials(const std::string& check, const std::string& model,
                    const std::string& order, const std::string& mode,
                    const std::string& grid, const VerifyOptions& opt,
                    double tolerance,
                    const std::function<TrialResult(std::size_t)>& trial) {
  std::vector<TrialResult> results(opt.trials);
  parallel_for(opt.trials, worker_count(opt.threads),
               [&](std::size_t i) { results[i] = trial(i); });
  CheckRow row;
  row.check = check;
  row.model = model;
  row.order = order;
  row.mode = mode;
  row.trials = opt.trials;
  row.seed = opt.seed;
  row.tolerance = tolerance;
  row.grid = grid;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const double r = results[i].residual;
    if (i == 0 || r > row.max_residual || std::isnan(r)) {
      row.max_residual = r;
      row.worst_trial = i;
      row.state_hash = results[i].hash;
    }
  }
  row.pass = row.max_residual <= tolerance;
  return row;
}

std::uint64_t config_id(ModelKind k, SbpOrder o, int mode) {
  return static_cast<std::uint64_t>(k) * 100 + static_cast<std::uint64_t>(o) * 10 +
         static_cast<std::uint64_t>(mode);
}

double dot(const Discretization& d, const StateField& a, const StateField& b) {
  return inner_product(d.ops, a, b);
}

double qnorm(const Discretization& d, const StateField& f) {
  return quadrature_norm(d.ops, f.data().data(), f.n_comp());
}

StateField random_perturbation(const Discretization& d, std::mt19937_64& rng,
                               double amplitude) {
  std::uniform_real_distribution<double> sym(-amplitude, amplitude);
  StateField f = d.zero_state();
  for (double& x : f.data()) x = sym(rng);
  return f;
}

StateField scaled(double s, const StateField& f) {
  StateField out = f;
  for (double& v : out.data()) v *= s;
  return out;
}

}  // namespace

bool CheckReport::pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.pass; });
}

double CheckReport::max_residual() const {
  double m = 0.0;
  for (const CheckRow& r : rows) {
    if (!r.lower_bound) m = std::max(m, r.max_residual);
  }
  return m;
}

std::size_t worker_count(std::size_t requested) {
  std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  std::size_t n = requested ? requested : hw;
  if (const char* env = std::getenv("SKEWFORM_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) n = std::min<std::size_t>(n, static_cast<std::size_t>(v));
  }
  return std::max<std::size_t>(n, 1);
}

void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& body) {
  threads = std::min(std::max<std::size_t>(threads, 1), std::max<std::size_t>(count, 1));
  std::vector<std::exception_ptr> errors(count);
  auto work = [&](std::size_t w) {
    for (std::size_t i = w; i < count; i += threads) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t config,
                          std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(config), static_cast<std::uint32_t>(trial),
                    static_cast<std::uint32_t>(trial >> 32)};
  return std::mt19937_64(seq);
}

Grid default_grid(ModelKind kind) {
  switch (kind) {
    case ModelKind::burgers1d:
      return Grid({Axis{33, 0.0, 1.0, false}});
    case ModelKind::euler2d:
    case ModelKind::swe2d:
      return Grid({Axis{17, 0.0, 1.0, false}, Axis{17, 0.0, 1.0, false}});
    case ModelKind::euler3d_cyl:
      return Grid({Axis{9, 0.5, 1.5, false}, Axis{9, 0.0, 2.0 * std::numbers::pi, true},
                   Axis{9, 0.0, 1.0, false}});
  }
  throw Error("default_grid: unknown model");
}

StateField random_state(const ModelSpec& model, std::size_t nodes,
                        std::mt19937_64& rng) {
  std::uniform_real_distribution<double> sym(-1.0, 1.0);
  std::uniform_real_distribution<double> geo(0.5, 2.0);
  const std::size_t nc = static_cast<std::size_t>(model.n_comp());
  StateField f(nc, nodes);
  const bool swe = model.kind() == ModelKind::swe2d;
  for (std::size_t c = 0; c < nc; ++c)
    for (std::size_t n = 0; n < nodes; ++n) f(c, n) = (swe && c == 0) ? geo(rng) : sym(rng);
  return f;
}

std::string state_hash(const StateField& f) {
  std::uint64_t h = 1469598103934665603ull;
  for (double v : f.data()) {
    unsigned char bytes[sizeof(double)];
    std::memcpy(bytes, &v, sizeof(double));
    for (unsigned char b : bytes) {
      h ^= b;
      h *= 1099511628211ull;
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

CheckReport check_energy_identity(const VerifyOptions& opt) {
  CheckReport rep{"energy", {}};
  const char* modes[] = {"nonlinear", "frozen", "dual"};
  for (ModelKind kind : opt.models) {
    for (SbpOrder order : opt.orders) {
      const Discretization d(make_model(kind, verify_params(kind)), default_grid(kind), order);
      const SatConfig sat = SatConfig::natural(d.grid());
      for (int m = 0; m < 3; ++m) {
        const auto trial = [&](std::size_t i) {
          auto rng = trial_rng(opt.seed, config_id(kind, order, m), i);
          StateField u = (i == 0 && kind != ModelKind::swe2d)
                             ? d.zero_state()
                             : random_state(d.model, d.nodes(), rng);
          EnergyReport r;
          if (m == 0) {
            r = energy_report(d, u, Nonlinear{}, sat, 0.0);
          } else if (m == 1) {
            r = energy_report(d, u, Frozen{random_state(d.model, d.nodes(), rng)}, sat, 0.0);
          } else {
            r = energy_report(d, u, Nonlinear{}, sat, 0.0, Direction::dual);
          }
          return TrialResult{std::abs(r.volume_residual) / r.scale, state_hash(u)};
        };
        rep.rows.push_back(run_trials("energy", to_string(kind), order_label(order),
                                      modes[m], grid_label(d.grid()), opt, 1e-12, trial));
      }
    }
  }
  return rep;
}

namespace {

// sum over faces of sign * oint [phi^T A u + phi^T A^T u], coded directly on
// the face nodes; `abs_sum` collects the magnitude of the face terms.
double bilinear_boundary(const Discretization& d, const CoefficientField& cf,
                         const StateField& phi, const StateField& u, double& abs_sum) {
  const Grid& g = d.grid();
  const std::size_t nc = d.n_comp();
  double total = 0.0;
  abs_sum = 0.0;
  for (const Face& f : g.faces()) {
    const auto nodes = g.face_nodes(f);
    const auto fw = d.ops.face_weights(f);
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const std::size_t node = nodes[i];
      double local = 0.0;
      for (std::size_t r = 0; r < nc; ++r)
        for (std::size_t s = 0; s < nc; ++s) {
          const double a = cf.A[f.axis].at(r, s, node) + cf.A[f.axis].at(s, r, node);
          local += phi(r, node) * a * u(s, node);
        }
      acc += fw[i] * local;
    }
    total += f.sign() * acc;
    abs_sum += std::abs(acc);
  }
  return total;
}

}  // namespace

CheckReport check_duality(const VerifyOptions& opt) {
  CheckReport rep{"duality", {}};
  for (ModelKind kind : opt.models) {
    for (SbpOrder order : opt.orders) {
      const Discretization d(make_model(kind, verify_params(kind)), default_grid(kind), order);
      const SatConfig sat = SatConfig::natural(d.grid());
      const auto bilinear = [&](std::size_t i) {
        auto rng = trial_rng(opt.seed, config_id(kind, order, 5), i);
        const StateField u = random_state(d.model, d.nodes(), rng);
        const StateField phi = i == 0 ? u : random_state(d.model, d.nodes(), rng);
        const StateField v = random_state(d.model, d.nodes(), rng);
        const Residual rp = eval_primal_residual(d, u, Frozen{v}, sat);
        const Residual rd = eval_dual_residual(d, phi, Frozen{v}, sat);
        const double lhs = dot(d, phi, rp.r) - dot(d, u, rd.r);
        double face_abs = 0.0;
        const double rhs =
            bilinear_boundary(d, coefficient_field(d.model, d.grid(), v), phi, u, face_abs);
        const double scale =
            1.0 + qnorm(d, phi) * rp.term_norm + qnorm(d, u) * rd.term_norm + face_abs;
        return TrialResult{std::abs(lhs - rhs) / scale, state_hash(phi)};
      };
      rep.rows.push_back(run_trials("duality", to_string(kind), order_label(order),
                                    "bilinear", grid_label(d.grid()), opt, 1e-12, bilinear));
      const auto self_adjoint = [&](std::size_t i) {
        auto rng = trial_rng(opt.seed, config_id(kind, order, 6), i);
        const StateField phi = random_state(d.model, d.nodes(), rng);
        const Residual rp = eval_primal_residual(d, phi, Nonlinear{}, sat);
        const Residual rd = eval_dual_residual(d, phi, Nonlinear{}, sat);
        double worst = 0.0;
        for (std::size_t k = 0; k < rp.r.size(); ++k) {
          worst = std::max(worst, std::abs(rd.r.data()[k] + rp.r.data()[k]));
        }
        return TrialResult{worst, state_hash(phi)};
      };
      rep.rows.push_back(run_trials("duality", to_string(kind), order_label(order),
                                    "self_adjoint", grid_label(d.grid()), opt, 0.0,
                                    self_adjoint));
    }
  }
  return rep;
}

namespace {

// Maximum over nodes and components of the ansatz defect along `axis`.
double ansatz_defect(const Discretization& d, const StateField& u, int axis) {
  const CoefficientField cf = coefficient_field(d.model, d.grid(), u);
  const std::size_t nc = d.n_comp();
  const std::size_t nodes = d.nodes();
  StateField au = d.zero_state();
  for (std::size_t node = 0; node < nodes; ++node)
    for (std::size_t r = 0; r < nc; ++r) {
      double acc = 0.0;
      for (std::size_t s = 0; s < nc; ++s) acc += cf.A[axis].at(r, s, node) * u(s, node);
      au(r, node) = acc;
    }
  const StateField dau = apply_derivative(d.ops, au, axis);
  const StateField du = apply_derivative(d.ops, u, axis);
  double worst = 0.0;
  std::array<double, 3> ub{};
  for (std::size_t node = 0; node < nodes; ++node) {
    u.gather(node, ub);
    const auto adv = advective_form(ModelKind::swe2d, ub.data());
    for (std::size_t r = 0; r < nc; ++r) {
      double split = dau(r, node);
      for (std::size_t s = 0; s < nc; ++s) split += cf.A[axis].at(s, r, node) * du(s, node);
      double plain = 0.0;
      for (std::size_t s = 0; s < nc; ++s) plain += adv.a[axis][r][s] * du(s, node);
      worst = std::max(worst, std::abs(split - plain));
    }
  }
  return worst;
}

StateField manufactured_swe(const Grid& g, bool constant) {
  StateField prim(3, g.nodes());
  const double tau = 2.0 * std::numbers::pi;
  for (std::size_t node = 0; node < g.nodes(); ++node) {
    const Position p = g.position(node);
    if (constant) {
      prim(0, node) = 1.3;
      prim(1, node) = 0.4;
      prim(2, node) = -0.7;
    } else {
      prim(0, node) = 1.0 + 0.3 * std::sin(tau * p[0]) * std::cos(tau * p[1]);
      prim(1, node) = std::cos(tau * p[0]);
      prim(2, node) = std::sin(tau * p[1]);
    }
  }
  return swe_transform(prim);
}

}  // namespace

CheckReport check_swe_ansatz(const VerifyOptions& opt, std::vector<std::size_t> levels) {
  if (levels.size() < 2) throw Error("check_swe_ansatz needs at least two levels");
  CheckReport rep{"ansatz", {}};
  for (SbpOrder order : opt.orders) {
    for (double ab : {0.0, 0.5, 1.0}) {
      ModelParams params;
      params.alpha = ab;
      params.beta = ab;
      const ModelSpec model = make_model(ModelKind::swe2d, params);
      std::vector<std::array<double, 2>> defects;
      double constant_defect = 0.0;
      for (std::size_t n : levels) {
        const Discretization d(model, Grid({Axis{n, 0.0, 1.0, true}, Axis{n, 0.0, 1.0, true}}),
                               order);
        const StateField u = manufactured_swe(d.grid(), false);
        defects.push_back({ansatz_defect(d, u, 0), ansatz_defect(d, u, 1)});
        const StateField c = manufactured_swe(d.grid(), true);
        constant_defect =
            std::max({constant_defect, ansatz_defect(d, c, 0), ansatz_defect(d, c, 1)});
      }
      const auto& fine = defects.back();
      const auto& coarse = defects[defects.size() - 2];
      const double ratio = static_cast<double>(levels.back()) /
                           static_cast<double>(levels[levels.size() - 2]);
      double observed = INFINITY;
      for (int a = 0; a < 2; ++a) {
        observed = std::min(observed, std::log(coarse[a] / fine[a]) / std::log(ratio));
      }
      char mode[64];
      std::snprintf(mode, sizeof mode, "alpha=beta=%.1f", ab);
      std::string grid;
      for (std::size_t n : levels) grid += (grid.empty() ? "" : "/") + std::to_string(n);
      CheckRow row;
      row.check = "ansatz";
      row.model = "swe2d";
      row.order = order_label(order);
      row.mode = std::string(mode) + " order";
      row.trials = levels.size();
      row.seed = opt.seed;
      row.max_residual = observed;
      row.tolerance = accuracy(order).interior - 0.2;
      row.lower_bound = true;
      row.pass = observed >= row.tolerance;
      row.grid = grid;
      rep.rows.push_back(row);
      CheckRow crow = row;
      crow.mode = std::string(mode) + " constant";
      crow.max_residual = constant_defect;
      crow.tolerance = 0.0;
      crow.lower_bound = false;
      crow.pass = constant_defect == 0.0;
      rep.rows.push_back(crow);
    }
  }
  return rep;
}

CheckReport check_alpha_independence(const VerifyOptions& opt) {
  CheckReport rep{"alpha", {}};
  std::vector<double> grid_vals;
  for (int k = -4; k <= 4; ++k) grid_vals.push_back(0.5 * k);
  std::vector<ModelSpec> models;
  for (double a : grid_vals)
    for (double b : grid_vals) {
      ModelParams p;
      p.alpha = a;
      p.beta = b;
      models.push_back(make_model(ModelKind::swe2d, p));
    }
  const ModelSpec base = make_model(ModelKind::swe2d);

  const auto trial = [&](std::size_t i) {
    auto rng = trial_rng(opt.seed, 900, i);
    const StateField s = random_state(base, 1, rng);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    const double th = angle(rng);
    const std::array<double, 3> n{std::cos(th), std::sin(th), 0.0};
    const std::array<double, 3> u{s(0, 0), s(1, 0), s(2, 0)};
    const double un = (n[0] * u[1] + n[1] * u[2]) / std::sqrt(u[0]);
    const double closed = un * (u[0] * u[0] + 0.5 * (u[1] * u[1] + u[2] * u[2]));
    double lo = INFINITY, hi = -INFINITY, scale = std::abs(closed);
    for (const ModelSpec& m : models) {
      const double v = boundary_contraction(m, u, n);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      const PointCoefficients pc = m.coefficients(u, {1.0, 0.0, 0.0});
      double mag = 0.0;
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
          mag += std::abs(u[r] * (n[0] * pc.A[0](r, c) + n[1] * pc.A[1](r, c)) * u[c]);
      scale = std::max(scale, mag);
    }
    const double dev = std::max(hi - lo, std::max(std::abs(hi - closed), std::abs(lo - closed)));
    return TrialResult{dev / scale, state_hash(s)};
  };
  rep.rows.push_back(run_trials("alpha", "swe2d", "-", "nonlinear_spread", "face", opt,
                                1e-13, trial));

  // Linearised witness: mean (1, 0, 0), perturbation (1, 1, 0), n = (1, 0)
  // gives U'^T n.A(mean) U' = 1 - alpha.
  const std::array<double, 3> mean{1.0, 0.0, 0.0};
  const std::array<double, 3> pert{1.0, 1.0, 0.0};
  const std::array<double, 3> zero{0.0, 0.0, 0.0};
  const std::array<double, 3> nx{1.0, 0.0, 0.0};
  double lo = INFINITY, hi = -INFINITY, zero_dev = 0.0;
  for (const ModelSpec& m : models) {
    const double v = boundary_contraction_linearised(m, mean, pert, nx);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    zero_dev = std::max({zero_dev, std::abs(boundary_contraction_linearised(m, mean, zero, nx))});
  }
  CheckRow w;
  w.check = "alpha";
  w.model = "swe2d";
  w.order = "-";
  w.mode = "linearised_witness_spread";
  w.trials = 1;
  w.seed = opt.seed;
  w.max_residual = hi - lo;
  w.tolerance = 1e-6;
  w.lower_bound = true;
  w.pass = w.max_residual >= w.tolerance;
  w.grid = "face";
  rep.rows.push_back(w);
  CheckRow z = w;
  z.mode = "zero_perturbation";
  z.max_residual = zero_dev;
  z.tolerance = 0.0;
  z.lower_bound = false;
  z.pass = zero_dev == 0.0;
  rep.rows.push_back(z);
  return rep;
}

CheckReport check_decomposition(const VerifyOptions& opt) {
  CheckReport rep{"decomposition", {}};
  for (ModelKind kind : opt.models) {
    for (SbpOrder order : opt.orders) {
      const Discretization d(make_model(kind, verify_params(kind)), default_grid(kind), order);
      const SatConfig sat = SatConfig::natural(d.grid());
      const auto trial = [&](std::size_t i) {
        auto rng = trial_rng(opt.seed, config_id(kind, order, 7), i);
        const StateField mean = random_state(d.model, d.nodes(), rng);
        const StateField pert =
            kind == ModelKind::swe2d ? random_perturbation(d, rng, 0.25)
                                     : random_state(d.model, d.nodes(), rng);
        const StateField total = linear_combination(1.0, mean, 1.0, pert);
        const Residual full = eval_primal_residual(d, total, Nonlinear{}, sat);
        const auto [rm, rp] = eval_new_linearised_pair(d, mean, pert, sat, sat);
        const StateField h = eval_remainder_H(d, mean, pert);
        double worst = 0.0;
        for (std::size_t k = 0; k < full.r.size(); ++k) {
          const double sum = rm.r.data()[k] + rp.r.data()[k] + h.data()[k];
          worst = std::max(worst, std::abs(full.r.data()[k] - sum));
        }
        const double scale =
            1.0 + max_abs(full.r) + max_abs(rm.r) + max_abs(rp.r) + max_abs(h);
        return TrialResult{worst / scale, state_hash(pert)};
      };
      rep.rows.push_back(run_trials("decomposition", to_string(kind), order_label(order),
                                    "identity", grid_label(d.grid()), opt, 1e-12, trial));

      if (kind == ModelKind::burgers1d) {
        const auto quad = [&](std::size_t i) {
          auto rng = trial_rng(opt.seed, config_id(kind, order, 8), i);
          const StateField mean = random_state(d.model, d.nodes(), rng);
          const StateField pert = random_state(d.model, d.nodes(), rng);
          const double h1 = max_abs(eval_remainder_H(d, mean, pert));
          double dev = 0.0;
          for (double eps : {0.5, 0.25}) {
            const double he = max_abs(eval_remainder_H(d, mean, scaled(eps, pert)));
            dev = std::max(dev, h1 == 0.0 ? 0.0 : std::abs(he / (eps * eps * h1) - 1.0));
          }
          return TrialResult{dev, state_hash(pert)};
        };
        rep.rows.push_back(run_trials("decomposition", to_string(kind), order_label(order),
                                      "H_quadratic_ratio", grid_label(d.grid()), opt, 1e-12,
                                      quad));
      }
      if (kind == ModelKind::swe2d) {
        const auto slope = [&](std::size_t i) {
          auto rng = trial_rng(opt.seed, config_id(kind, order, 9), i);
          const StateField mean = random_state(d.model, d.nodes(), rng);
          const StateField pert = random_perturbation(d, rng, 1.0);
          double sx = 0, sy = 0, sxx = 0, sxy = 0;
          int n = 0;
          for (int e = 4; e <= 8; ++e) {
            const double eps = std::ldexp(1.0, -e);
            const double hn = qnorm(d, eval_remainder_H(d, mean, scaled(eps, pert)));
            const double x = std::log(eps);
            const double y = std::log(hn);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            ++n;
          }
          const double k = (n * sxy - sx * sy) / (n * sxx - sx * sx);
          return TrialResult{std::abs(k - 2.0), state_hash(pert)};
        };
        rep.rows.push_back(run_trials("decomposition", to_string(kind), order_label(order),
                                      "H_slope_minus_2", grid_label(d.grid()), opt, 0.1, slope));
      }
    }
  }
  return rep;
}

void write_csv(std::ostream& os, const std::vector<CheckReport>& reports) {
  os << "check,model,order,mode,trials,seed,max_residual,tolerance,bound,pass,"
        "worst_trial,grid,state_hash\n";
  char buf[64];
  for (const CheckReport& rep : reports)
    for (const CheckRow& r : rep.rows) {
      os << r.check << ',' << r.model << ",\"" << r.order << "\"," << r.mode << ','
         << r.trials << ',' << r.seed << ',';
      std::snprintf(buf, sizeof buf, "%.17g", r.max_residual);
      os << buf << ',';
      std::snprintf(buf, sizeof buf, "%.17g", r.tolerance);
      os << buf << ',' << (r.lower_bound ? "min" : "max") << ','
         << (r.pass ? "pass" : "FAIL") << ',' << r.worst_trial << ',' << r.grid << ','
         << r.state_hash << '\n';
    }
}

void write_summary(std::ostream& os, const std::vector<CheckReport>& reports) {
  std::size_t passed = 0;
  char buf[160];
  for (const CheckReport& rep : reports) {
    std::size_t ok = 0;
    for (const CheckRow& r : rep.rows) ok += r.pass ? 1 : 0;
    std::snprintf(buf, sizeof buf, "%-14s %-4s %zu/%zu rows, max residual %.3e\n",
                  rep.name.c_str(), rep.pass() ? "PASS" : "FAIL", ok, rep.rows.size(),
                  rep.max_residual());
    os << buf;
    for (const CheckRow& r : rep.rows) {
      if (r.pass) continue;
      std::snprintf(buf, sizeof buf, "  failed: %s %s (%s) %s: %.3e vs %s %.3e\n",
                    r.check.c_str(), r.model.c_str(), r.order.c_str(), r.mode.c_str(),
                    r.max_residual, r.lower_bound ? "min" : "max", r.tolerance);
      os << buf;
    }
    passed += rep.pass() ? 1 : 0;
  }
  os << passed << "/" << reports.size() << " suites passed\n";
}

}  // namespace skewform
