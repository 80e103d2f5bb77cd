#include "skewform/timeint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "skewform/error.hpp"

namespace skewform {
namespace {

StateField stage(const StateField& u, double h, const StateField& k) {
  StateField out(u.n_comp(), u.nodes());
  auto o = out.data();
  auto x = u.data();
  auto y = k.data();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] = x[i] + h * y[i];
  return out;
}

StateField negated(const Residual& r) {
  StateField out = r.r;
  for (double& v : out.data()) v = -v;
  return out;
}

StateField stack(const StateField& a, const StateField& b) {
  StateField out(a.n_comp() + b.n_comp(), a.nodes());
  std::copy(a.data().begin(), a.data().end(), out.data().begin());
  std::copy(b.data().begin(), b.data().end(), out.data().begin() + a.size());
  return out;
}

StateField block(const StateField& u, std::size_t first, std::size_t count) {
  StateField out(count, u.nodes());
  const auto src = u.data().subspan(first * u.nodes(), count * u.nodes());
  std::copy(src.begin(), src.end(), out.data().begin());
  return out;
}

}  // namespace

std::string to_string(MarchMode m) {
  switch (m) {
    case MarchMode::nonlinear:
      return "nonlinear";
    case MarchMode::frozen:
      return "frozen";
    case MarchMode::coupled:
      return "coupled";
    case MarchMode::standard:
      return "standard";
    case MarchMode::dual:
      return "dual";
  }
  return "unknown";
}

MarchMode parse_march_mode(const std::string& text) {
  for (MarchMode m : {MarchMode::nonlinear, MarchMode::frozen, MarchMode::coupled,
                      MarchMode::standard, MarchMode::dual}) {
    if (text == to_string(m)) return m;
  }
  throw Error("unknown time mode '" + text + "'");
}

StateField rk4_step(const Tendency& f, const StateField& u, double t, double dt,
                    const kernels::KernelTable& k) {
  const StateField k1 = f(t, u);
  const StateField k2 = f(t + 0.5 * dt, stage(u, 0.5 * dt, k1));
  const StateField k3 = f(t + 0.5 * dt, stage(u, 0.5 * dt, k2));
  const StateField k4 = f(t + dt, stage(u, dt, k3));
  StateField sum = k2;
  k.add(k3.data().data(), sum.data().data(), sum.size());
  for (double& v : sum.data()) v = 2.0 * v;
  k.add(k1.data().data(), sum.data().data(), sum.size());
  k.add(k4.data().data(), sum.data().data(), sum.size());
  return stage(u, dt / 6.0, sum);
}

double cfl_time_step(const Discretization& d, const StateField& v, double cfl) {
  const Grid& g = d.grid();
  const std::size_t nc = d.n_comp();
  std::array<double, 4> local{};
  double rate = 0.0;
  for (std::size_t node = 0; node < g.nodes(); ++node) {
    v.gather(node, local);
    const std::span<const double> vs(local.data(), nc);
    for (int a = 0; a < g.dim(); ++a) {
      rate = std::max(rate, d.model.max_wave_speed(vs, a) / g.axis(a).spacing());
    }
  }
  if (rate == 0.0) return std::numeric_limits<double>::infinity();
  return cfl / rate;
}

MarchResult march(const Scenario& s,
                  const std::function<void(const EnergyReport&)>& on_report) {
  const Discretization& d = s.disc;
  if (!d.model.norm_invertible()) {
    throw Error(to_string(d.model.kind()) +
                " has a singular norm matrix and cannot be time-marched");
  }
  if (!(s.t_end > 0.0)) throw Error("t_end must be positive");
  if (s.stride == 0) throw Error("report stride must be at least 1");
  require_state(d, s.initial, "initial data");
  const bool needs_mean = s.mode == MarchMode::frozen || s.mode == MarchMode::coupled ||
                          s.mode == MarchMode::standard;
  if (needs_mean) require_state(d, s.mean, "mean state");
  if (!s.forcing.empty()) require_state(d, s.forcing, "forcing");
  const StateField* forcing = s.forcing.empty() ? nullptr : &s.forcing;
  validate_sat(d, s.sat);
  if (s.mode == MarchMode::coupled) validate_sat(d, s.sat_pert);

  const std::size_t nc = d.n_comp();
  const bool dual_frozen = s.mode == MarchMode::dual && !s.mean.empty();
  if (dual_frozen) require_state(d, s.mean, "dual coefficient state");

  // State whose wave speeds bound the step.
  auto speed_state = [&](const StateField& u) -> StateField {
    switch (s.mode) {
      case MarchMode::frozen:
      case MarchMode::standard:
        return s.mean;
      case MarchMode::coupled:
        return linear_combination(1.0, block(u, 0, nc), 1.0, block(u, nc, nc));
      case MarchMode::dual:
        return dual_frozen ? s.mean : u;
      case MarchMode::nonlinear:
        break;
    }
    return u;
  };

  StateField u0 = s.mode == MarchMode::coupled ? stack(s.mean, s.initial) : s.initial;

  double dt = s.dt;
  if (!(dt > 0.0)) dt = 0.9 * cfl_time_step(d, speed_state(u0), s.cfl);
  if (!std::isfinite(dt)) dt = s.t_end;
  const auto steps = static_cast<std::size_t>(std::ceil(s.t_end / dt - 1e-12));
  dt = s.t_end / static_cast<double>(std::max<std::size_t>(steps, 1));

  const Tendency f = [&](double, const StateField& u) -> StateField {
    switch (s.mode) {
      case MarchMode::nonlinear:
        return negated(eval_primal_residual(d, u, Nonlinear{}, s.sat, forcing));
      case MarchMode::frozen:
        return negated(eval_primal_residual(d, u, Frozen{s.mean}, s.sat, forcing));
      case MarchMode::standard:
        return negated(eval_standard_linearised_residual(d, s.mean, u, s.sat));
      case MarchMode::dual:
        return dual_frozen
                   ? negated(eval_dual_residual(d, u, Frozen{s.mean}, s.sat, forcing))
                   : negated(eval_dual_residual(d, u, Nonlinear{}, s.sat, forcing));
      case MarchMode::coupled: {
        const auto [rm, rp] = eval_new_linearised_pair(d, block(u, 0, nc), block(u, nc, nc),
                                                       s.sat, s.sat_pert, forcing);
        return stack(negated(rm), negated(rp));
      }
    }
    return u;
  };

  auto report = [&](const StateField& u, double t) {
    switch (s.mode) {
      case MarchMode::nonlinear:
        return energy_report(d, u, Nonlinear{}, s.sat, t);
      case MarchMode::frozen:
        return energy_report(d, u, Frozen{s.mean}, s.sat, t);
      case MarchMode::standard:
        return energy_report(d, u, StandardLinearised{s.mean}, s.sat, t);
      case MarchMode::dual:
        return dual_frozen ? energy_report(d, u, Frozen{s.mean}, s.sat, t, Direction::dual)
                           : energy_report(d, u, Nonlinear{}, s.sat, t, Direction::dual);
      case MarchMode::coupled:
        return energy_report(d, block(u, nc, nc), NewLinearised{block(u, 0, nc)},
                             s.sat_pert, t);
    }
    return EnergyReport{};
  };

  MarchResult out;
  out.dt = dt;
  auto emit = [&](const StateField& u, double t) {
    out.reports.push_back(report(u, t));
    if (on_report) on_report(out.reports.back());
  };

  const double norm0 = quadrature_norm(d.ops, u0.data().data(), u0.n_comp());
  const double limit = s.blowup_factor * (norm0 > 0.0 ? norm0 : 1.0);
  StateField u = u0;
  emit(u, 0.0);
  for (std::size_t n = 0; n < steps; ++n) {
    const double t = static_cast<double>(n) * dt;
    const double dt_max = cfl_time_step(d, speed_state(u), s.cfl);
    if (dt > dt_max * (1.0 + 1e-12)) {
      throw MarchError("CFL violation at t = " + std::to_string(t) + ": dt = " +
                       std::to_string(dt) + " exceeds " + std::to_string(dt_max));
    }
    u = rk4_step(f, u, t, dt, d.ops.kernels());
    if (!u.all_finite() ||
        quadrature_norm(d.ops, u.data().data(), u.n_comp()) > limit) {
      throw MarchError("blow-up guard triggered at t = " + std::to_string(t + dt));
    }
    ++out.steps;
    const double tn = static_cast<double>(n + 1) * dt;
    if ((n + 1) % s.stride == 0 || n + 1 == steps) emit(u, tn);
  }
  if (s.mode == MarchMode::coupled) {
    out.final_mean = block(u, 0, nc);
    out.final_state = block(u, nc, nc);
  } else {
    out.final_state = std::move(u);
  }
  return out;
}

}  // namespace skewform
