#pragma once

// Explicit classical RK4 marching of the semi-discrete schemes.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "skewform/energy.hpp"

namespace skewform {

using Tendency = std::function<StateField(double t, const StateField& u)>;

/// One classical fourth-order Runge-Kutta step of u_t = f(t, u).
StateField rk4_step(const Tendency& f, const StateField& u, double t, double dt,
                    const kernels::KernelTable& k = kernels::active_kernels());

enum class MarchMode { nonlinear, frozen, coupled, standard, dual };

std::string to_string(MarchMode m);
MarchMode parse_march_mode(const std::string& text);

struct Scenario {
  Discretization disc;
  MarchMode mode = MarchMode::nonlinear;
  /// U(0); the perturbation U'(0) in coupled and standard modes; Phi at
  /// tau = 0 (the data r) in dual mode.
  StateField initial;
  /// Frozen V (frozen, and dual with frozen coefficients), the mean state
  /// (standard) or the mean initial data (coupled).
  StateField mean;
  /// Forcing F (G in dual mode); empty means none.
  StateField forcing;
  SatConfig sat;
  /// Closure of the perturbation equation in coupled mode.
  SatConfig sat_pert;
  /// Time step; zero selects 0.9 cfl * h_min / max wave speed from the initial data.
  double dt = 0.0;
  double t_end = 0.0;
  double cfl = 0.2;
  std::size_t stride = 1;
  /// Abort when the quadrature norm exceeds this multiple of its start value.
  double blowup_factor = 1e3;
};

struct MarchResult {
  std::vector<EnergyReport> reports;
  StateField final_state;
  /// Final mean state in coupled mode.
  StateField final_mean;
  std::size_t steps = 0;
  double dt = 0.0;
};

/// Largest stable step under the CFL number `cfl` for the state `v`.
double cfl_time_step(const Discretization& d, const StateField& v, double cfl);

/// Marches the scenario to t_end (tau_end in dual mode) with
/// ceil(t_end / dt) equal steps. Throws MarchError on CFL violation or
/// blow-up and AdmissibilityError when the state leaves the admissible set.
MarchResult march(const Scenario& s,
                  const std::function<void(const EnergyReport&)>& on_report = {});

}  // namespace skewform
