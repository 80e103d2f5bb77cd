#pragma once

// Seeded batch checks of the discrete identities, each against an
// independently coded oracle.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "skewform/energy.hpp"

namespace skewform {

struct CheckRow {
  std::string check;
  std::string model;
  std::string order;
  std::string mode;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  /// Residuals above this are failures; the comparison is "max <= tol",
  /// except for lower-bound rows where it is "max >= tol".
  bool lower_bound = false;
  bool pass = false;
  std::size_t worst_trial = 0;
  std::string grid;
  std::string state_hash;
};

struct CheckReport {
  std::string name;
  std::vector<CheckRow> rows;
  bool pass() const;
  double max_residual() const;
};

struct VerifyOptions {
  std::uint64_t seed = 42;
  std::size_t trials = 50;
  /// Worker threads; 0 = SKEWFORM_THREADS or the hardware concurrency.
  std::size_t threads = 0;
  std::vector<ModelKind> models{ModelKind::burgers1d, ModelKind::euler2d,
                                ModelKind::euler3d_cyl, ModelKind::swe2d};
  std::vector<SbpOrder> orders{SbpOrder::second, SbpOrder::fourth};
};

/// Worker count from SKEWFORM_THREADS (if set and positive) capped by
/// the hardware concurrency.
std::size_t worker_count(std::size_t requested = 0);

/// Runs body(i) for i in [0, count) on up to `threads` workers. The first
/// exception (by index) is rethrown after all workers finish.
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& body);

/// Generator for (seed, configuration, trial); independent of thread layout.
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t config,
                          std::uint64_t trial);

/// Desk-scale default grid: 1D n = 33 on [0, 1], 2D 17^2 on [0, 1]^2, and the
/// 9^3 annulus r in [0.5, 1.5], theta in [0, 2 pi) periodic, z in [0, 1].
Grid default_grid(ModelKind kind);

/// Uniform random admissible state: SWE U1 in [0.5, 2], every other
/// component in [-1, 1].
StateField random_state(const ModelSpec& model, std::size_t nodes,
                        std::mt19937_64& rng);

/// FNV-1a hash of the raw field data, hex encoded.
std::string state_hash(const StateField& f);

/// Volume residual of the energy identity per trial (Nonlinear, Frozen and
/// Dual modes). Trial 0 is the zero state for models that admit it.
CheckReport check_energy_identity(const VerifyOptions& opt);

/// Bilinear duality identity with frozen coefficients, and strict
/// self-adjointness R_dual(Phi; Phi) = -R_primal(Phi; Phi) (tolerance 0).
CheckReport check_duality(const VerifyOptions& opt);

/// Convergence of (A_j U)_{x_j} + A_j^T U_{x_j} - script-A_j U_{x_j} to zero
/// on doubly periodic manufactured fields for alpha, beta in {0, 1/2, 1}.
CheckReport check_swe_ansatz(const VerifyOptions& opt,
                             std::vector<std::size_t> levels = {16, 32, 64});

/// Nonlinear SWE contraction spread over alpha, beta in {-2, -1.5, ..., 2}
/// and the linearised witness spread.
CheckReport check_alpha_independence(const VerifyOptions& opt);

/// R(mean + pert) = R_mean + R_pert + H, exact quadratic scaling of H for
/// Burgers and the log-log slope of |H| for SWE.
CheckReport check_decomposition(const VerifyOptions& opt);

void write_csv(std::ostream& os, const std::vector<CheckReport>& reports);
void write_summary(std::ostream& os, const std::vector<CheckReport>& reports);

}  // namespace skewform
