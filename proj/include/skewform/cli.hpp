#pragma once

// Command implementations behind the skewform executable. Each returns the
// process exit status: 0 pass, 1 check failure or runtime error, 2 usage
// or configuration error.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "skewform/config.hpp"
#include "skewform/verify.hpp"

namespace skewform {

enum ExitStatus { exit_pass = 0, exit_failure = 1, exit_usage = 2 };

struct CommandIo {
  std::ostream& out;
  std::ostream& err;
  /// Directory for relative output paths; empty means the working directory.
  std::string out_dir;
};

/// Energy time series with columns t, E, rate, boundary_flux,
/// volume_residual and one flux_<face> column per non-periodic face.
void write_energy_csv(std::ostream& os, const std::vector<EnergyReport>& reports,
                      const std::vector<std::string>& face_names);

/// Plain-text state block: '#'-prefixed header lines (model, order, grid,
/// layout), then one line per node with coordinates and components.
void write_state(std::ostream& os, const Discretization& d, const StateField& u);

/// Reads a block written by write_state back onto the discretisation's grid.
StateField read_state(std::istream& is, const Discretization& d);

/// Resolves `path` against `out_dir` unless it is absolute.
std::string output_path(const std::string& out_dir, const std::string& path);

/// Writes `content` to `path`, creating parent directories.
void write_file(const std::string& path, const std::string& content);

const std::vector<std::string>& verify_suites();

int cmd_verify(const std::vector<std::string>& suites, const VerifyOptions& opt,
               const CommandIo& io);

int cmd_run(const std::string& config_path, const CommandIo& io);

struct AnalyzeRequest {
  std::string config_path;
  std::string model = "swe2d";
  ModelParams params;
  std::vector<double> state;
  std::vector<double> perturbation;
  std::vector<double> normal;
  std::vector<double> position;
  /// nonlinear, linearised, rewritten or all.
  std::string formulation = "all";
};

int cmd_analyze_boundary(const AnalyzeRequest& req, const CommandIo& io);

/// One row of a refinement table.
struct LevelError {
  std::size_t nodes = 0;
  double h = 0.0;
  double error = 0.0;
  /// Observed order against the previous row; empty on the first row.
  std::optional<double> order;
  bool exact = false;
};

/// log2 of successive error ratios; rows with zero error are marked exact.
void fill_orders(std::vector<LevelError>& rows);

/// Self-convergence of the final state: the error at level k is the
/// quadrature norm of u_k minus u_{k+1} injected onto level k.
std::vector<LevelError> self_convergence(const ConfigDocument& doc, int levels);

/// Burgers standard linearisation: |volume residual + quad(ubar_x u'^2)| per
/// level with ubar from [mean] and u' from [initial], plus the largest
/// new-linearised volume residual relative to its scale.
struct LinearisationStudy {
  std::vector<LevelError> defect;
  std::vector<double> standard_residual;
  std::vector<double> oracle;
  std::vector<double> new_relative_residual;
};

LinearisationStudy burgers_linearisation_study(const ConfigDocument& doc, int levels);

int cmd_convergence(const std::string& config_path, int levels, const CommandIo& io);

}  // namespace skewform
