#pragma once

#include <string>

#include "skewform/error.hpp"
#include "skewform/grid.hpp"
#include "skewform/models.hpp"
#include "skewform/sbp.hpp"

namespace skewform {

/// A model on a grid with its SBP operators and nodal norm matrix.
struct Discretization {
  Discretization(ModelSpec m, Grid grid, SbpOrder order,
                 const kernels::KernelTable& k = kernels::active_kernels())
      : model(std::move(m)), ops(std::move(grid), order, k) {
    model.validate_grid(ops.grid());
    norm = norm_field(model, ops.grid());
  }

  const Grid& grid() const { return ops.grid(); }
  std::size_t n_comp() const { return static_cast<std::size_t>(model.n_comp()); }
  std::size_t nodes() const { return ops.grid().nodes(); }
  StateField zero_state() const { return StateField(n_comp(), nodes()); }

  ModelSpec model;
  GridOperators ops;
  MatrixField norm;
};

/// Throws ShapeError unless `f` has the model's component count on the grid.
inline void require_state(const Discretization& d, const StateField& f,
                          const char* what) {
  if (f.n_comp() != d.n_comp() || f.nodes() != d.nodes()) {
    throw ShapeError(std::string(what) + ": field shape (" +
                     std::to_string(f.n_comp()) + " x " +
                     std::to_string(f.nodes()) + ") does not match (" +
                     std::to_string(d.n_comp()) + " x " +
                     std::to_string(d.nodes()) + ")");
  }
}

/// Direction of the problem: primal in t, dual in reversed time tau.
enum class Direction { primal, dual };

}  // namespace skewform
