#include "skewform/models.hpp"

#include <cmath>
#include <sstream>

#include "skewform/error.hpp"

namespace skewform {
namespace {

constexpr int kComp[] = {1, 3, 4, 3};
constexpr int kDim[] = {1, 2, 3, 2};

std::string describe(std::span<const double> v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << ')';
  return os.str();
}

void euler2d(std::span<const double> v, PointCoefficients& pc) {
  const double u = v[0];
  const double w = v[1];
  SmallMatrix a(3), b(3);
  a(0, 0) = 0.5 * u;
  a(1, 1) = 0.5 * u;
  a(0, 2) = 0.5;
  a(2, 0) = 0.5;
  b(0, 0) = 0.5 * w;
  b(1, 1) = 0.5 * w;
  b(1, 2) = 0.5;
  b(2, 1) = 0.5;
  pc.A[0] = a;
  pc.A[1] = b;
  pc.C = SmallMatrix(3);
}

void euler3d_cyl(std::span<const double> v, double r, PointCoefficients& pc) {
  const double u = v[0];
  const double th = v[1];
  const double w = v[2];
  SmallMatrix a(4), b(4), c(4), d(4);
  for (int i = 0; i < 3; ++i) {
    a(i, i) = 0.5 * r * u;
    b(i, i) = 0.5 * th;
    c(i, i) = 0.5 * r * w;
  }
  a(0, 3) = a(3, 0) = 0.5 * r;
  b(1, 3) = b(3, 1) = 0.5;
  c(2, 3) = c(3, 2) = 0.5 * r;
  d(0, 1) = -th;
  d(1, 0) = th;
  d(0, 3) = -0.5;
  d(3, 0) = 0.5;
  pc.A[0] = a;
  pc.A[1] = b;
  pc.A[2] = c;
  pc.C = d;
}

void swe2d(std::span<const double> v, double alpha, double beta, double f,
           PointCoefficients& pc) {
  const double s = std::sqrt(v[0]);
  const double un = v[1] / s;
  const double vn = v[2] / s;
  SmallMatrix a(3), b(3), c(3);
  a(0, 0) = alpha * un;
  a(0, 1) = (1.0 - 3.0 * alpha) * s;
  a(1, 0) = 2.0 * alpha * s;
  a(1, 1) = 0.5 * un;
  a(2, 2) = 0.5 * un;
  b(0, 0) = beta * vn;
  b(0, 2) = (1.0 - 3.0 * beta) * s;
  b(2, 0) = 2.0 * beta * s;
  b(1, 1) = 0.5 * vn;
  b(2, 2) = 0.5 * vn;
  c(1, 2) = -f;
  c(2, 1) = f;
  pc.A[0] = a;
  pc.A[1] = b;
  pc.C = c;
}

}  // namespace

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::burgers1d:
      return "burgers1d";
    case ModelKind::euler2d:
      return "euler2d";
    case ModelKind::euler3d_cyl:
      return "euler3d_cyl";
    case ModelKind::swe2d:
      return "swe2d";
  }
  return "unknown";
}

ModelKind parse_model_kind(const std::string& text) {
  for (ModelKind k : {ModelKind::burgers1d, ModelKind::euler2d,
                      ModelKind::euler3d_cyl, ModelKind::swe2d}) {
    if (text == to_string(k)) return k;
  }
  throw Error("unknown model '" + text +
              "' (expected burgers1d, euler2d, euler3d_cyl or swe2d)");
}

ModelSpec::ModelSpec(ModelKind kind, ModelParams params)
    : kind_(kind),
      params_(params),
      n_comp_(kComp[static_cast<int>(kind)]),
      dim_(kDim[static_cast<int>(kind)]) {}

ModelSpec make_model(ModelKind kind, const ModelParams& params) {
  for (double p : {params.alpha, params.beta, params.g, params.coriolis_f0,
                   params.coriolis_beta}) {
    if (!std::isfinite(p)) throw Error("model parameters must be finite");
  }
  if (kind == ModelKind::swe2d && !(params.g > 0.0)) {
    throw Error("swe2d requires g > 0");
  }
  return ModelSpec(kind, params);
}

std::vector<std::string> ModelSpec::component_names() const {
  switch (kind_) {
    case ModelKind::burgers1d:
      return {"u"};
    case ModelKind::euler2d:
      return {"u", "v", "p"};
    case ModelKind::euler3d_cyl:
      return {"u", "v", "w", "p"};
    case ModelKind::swe2d:
      return {"U1", "U2", "U3"};
  }
  return {};
}

SmallMatrix ModelSpec::norm_matrix(const Position& pos) const {
  switch (kind_) {
    case ModelKind::burgers1d:
    case ModelKind::swe2d:
      return SmallMatrix::identity(n_comp_);
    case ModelKind::euler2d: {
      SmallMatrix p(3);
      p(0, 0) = p(1, 1) = 1.0;
      return p;
    }
    case ModelKind::euler3d_cyl: {
      SmallMatrix p(4);
      p(0, 0) = p(1, 1) = p(2, 2) = pos[0];
      return p;
    }
  }
  return SmallMatrix(n_comp_);
}

double ModelSpec::coriolis(const Position& pos) const {
  if (kind_ != ModelKind::swe2d) return 0.0;
  return params_.coriolis_f0 + params_.coriolis_beta * pos[1];
}

bool ModelSpec::admissible(std::span<const double> v) const {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  if (kind_ == ModelKind::swe2d) return v[0] > 0.0;
  return true;
}

void ModelSpec::check_admissible(std::span<const double> v) const {
  if (admissible(v)) return;
  if (kind_ == ModelKind::swe2d && std::isfinite(v[0]) && v[0] <= 0.0) {
    throw AdmissibilityError("swe2d: nonpositive geopotential in state " +
                             describe(v));
  }
  throw AdmissibilityError(to_string(kind_) + ": non-finite state " + describe(v));
}

void ModelSpec::validate_grid(const Grid& grid) const {
  if (grid.dim() != dim_) {
    throw ShapeError(to_string(kind_) + " needs a " + std::to_string(dim_) +
                     "D grid, got " + std::to_string(grid.dim()) + "D");
  }
  if (kind_ == ModelKind::euler3d_cyl && !(grid.axis(0).min > 0.0)) {
    throw Error("euler3d_cyl requires r_min > 0");
  }
  if (kind_ == ModelKind::euler3d_cyl && grid.axis(0).periodic) {
    throw Error("euler3d_cyl: the radial axis cannot be periodic");
  }
}

PointCoefficients ModelSpec::coefficients(std::span<const double> v,
                                          const Position& pos) const {
  check_admissible(v);
  PointCoefficients pc;
  switch (kind_) {
    case ModelKind::burgers1d:
      pc.A[0] = SmallMatrix(1);
      pc.A[0](0, 0) = v[0] / 3.0;
      pc.C = SmallMatrix(1);
      break;
    case ModelKind::euler2d:
      euler2d(v, pc);
      break;
    case ModelKind::euler3d_cyl:
      if (!(pos[0] > 0.0)) throw Error("euler3d_cyl: r must be positive");
      euler3d_cyl(v, pos[0], pc);
      break;
    case ModelKind::swe2d:
      swe2d(v, params_.alpha, params_.beta, coriolis(pos), pc);
      break;
  }
  return pc;
}

double ModelSpec::max_wave_speed(std::span<const double> v, int axis) const {
  switch (kind_) {
    case ModelKind::burgers1d:
      return std::abs(v[0]);
    case ModelKind::swe2d: {
      check_admissible(v);
      const double s = std::sqrt(v[0]);
      return std::abs(v[1 + axis]) / s + s;
    }
    case ModelKind::euler2d:
    case ModelKind::euler3d_cyl:
      return std::abs(v[axis]) + 1.0;
  }
  return 0.0;
}

CoefficientField coefficient_field(const ModelSpec& model, const Grid& grid,
                                   const StateField& v) {
  const std::size_t nc = static_cast<std::size_t>(model.n_comp());
  if (v.n_comp() != nc || v.nodes() != grid.nodes()) {
    throw ShapeError("coefficient_field: state does not match model/grid");
  }
  CoefficientField cf;
  for (int a = 0; a < model.dim(); ++a) cf.A.emplace_back(nc, grid.nodes());
  cf.C = MatrixField(nc, grid.nodes());
  std::array<double, 4> local{};
  for (std::size_t node = 0; node < grid.nodes(); ++node) {
    v.gather(node, local);
    const std::span<const double> vs(local.data(), nc);
    if (!model.admissible(vs)) {
      try {
        model.check_admissible(vs);
      } catch (const AdmissibilityError& e) {
        throw AdmissibilityError(std::string(e.what()) + " at node " +
                                 std::to_string(node));
      }
    }
    const PointCoefficients pc = model.coefficients(vs, grid.position(node));
    for (std::size_t r = 0; r < nc; ++r)
      for (std::size_t s = 0; s < nc; ++s) {
        for (int a = 0; a < model.dim(); ++a)
          cf.A[a].at(r, s, node) = pc.A[a](int(r), int(s));
        cf.C.at(r, s, node) = pc.C(int(r), int(s));
      }
  }
  return cf;
}

MatrixField norm_field(const ModelSpec& model, const Grid& grid) {
  const std::size_t nc = static_cast<std::size_t>(model.n_comp());
  MatrixField p(nc, grid.nodes());
  for (std::size_t node = 0; node < grid.nodes(); ++node) {
    const SmallMatrix m = model.norm_matrix(grid.position(node));
    for (std::size_t r = 0; r < nc; ++r)
      for (std::size_t s = 0; s < nc; ++s) p.at(r, s, node) = m(int(r), int(s));
  }
  return p;
}

CoefficientSplit coeff_split(const ModelSpec& model, const Grid& grid,
                             const StateField& mean, const StateField& pert) {
  const StateField total = linear_combination(1.0, mean, 1.0, pert);
  CoefficientSplit split;
  split.mean = coefficient_field(model, grid, mean);
  CoefficientField full = coefficient_field(model, grid, total);
  const std::size_t nc = static_cast<std::size_t>(model.n_comp());
  auto diff = [&](MatrixField& f, const MatrixField& m) {
    for (std::size_t r = 0; r < nc; ++r)
      for (std::size_t s = 0; s < nc; ++s) {
        double* fe = f.entry(r, s);
        const double* me = m.entry(r, s);
        for (std::size_t node = 0; node < grid.nodes(); ++node) fe[node] -= me[node];
      }
  };
  for (int a = 0; a < model.dim(); ++a) diff(full.A[a], split.mean.A[a]);
  diff(full.C, split.mean.C);
  split.pert = std::move(full);
  return split;
}

StateField swe_transform(const StateField& primitive) {
  if (primitive.n_comp() != 3) throw ShapeError("swe_transform needs (phi, u, v)");
  StateField out(3, primitive.nodes());
  for (std::size_t node = 0; node < primitive.nodes(); ++node) {
    const double phi = primitive(0, node);
    if (!(phi > 0.0)) {
      throw AdmissibilityError("swe_transform: nonpositive geopotential at node " +
                               std::to_string(node));
    }
    const double s = std::sqrt(phi);
    out(0, node) = phi;
    out(1, node) = s * primitive(1, node);
    out(2, node) = s * primitive(2, node);
  }
  return out;
}

StateField swe_inverse(const StateField& u) {
  if (u.n_comp() != 3) throw ShapeError("swe_inverse needs (U1, U2, U3)");
  StateField out(3, u.nodes());
  for (std::size_t node = 0; node < u.nodes(); ++node) {
    const double phi = u(0, node);
    if (!(phi > 0.0)) {
      throw AdmissibilityError("swe_inverse: nonpositive geopotential at node " +
                               std::to_string(node));
    }
    const double s = std::sqrt(phi);
    out(0, node) = phi;
    out(1, node) = u(1, node) / s;
    out(2, node) = u(2, node) / s;
  }
  return out;
}

}  // namespace skewform
