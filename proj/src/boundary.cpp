#include "skewform/boundary.hpp"

#include <algorithm>
#include <numeric>
#include <cmath>

#include "skewform/error.hpp"

namespace skewform {
namespace {

void count_signs(BoundaryAnalysis& out) {
  const double thr = 1e-12 * out.symmetric.max_abs();
  out.negative = out.zero = out.positive = 0;
  for (double l : out.eigenvalues) {
    if (l < -thr) {
      ++out.negative;
    } else if (l > thr) {
      ++out.positive;
    } else {
      ++out.zero;
    }
  }
}

double dot_n(std::span<const double> u, std::span<const double> n, int dim) {
  double s = 0.0;
  for (int i = 0; i < dim; ++i) s += n[i] * u[i];
  return s;
}

}  // namespace

std::string to_string(Formulation f) {
  switch (f) {
    case Formulation::nonlinear:
      return "nonlinear";
    case Formulation::linearised:
      return "linearised";
    case Formulation::rewritten:
      return "rewritten";
  }
  return "unknown";
}

Formulation parse_formulation(const std::string& text) {
  for (Formulation f :
       {Formulation::nonlinear, Formulation::linearised, Formulation::rewritten}) {
    if (text == to_string(f)) return f;
  }
  throw Error("unknown formulation '" + text +
              "' (expected nonlinear, linearised or rewritten)");
}

void jacobi_eigen(const SmallMatrix& s, std::vector<double>& values,
                  SmallMatrix& vectors, double tol) {
  const int n = s.n;
  SmallMatrix a = s;
  vectors = SmallMatrix::identity(n);
  const double scale = std::max(s.max_abs(), 1e-300);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
    if (off <= tol * scale) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (a(p, q) == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - sn * akq;
          a(k, q) = sn * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - sn * aqk;
          a(q, k) = sn * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = vectors(k, p);
          const double vkq = vectors(k, q);
          vectors(k, p) = c * vkp - sn * vkq;
          vectors(k, q) = sn * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<int> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int x, int y) { return a(x, x) < a(y, y); });
  const SmallMatrix unsorted = vectors;
  values.assign(n, 0.0);
  for (int k = 0; k < n; ++k) {
    values[k] = a(idx[k], idx[k]);
    for (int i = 0; i < n; ++i) vectors(i, k) = unsorted(i, idx[k]);
  }
}

std::vector<double> jacobi_eigenvalues(const SmallMatrix& s, double tol) {
  std::vector<double> values;
  SmallMatrix vectors;
  jacobi_eigen(s, values, vectors, tol);
  std::sort(values.begin(), values.end());
  return values;
}

SmallMatrix normal_matrix(const PointCoefficients& pc, int dim,
                          std::span<const double> normal) {
  SmallMatrix m(pc.A[0].n);
  for (int a = 0; a < dim; ++a) {
    if (normal[a] != 0.0) m = m + normal[a] * pc.A[a];
  }
  return m;
}

namespace {

SmallMatrix signed_part(const SmallMatrix& s, bool positive) {
  std::vector<double> values;
  SmallMatrix v;
  jacobi_eigen(s, values, v);
  SmallMatrix out(s.n);
  for (int k = 0; k < s.n; ++k) {
    const double l = values[k];
    if (positive ? !(l > 0.0) : !(l < 0.0)) continue;
    for (int i = 0; i < s.n; ++i)
      for (int j = 0; j < s.n; ++j) out(i, j) += l * v(i, k) * v(j, k);
  }
  return out;
}

}  // namespace

SmallMatrix positive_part(const SmallMatrix& s) { return signed_part(s, true); }
SmallMatrix negative_part(const SmallMatrix& s) { return signed_part(s, false); }

BoundaryAnalysis analyze_boundary(const AnalysisInput& in) {
  const ModelSpec& model = in.model;
  const int nc = model.n_comp();
  const int dim = model.dim();
  if (static_cast<int>(in.state.size()) != nc) {
    throw ShapeError("analyze_boundary: state needs " + std::to_string(nc) +
                     " components");
  }
  double nn = 0.0;
  for (int i = 0; i < dim; ++i) nn += in.normal[i] * in.normal[i];
  if (std::abs(nn - 1.0) > 1e-12) throw Error("analyze_boundary: normal must be a unit vector");

  BoundaryAnalysis out;
  out.formulation = in.formulation;
  out.normal = in.normal;
  out.alpha = model.params().alpha;
  out.beta = model.params().beta;
  const std::span<const double> u(in.state);
  const std::span<const double> n(in.normal.data(), static_cast<std::size_t>(dim));
  const PointCoefficients pc = model.coefficients(u, in.position);
  const SmallMatrix nA = normal_matrix(pc, dim, n);

  const bool swe = model.kind() == ModelKind::swe2d;
  switch (in.formulation) {
    case Formulation::nonlinear: {
      if (swe) {
        const double un = dot_n(u.subspan(1), n, dim) / std::sqrt(u[0]);
        out.symmetric = SmallMatrix(3);
        out.symmetric(0, 0) = un;
        out.symmetric(1, 1) = 0.5 * un;
        out.symmetric(2, 2) = 0.5 * un;
      } else {
        out.symmetric = nA.symmetric_part();
      }
      out.contraction = nA.bilinear(u, u);
      out.eigenvalues = jacobi_eigenvalues(out.symmetric);
      count_signs(out);
      out.conditions = out.negative;
      break;
    }
    case Formulation::linearised: {
      out.symmetric = nA.symmetric_part();
      if (!in.perturbation.empty()) {
        if (static_cast<int>(in.perturbation.size()) != nc) {
          throw ShapeError("analyze_boundary: perturbation size mismatch");
        }
        out.contraction = nA.bilinear(in.perturbation, in.perturbation);
      }
      out.eigenvalues = jacobi_eigenvalues(out.symmetric);
      count_signs(out);
      out.conditions = out.negative;
      break;
    }
    case Formulation::rewritten: {
      if (!swe) throw Error("the rewritten formulation exists for swe2d only");
      const double s = std::sqrt(u[0]);
      const double Un = n[0] * u[1] + n[1] * u[2];
      const double Ut = -n[1] * u[1] + n[0] * u[2];
      if (std::abs(Un) < in.delta_n) {
        throw AdmissibilityError("glancing face: |U_n| = " + std::to_string(std::abs(Un)) +
                                 " below delta_n");
      }
      if (s < in.delta_1) throw AdmissibilityError("sqrt(U1) below delta_1");
      const double c = 1.0 / (2.0 * Un * s);
      out.rewritten_vars = {u[0] * u[0], Un * Un + u[0] * u[0], Un * Ut};
      out.symmetric = SmallMatrix(3);
      out.symmetric(0, 0) = -c;
      out.symmetric(1, 1) = c;
      out.symmetric(2, 2) = c;
      const auto& w = out.rewritten_vars;
      out.contraction = c * (-w[0] * w[0] + w[1] * w[1] + w[2] * w[2]);
      out.eigenvalues = jacobi_eigenvalues(out.symmetric);
      count_signs(out);
      AnalysisInput plain = in;
      plain.formulation = Formulation::nonlinear;
      out.conditions = std::min(out.negative, analyze_boundary(plain).conditions);
      break;
    }
  }
  return out;
}

std::string to_string(Closure c) {
  switch (c) {
    case Closure::none:
      return "none";
    case Closure::periodic:
      return "periodic";
    case Closure::dissipative:
      return "dissipative";
    case Closure::swe_two_condition:
      return "swe_two_condition";
  }
  return "unknown";
}

Closure parse_closure(const std::string& text) {
  for (Closure c : {Closure::none, Closure::periodic, Closure::dissipative,
                    Closure::swe_two_condition}) {
    if (text == to_string(c)) return c;
  }
  throw Error("unknown closure '" + text +
              "' (expected none, periodic, dissipative or swe_two_condition)");
}

const FaceClosure& SatConfig::at(const Face& f) const {
  static const FaceClosure kNone{};
  const auto it = faces.find(f.id());
  return it == faces.end() ? kNone : it->second;
}

SatConfig SatConfig::natural(const Grid& grid) {
  SatConfig cfg;
  for (int a = 0; a < grid.dim(); ++a) {
    if (!grid.axis(a).periodic) continue;
    cfg.set(Face{a, Side::low}, FaceClosure{Closure::periodic, 1.0, {}});
    cfg.set(Face{a, Side::high}, FaceClosure{Closure::periodic, 1.0, {}});
  }
  return cfg;
}

void validate_sat(const Discretization& d, const SatConfig& sat) {
  const Grid& g = d.grid();
  for (const auto& [id, fc] : sat.faces) {
    const Face f = Face::from_id(id);
    if (f.axis < 0 || f.axis >= g.dim()) {
      throw Error("boundary closure on face " + std::to_string(id) +
                  " which does not exist in a " + std::to_string(g.dim()) + "D grid");
    }
    const bool periodic_axis = g.axis(f.axis).periodic;
    if (periodic_axis != (fc.kind == Closure::periodic)) {
      throw Error("face " + std::to_string(id) + ": closure '" + to_string(fc.kind) +
                  (periodic_axis ? "' on a periodic axis" : "' on a non-periodic axis"));
    }
    if (!std::isfinite(fc.sigma)) throw Error("penalty sigma must be finite");
    for (double x : fc.data) {
      if (!std::isfinite(x)) throw Error("boundary data must be finite");
    }
    const std::size_t nf = g.nodes() / g.axis(f.axis).n;
    if (fc.kind == Closure::dissipative) {
      if (fc.sigma < 0.5) throw Error("dissipative closure needs sigma >= 1/2");
      if (!fc.data.empty() && fc.data.size() != d.n_comp() * nf) {
        throw ShapeError("dissipative boundary data has the wrong size");
      }
    }
    if (fc.kind == Closure::swe_two_condition) {
      if (d.model.kind() != ModelKind::swe2d) {
        throw Error("swe_two_condition closure requires the swe2d model");
      }
      if (fc.sigma != 1.0) throw Error("swe_two_condition closure requires sigma = 1");
      if (!fc.data.empty() && fc.data.size() != 2 * nf) {
        throw ShapeError("swe_two_condition data must hold (g2, g3) per face node");
      }
    }
  }
  for (int a = 0; a < g.dim(); ++a) {
    if (!g.axis(a).periodic) continue;
    for (Side s : {Side::low, Side::high}) {
      if (sat.at(Face{a, s}).kind != Closure::periodic) {
        throw Error("periodic axis " + std::to_string(a) +
                    " needs the periodic closure on both faces");
      }
    }
  }
}

namespace {

struct FaceData {
  std::vector<std::size_t> nodes;
  double inv_weight;  // 1 / P_axis at the boundary node
};

FaceData face_data(const Discretization& d, const Face& f) {
  const SbpOperator1D& op = d.ops.op(f.axis);
  const double p = f.side == Side::low ? op.weights().front() : op.weights().back();
  return FaceData{d.grid().face_nodes(f), 1.0 / p};
}

void two_condition_terms(const StateField& u, const Face& f, const FaceData& fd,
                         std::vector<double>& c, double& k) {
  const std::size_t nf = fd.nodes.size();
  std::array<double, 2> n{0.0, 0.0};
  n[f.axis] = f.sign();
  double min_un = INFINITY;
  double min_s = INFINITY;
  c.resize(nf);
  for (std::size_t i = 0; i < nf; ++i) {
    const std::size_t node = fd.nodes[i];
    const double u1 = u(0, node);
    if (!(u1 > 0.0)) {
      throw AdmissibilityError("swe_two_condition: nonpositive geopotential at node " +
                               std::to_string(node));
    }
    const double Un = n[0] * u(1, node) + n[1] * u(2, node);
    if (!(Un < 0.0)) {
      throw AdmissibilityError("swe_two_condition: face " + std::to_string(f.id()) +
                               " is not inflow at node " + std::to_string(node));
    }
    const double s = std::sqrt(u1);
    c[i] = 1.0 / (2.0 * -Un * s);
    min_un = std::min(min_un, -Un);
    min_s = std::min(min_s, s);
  }
  k = 1.0 / (2.0 * min_un * min_s);
}

}  // namespace

StateField build_sat(const Discretization& d, const CoefficientField& coeff,
                     const StateField& u, const SatConfig& sat, Direction dir) {
  require_state(d, u, "build_sat");
  const Grid& g = d.grid();
  const std::size_t nc = d.n_comp();
  StateField out(nc, g.nodes());
  for (const Face& f : g.faces()) {
    const FaceClosure& fc = sat.at(f);
    if (fc.kind == Closure::none || fc.kind == Closure::periodic) continue;
    const FaceData fd = face_data(d, f);
    const std::size_t nf = fd.nodes.size();

    if (fc.kind == Closure::dissipative) {
      for (std::size_t i = 0; i < nf; ++i) {
        const std::size_t node = fd.nodes[i];
        SmallMatrix m(static_cast<int>(nc));
        for (std::size_t r = 0; r < nc; ++r)
          for (std::size_t s = 0; s < nc; ++s)
            m(int(r), int(s)) = f.sign() * coeff.A[f.axis].at(r, s, node);
        const SmallMatrix sym = m.symmetric_part();
        const SmallMatrix part =
            dir == Direction::primal ? negative_part(sym) : positive_part(sym);
        const double scale = (dir == Direction::primal ? 2.0 : -2.0) * fc.sigma * fd.inv_weight;
        std::array<double, 4> diff{};
        for (std::size_t s = 0; s < nc; ++s) {
          const double gval = fc.data.empty() ? 0.0 : fc.data[s * nf + i];
          diff[s] = u(s, node) - gval;
        }
        for (std::size_t r = 0; r < nc; ++r) {
          double acc = 0.0;
          for (std::size_t s = 0; s < nc; ++s) acc += part(int(r), int(s)) * diff[s];
          out(r, node) += scale * acc;
        }
      }
      continue;
    }

    if (dir == Direction::dual) {
      throw Error("swe_two_condition closure is defined for the primal problem only");
    }
    std::vector<double> c;
    double k = 0.0;
    two_condition_terms(u, f, fd, c, k);
    std::array<double, 2> n{0.0, 0.0};
    n[f.axis] = f.sign();
    for (std::size_t i = 0; i < nf; ++i) {
      const std::size_t node = fd.nodes[i];
      const double u1 = u(0, node);
      const double Un = n[0] * u(1, node) + n[1] * u(2, node);
      const double Ut = -n[1] * u(1, node) + n[0] * u(2, node);
      const double w1 = u1 * u1;
      const double w2 = Un * Un + u1 * u1;
      const double w3 = Un * Ut;
      const double g2 = fc.data.empty() ? 0.0 : fc.data[i];
      const double g3 = fc.data.empty() ? 0.0 : fc.data[nf + i];
      const double g2q = g2 * g2 * g2 * g2;
      const double g3q = g3 * g3 * g3 * g3;
      const double bracket = -w1 * w1 + g2q + g3q;
      const double tau = -c[i] * ((w2 * w2 - g2q) + (w3 * w3 - g3q)) +
                         (k - c[i]) * std::min(bracket, 0.0);
      double norm2 = 0.0;
      for (std::size_t s = 0; s < nc; ++s) norm2 += u(s, node) * u(s, node);
      for (std::size_t s = 0; s < nc; ++s)
        out(s, node) += fd.inv_weight * tau * u(s, node) / norm2;
    }
  }
  return out;
}

double swe_two_condition_bound(const Discretization& d, const StateField& u,
                               const Face& face, const FaceClosure& closure) {
  const FaceData fd = face_data(d, face);
  std::vector<double> c;
  double k = 0.0;
  two_condition_terms(u, face, fd, c, k);
  const auto fw = d.ops.face_weights(face);
  const std::size_t nf = fd.nodes.size();
  double acc = 0.0;
  for (std::size_t i = 0; i < nf; ++i) {
    const double u1 = u(0, fd.nodes[i]);
    const double g2 = closure.data.empty() ? 0.0 : closure.data[i];
    const double g3 = closure.data.empty() ? 0.0 : closure.data[nf + i];
    acc += fw[i] * k * (-u1 * u1 * u1 * u1 + g2 * g2 * g2 * g2 + g3 * g3 * g3 * g3);
  }
  return acc;
}

}  // namespace skewform
