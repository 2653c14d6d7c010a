#include "lqjoint/joint.hpp"

#include "lqjoint/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

namespace lqjoint {

namespace {

double max_abs(const Eigen::MatrixXd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

void check_same_size(const ProjectionMatrix& s, const DensityMatrix& rho) {
  if (rho.size() != s.size()) {
    throw MismatchError("density matrix is " + std::to_string(rho.size()) + "x" +
                        std::to_string(rho.size()) + " but the projection is " +
                        std::to_string(s.size()) + "x" + std::to_string(s.size()));
  }
}

// <psi_f_i | rho | psi_g_j>
Eigen::MatrixXd rho_between(const ProjectionMatrix& s, const DensityMatrix& rho) {
  check_same_size(s, rho);
  if (rho.origin == DensityMatrix::Origin::PureUnit && rho.factor.size() == s.size() &&
      rho.factor == s.row_amplitudes) {
    // <psi_f_i|1><1|psi_g_j> = a_i b_j
    Eigen::MatrixXd out(s.size(), s.size());
    for (int i = 0; i < s.size(); ++i) {
      for (int j = 0; j < s.size(); ++j) out(i, j) = s.row_amplitudes[i] * s.col_amplitudes[j];
    }
    return out;
  }
  if (rho.origin == DensityMatrix::Origin::Identity) return s.s;
  return rho.r * s.s;
}

JointDistributionMatrix labelled(JointKind kind, const ProjectionMatrix& s) {
  JointDistributionMatrix out;
  out.kind = kind;
  out.row_nodes = s.row_nodes;
  out.col_nodes = s.col_nodes;
  return out;
}

}  // namespace

double ProjectionMatrix::orthogonality_residual() const {
  return max_abs(s * s.transpose() - Eigen::MatrixXd::Identity(size(), size()));
}

ProjectionMatrix projection(const LebesgueQuadrature& quad_f, const LebesgueQuadrature& quad_g,
                            const GramSet& grams) {
  if (quad_f.size() != quad_g.size()) {
    throw MismatchError("quadratures have different orders (" + std::to_string(quad_f.size()) +
                        " vs " + std::to_string(quad_g.size()) + ")");
  }
  if (!same_basis_functions(quad_f.basis, quad_g.basis) ||
      !same_basis_functions(quad_f.basis, grams.basis)) {
    throw MismatchError("quadratures were built on different bases");
  }
  if (quad_f.solution.alpha.rows() != grams.n || quad_g.solution.alpha.rows() != grams.n) {
    throw MismatchError("quadrature coefficient length does not match the Gram order");
  }
  ProjectionMatrix out;
  out.s = quad_f.solution.alpha.transpose() * grams.gram * quad_g.solution.alpha;
  out.row_nodes = quad_f.nodes;
  out.col_nodes = quad_g.nodes;
  out.row_amplitudes = quad_f.amplitudes;
  out.col_amplitudes = quad_g.amplitudes;
  return out;
}

DensityMatrix density_from_pure_unit(const LebesgueQuadrature& quad_f) {
  DensityMatrix rho;
  rho.origin = DensityMatrix::Origin::PureUnit;
  rho.factor = quad_f.amplitudes;
  rho.r = quad_f.amplitudes * quad_f.amplitudes.transpose();
  rho.spur = rho.r.trace();
  return rho;
}

DensityMatrix density_identity(int n) {
  if (n < 1) throw ConfigError("density matrix order must be at least 1");
  DensityMatrix rho;
  rho.origin = DensityMatrix::Origin::Identity;
  rho.r = Eigen::MatrixXd::Identity(n, n);
  rho.spur = rho.r.trace();
  return rho;
}

DensityMatrix density_from_spectral(const Eigen::VectorXd& lambda, const Eigen::MatrixXd& psi) {
  if (psi.rows() != psi.cols() || psi.cols() != lambda.size() || lambda.size() == 0) {
    throw MismatchError("spectral density needs n eigenvalues and an n x n coefficient matrix");
  }
  if (!lambda.allFinite() || !psi.allFinite()) {
    throw InputError("spectral density has non-finite entries");
  }
  const auto n = psi.cols();
  const double ortho = max_abs(psi.transpose() * psi - Eigen::MatrixXd::Identity(n, n));
  if (ortho > 1e-8) {
    throw InputError("spectral density eigenvectors are not orthonormal (residual " +
                     std::to_string(ortho) + ")");
  }
  DensityMatrix rho;
  rho.origin = DensityMatrix::Origin::Spectral;
  rho.r = psi * lambda.asDiagonal() * psi.transpose();
  rho.r = 0.5 * (rho.r + rho.r.transpose()).eval();
  rho.spur = rho.r.trace();
  return rho;
}

DensityMatrix density_from_matrix(const Eigen::MatrixXd& r) {
  if (r.rows() != r.cols() || r.rows() == 0) throw MismatchError("density matrix is not square");
  if (!r.allFinite()) throw InputError("density matrix has non-finite entries");
  if (max_abs(r - r.transpose()) > 1e-12 * std::max(1.0, max_abs(r))) {
    throw InputError("density matrix is not symmetric");
  }
  DensityMatrix rho;
  rho.origin = DensityMatrix::Origin::Explicit;
  rho.r = r;
  rho.spur = r.trace();
  return rho;
}

std::string_view to_string(JointKind kind) {
  switch (kind) {
    case JointKind::Value: return "value";
    case JointKind::Probability: return "probability";
    case JointKind::Density: return "density";
    case JointKind::PureSquared: return "pure_squared";
  }
  return "unknown";
}

JointKind parse_joint_kind(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "value") return JointKind::Value;
  if (lower == "probability") return JointKind::Probability;
  if (lower == "density") return JointKind::Density;
  if (lower == "pure_squared") return JointKind::PureSquared;
  throw ConfigError("unknown correlation kind '" + std::string(name) + "'");
}

double JointDistributionMatrix::normalization_residual() const {
  const double diff = std::abs(total() - normalization);
  return normalization != 0.0 ? diff / std::abs(normalization) : diff;
}

JointDistributionMatrix value_correlation(const LebesgueQuadrature& quad_f,
                                          const LebesgueQuadrature& quad_g,
                                          const ProjectionMatrix& s) {
  if (quad_f.size() != s.size() || quad_g.size() != s.size()) {
    throw MismatchError("quadrature orders do not match the projection matrix");
  }
  auto out = labelled(JointKind::Value, s);
  const Eigen::VectorXd& a = quad_f.amplitudes;
  const Eigen::VectorXd& b = quad_g.amplitudes;
  out.w.resize(s.size(), s.size());
  for (int i = 0; i < s.size(); ++i) {
    for (int j = 0; j < s.size(); ++j) out.w(i, j) = s.s(i, j) * (a[i] * b[j]);
  }
  out.normalization = quad_f.total_measure;
  return out;
}

JointDistributionMatrix probability_correlation(const ProjectionMatrix& s) {
  auto out = labelled(JointKind::Probability, s);
  out.w = s.s.cwiseAbs2();
  out.normalization = static_cast<double>(s.size());
  return out;
}

JointDistributionMatrix density_matrix_correlation(const ProjectionMatrix& s,
                                                   const DensityMatrix& rho) {
  const Eigen::MatrixXd between = rho_between(s, rho);
  auto out = labelled(JointKind::Density, s);
  out.w = s.s.cwiseProduct(between);
  out.normalization = rho.spur;
  return out;
}

JointDistributionMatrix pure_squared_correlation(const ProjectionMatrix& s,
                                                 const DensityMatrix& rho) {
  auto out = labelled(JointKind::PureSquared, s);
  out.w = rho_between(s, rho).cwiseAbs2();
  out.normalization = out.w.sum();
  return out;
}

double pureness_estimate(const ProjectionMatrix& s, const DensityMatrix& rho) {
  const auto squared = pure_squared_correlation(s, rho);
  const double total = squared.w.sum();
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw DegenerateInputError("squared correlation has zero total weight");
  }
  const Eigen::MatrixXd unit = squared.w / total;
  const Eigen::VectorXd rows = unit.rowwise().sum();
  const Eigen::VectorXd cols = unit.colwise().sum().transpose();
  return (unit - rows * cols.transpose()).norm();
}

}  // namespace lqjoint
