#pragma once

#include "lqjoint/moments.hpp"
#include "lqjoint/spectral.hpp"

#include <Eigen/Core>

#include <string_view>

namespace lqjoint {

// S_ij = <psi_f_i | psi_g_j>, with the node and amplitude labels of both
// quadratures so that the correlation builders need nothing else.
struct ProjectionMatrix {
  Eigen::MatrixXd s;
  Eigen::VectorXd row_nodes;
  Eigen::VectorXd col_nodes;
  Eigen::VectorXd row_amplitudes;
  Eigen::VectorXd col_amplitudes;

  int size() const noexcept { return static_cast<int>(s.rows()); }
  // max |S S^T - I|
  double orthogonality_residual() const;
};

// Throws MismatchError when the quadratures disagree in order or basis, or
// were not built on these Grams.
ProjectionMatrix projection(const LebesgueQuadrature& quad_f, const LebesgueQuadrature& quad_g,
                            const GramSet& grams);

// rho in the f eigenbasis: R_ij = <psi_f_i | rho | psi_f_j>.
struct DensityMatrix {
  enum class Origin { PureUnit, Identity, Spectral, Explicit };

  Origin origin = Origin::Explicit;
  // For PureUnit: the amplitude vector a with R = a a^T.
  Eigen::VectorXd factor;
  Eigen::MatrixXd r;
  double spur = 0.0;

  int size() const noexcept { return static_cast<int>(r.rows()); }
};

// |1><1|: R = a a^T with a the f amplitudes; spur <1>.
DensityMatrix density_from_pure_unit(const LebesgueQuadrature& quad_f);
// The unit operator; spur n.
DensityMatrix density_identity(int n);
// R = psi diag(lambda) psi^T. Throws InputError unless psi has orthonormal
// columns within 1e-8.
DensityMatrix density_from_spectral(const Eigen::VectorXd& lambda, const Eigen::MatrixXd& psi);
// Any symmetric matrix. Throws InputError if not symmetric within 1e-12.
DensityMatrix density_from_matrix(const Eigen::MatrixXd& r);

enum class JointKind { Value, Probability, Density, PureSquared };

std::string_view to_string(JointKind kind);
// "value", "probability", "density", "pure_squared".
JointKind parse_joint_kind(std::string_view name);

struct JointDistributionMatrix {
  JointKind kind = JointKind::Value;
  Eigen::MatrixXd w;
  double normalization = 0.0;
  Eigen::VectorXd row_nodes;
  Eigen::VectorXd col_nodes;

  double total() const { return w.sum(); }
  bool has_negative() const { return w.size() > 0 && w.minCoeff() < 0.0; }
  // |sum W - normalization| / |normalization|
  double normalization_residual() const;
};

// V_ij = a_i S_ij b_j; normalization <1>.
JointDistributionMatrix value_correlation(const LebesgueQuadrature& quad_f,
                                          const LebesgueQuadrature& quad_g,
                                          const ProjectionMatrix& s);
// P_ij = S_ij^2; normalization n.
JointDistributionMatrix probability_correlation(const ProjectionMatrix& s);
// W_ij = S_ij (R S)_ij; normalization spur R.
JointDistributionMatrix density_matrix_correlation(const ProjectionMatrix& s,
                                                   const DensityMatrix& rho);
// W_ij = (R S)_ij^2; normalization is the computed sum.
JointDistributionMatrix pure_squared_correlation(const ProjectionMatrix& s,
                                                 const DensityMatrix& rho);

// Frobenius distance between the unit-sum squared correlation and the outer
// product of its marginals. Zero for pure states. Throws DegenerateInputError
// when the squared correlation sums to zero.
double pureness_estimate(const ProjectionMatrix& s, const DensityMatrix& rho);

}  // namespace lqjoint
