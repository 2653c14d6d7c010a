#pragma once

#include "lqjoint/basis.hpp"
#include "lqjoint/moments.hpp"

#include <Eigen/Core>

namespace lqjoint {

struct SolverOptions {
  // Gram eigendirections with eigenvalue <= epsilon * max eigenvalue are
  // dropped. Zero disables regularization: a Gram singular to working
  // precision then raises ConditioningError.
  double epsilon = 1e-12;
};

// Solution of A alpha = lambda G alpha restricted to the retained range of G.
// Columns of alpha are G-orthonormal; eigenvalues ascend. size() equals the
// effective rank of G, which caps the requested order.
struct EigenSolution {
  int requested_order = 0;
  int effective_rank = 0;
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd alpha;

  int size() const noexcept { return static_cast<int>(eigenvalues.size()); }
};

// Generalized symmetric eigenproblem. Throws InputError on asymmetric or
// mismatched input, ConditioningError when G is singular beyond the budget.
// Column signs make <psi_i> = alpha_i . G e_0 non-negative (Q_0 == 1).
EigenSolution solve_generalized(const Eigen::MatrixXd& a, const Eigen::MatrixXd& gram,
                                const SolverOptions& options = {});

enum class Process { F, G };

struct LebesgueQuadrature {
  Process process = Process::F;
  BasisSpec basis;
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
  Eigen::VectorXd amplitudes;
  // <1> of the measure the quadrature was built on.
  double total_measure = 0.0;
  EigenSolution solution;

  int size() const noexcept { return static_cast<int>(nodes.size()); }
};

// Quadrature of f or g: nodes are pencil eigenvalues, amplitudes <psi_i>,
// weights amplitudes squared.
LebesgueQuadrature lebesgue_quadrature(const GramSet& grams, Process which,
                                       const SolverOptions& options = {});

// The g problem written in the f eigenbasis, where the right-hand side is the
// identity: B = alpha_f^T <Q|g|Q> alpha_f, B beta = lambda beta, and
// alpha_g = alpha_f beta.
EigenSolution solve_in_f_basis(const GramSet& grams, const LebesgueQuadrature& quad_f);

// Packages solve_in_f_basis as the quadrature of g.
LebesgueQuadrature quadrature_g_via_f(const GramSet& grams, const LebesgueQuadrature& quad_f);

// Diagnostics for a quadrature against the Grams it came from.
struct QuadratureResiduals {
  double orthonormality = 0.0;  // max |alpha^T G alpha - I|
  double eigen = 0.0;           // max |A alpha - G alpha diag(lambda)| / max|A|
  double total_measure = 0.0;   // |sum w - <1>| / <1>
  double mean = 0.0;            // |sum w node - <h>| / sum w |node|
};

QuadratureResiduals quadrature_residuals(const GramSet& grams, const LebesgueQuadrature& quad);

}  // namespace lqjoint
