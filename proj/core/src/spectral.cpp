#include "lqjoint/spectral.hpp"

#include "lqjoint/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <string>

namespace lqjoint {

namespace {

// Gram eigenvalues at or below this multiple of n * eps * max are roundoff.
constexpr double kRoundoffFloorFactor = 100.0;
constexpr double kSymmetryTolerance = 1e-10;
constexpr double kZeroAmplitude = 1e-12;

double max_abs(const Eigen::MatrixXd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

void check_square_symmetric(const Eigen::MatrixXd& m, const char* name) {
  if (m.rows() != m.cols()) {
    throw InputError(std::string(name) + " is not square");
  }
  if (!m.allFinite()) throw InputError(std::string(name) + " has non-finite entries");
  const double scale = max_abs(m);
  const double asym = max_abs(m - m.transpose());
  if (asym > kSymmetryTolerance * scale) {
    throw InputError(std::string(name) + " is not symmetric (residual " + std::to_string(asym) +
                     ")");
  }
}

Eigen::MatrixXd symmetrized(const Eigen::MatrixXd& m) { return 0.5 * (m + m.transpose()); }

// Flip columns so that the amplitude alpha_i . moments is non-negative; when
// the amplitude vanishes, make the first significant coefficient positive.
void fix_signs(Eigen::MatrixXd& alpha, const Eigen::VectorXd& moments, double total_measure) {
  const double zero = kZeroAmplitude * std::sqrt(std::abs(total_measure));
  for (Eigen::Index i = 0; i < alpha.cols(); ++i) {
    auto column = alpha.col(i);
    const double amplitude = column.dot(moments);
    bool flip = false;
    if (std::abs(amplitude) > zero) {
      flip = amplitude < 0.0;
    } else {
      const double big = column.cwiseAbs().maxCoeff();
      for (Eigen::Index k = 0; k < column.size(); ++k) {
        if (std::abs(column[k]) > kZeroAmplitude * big) {
          flip = column[k] < 0.0;
          break;
        }
      }
    }
    if (flip) column = -column;
  }
}

}  // namespace

EigenSolution solve_generalized(const Eigen::MatrixXd& a, const Eigen::MatrixXd& gram,
                                const SolverOptions& options) {
  check_square_symmetric(a, "pencil matrix");
  check_square_symmetric(gram, "Gram matrix");
  if (a.rows() != gram.rows()) {
    throw MismatchError("pencil matrix is " + std::to_string(a.rows()) + "x" +
                        std::to_string(a.rows()) + " but Gram is " + std::to_string(gram.rows()) +
                        "x" + std::to_string(gram.rows()));
  }
  if (!(options.epsilon >= 0.0)) throw ConfigError("regularization epsilon must be >= 0");
  const auto n = static_cast<int>(gram.rows());
  if (n < 1) throw ConfigError("empty pencil");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> gram_eig(symmetrized(gram));
  if (gram_eig.info() != Eigen::Success) throw ConditioningError("Gram eigensolver failed", 0);
  const Eigen::VectorXd& d = gram_eig.eigenvalues();
  const double d_max = d.maxCoeff();
  if (!(d_max > 0.0)) throw ConditioningError("Gram matrix has no positive direction", 0);

  const double floor =
      kRoundoffFloorFactor * n * std::numeric_limits<double>::epsilon();
  int numerical_rank = 0;
  for (Eigen::Index i = 0; i < d.size(); ++i) numerical_rank += d[i] > floor * d_max ? 1 : 0;
  if (numerical_rank < n && options.epsilon < floor) {
    throw ConditioningError("Gram matrix is singular to working precision and epsilon " +
                                std::to_string(options.epsilon) + " does not cover it",
                            numerical_rank);
  }

  std::vector<Eigen::Index> kept;
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    if (d[i] > options.epsilon * d_max) kept.push_back(i);
  }
  const auto rank = static_cast<Eigen::Index>(kept.size());

  // Whitening map W with W^T G W = I on the retained range.
  Eigen::MatrixXd whiten(n, rank);
  for (Eigen::Index c = 0; c < rank; ++c) {
    whiten.col(c) = gram_eig.eigenvectors().col(kept[c]) / std::sqrt(d[kept[c]]);
  }
  const Eigen::MatrixXd reduced = symmetrized(whiten.transpose() * symmetrized(a) * whiten);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> reduced_eig(reduced);
  if (reduced_eig.info() != Eigen::Success) {
    throw ConditioningError("reduced eigensolver failed", static_cast<int>(rank));
  }

  EigenSolution out;
  out.requested_order = n;
  out.effective_rank = static_cast<int>(rank);
  out.eigenvalues = reduced_eig.eigenvalues();
  out.alpha = whiten * reduced_eig.eigenvectors();
  fix_signs(out.alpha, gram.col(0), gram(0, 0));
  return out;
}

namespace {

LebesgueQuadrature package(Process which, const GramSet& grams, EigenSolution solution) {
  LebesgueQuadrature quad;
  quad.process = which;
  quad.basis = grams.basis;
  quad.total_measure = grams.total_measure;
  fix_signs(solution.alpha, grams.moments, grams.total_measure);
  quad.nodes = solution.eigenvalues;
  quad.amplitudes = solution.alpha.transpose() * grams.moments;
  quad.weights = quad.amplitudes.cwiseAbs2();
  quad.solution = std::move(solution);
  return quad;
}

}  // namespace

LebesgueQuadrature lebesgue_quadrature(const GramSet& grams, Process which,
                                       const SolverOptions& options) {
  const Eigen::MatrixXd& a = which == Process::F ? grams.gram_f : grams.require_g();
  return package(which, grams, solve_generalized(a, grams.gram, options));
}

EigenSolution solve_in_f_basis(const GramSet& grams, const LebesgueQuadrature& quad_f) {
  const Eigen::MatrixXd& gram_g = grams.require_g();
  const Eigen::MatrixXd& alpha_f = quad_f.solution.alpha;
  if (alpha_f.rows() != grams.n || !same_basis_functions(quad_f.basis, grams.basis)) {
    throw MismatchError("f quadrature was not built from these Gram matrices");
  }
  const Eigen::MatrixXd b = symmetrized(alpha_f.transpose() * gram_g * alpha_f);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(b);
  if (eig.info() != Eigen::Success) {
    throw ConditioningError("eigensolver failed in the f eigenbasis", quad_f.size());
  }
  EigenSolution out;
  out.requested_order = quad_f.solution.requested_order;
  out.effective_rank = quad_f.solution.effective_rank;
  out.eigenvalues = eig.eigenvalues();
  out.alpha = alpha_f * eig.eigenvectors();
  fix_signs(out.alpha, grams.moments, grams.total_measure);
  return out;
}

LebesgueQuadrature quadrature_g_via_f(const GramSet& grams, const LebesgueQuadrature& quad_f) {
  return package(Process::G, grams, solve_in_f_basis(grams, quad_f));
}

QuadratureResiduals quadrature_residuals(const GramSet& grams, const LebesgueQuadrature& quad) {
  const Eigen::MatrixXd& a = quad.process == Process::F ? grams.gram_f : grams.require_g();
  const Eigen::MatrixXd& alpha = quad.solution.alpha;
  QuadratureResiduals r;
  const Eigen::MatrixXd ortho =
      alpha.transpose() * grams.gram * alpha - Eigen::MatrixXd::Identity(quad.size(), quad.size());
  r.orthonormality = max_abs(ortho);
  const Eigen::MatrixXd eigen_res = a * alpha - grams.gram * alpha * quad.nodes.asDiagonal();
  const double a_scale = max_abs(a);
  r.eigen = a_scale > 0.0 ? max_abs(eigen_res) / a_scale : max_abs(eigen_res);
  r.total_measure = std::abs(quad.weights.sum() - grams.total_measure) / grams.total_measure;
  const double mean = a(0, 0);
  const double mass = quad.weights.dot(quad.nodes.cwiseAbs());
  const double diff = std::abs(quad.weights.dot(quad.nodes) - mean);
  r.mean = mass > 0.0 ? diff / mass : diff;
  return r;
}

}  // namespace lqjoint
