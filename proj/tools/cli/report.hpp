#pragma once

#include "pipeline.hpp"

#include "json.hpp"

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lqjoint::cli {

using Json = nlohmann::ordered_json;

// A joint matrix together with the identities it is checked against.
struct JointResult {
  JointDistributionMatrix matrix;
  std::optional<std::string> rho;       // density and pure_squared only
  double residual_total = 0.0;          // |sum - normalization| / |normalization|
  std::optional<double> residual_rows;  // value: vs w_f; probability: vs 1
  std::optional<double> residual_cols;
  // pure_squared with rho = |1><1|: W vs w_f w_g^T, and sum vs <1>^2.
  std::optional<double> residual_factorization;
  std::optional<double> residual_square_total;
  std::optional<double> pureness;                // pure_squared only
};

JointResult evaluate_joint(JointKind kind, const PipelineResult& result,
                           const ProjectionMatrix& s, const DensityMatrix& rho,
                           const std::string& rho_label);

// Keys: meta, gram, quadrature_f, quadrature_g, joint (in that order).
Json build_report(const PipelineResult& result, const RunConfig& config,
                  std::span<const JointResult> joint, std::optional<double> projection_residual);

// JSON is printed with nlohmann's shortest round-trip number formatting.
void write_json(std::ostream& out, const Json& report);
// Long format `table,field,i,j,value`; numbers with 17 significant digits.
void write_csv(std::ostream& out, const Json& report);

// What a report stores: enough to recompute every joint matrix.
struct StoredReport {
  GramSet grams;  // gram, moments, total_measure and basis only
  LebesgueQuadrature quad_f;
  std::optional<LebesgueQuadrature> quad_g;
  std::vector<JointDistributionMatrix> joint;
};

// Throws InputError if required keys are missing or malformed.
StoredReport parse_report(const Json& report);

}  // namespace lqjoint::cli
