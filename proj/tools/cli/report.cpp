#include "report.hpp"

#include "lqjoint/errors.hpp"

#include <cmath>
#include <ostream>

#include <fmt/format.h>

namespace lqjoint::cli {

namespace {

Json to_json(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Json to_json(const Eigen::MatrixXd& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    out.push_back(std::move(row));
  }
  return out;
}

Eigen::VectorXd vector_from(const Json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string("report: ") + what + " is not an array");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  return v;
}

Eigen::MatrixXd matrix_from(const Json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string("report: ") + what + " is not an array");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows == 0 ? 0 : static_cast<Eigen::Index>(j[0].size());
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw InputError(std::string("report: ") + what + " is ragged");
    }
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = row[static_cast<std::size_t>(c)].get<double>();
  }
  return m;
}

Json quadrature_json(const LebesgueQuadrature& q) {
  Json out;
  out["nodes"] = to_json(q.nodes);
  out["weights"] = to_json(q.weights);
  out["amplitudes"] = to_json(q.amplitudes);
  out["alpha"] = to_json(q.solution.alpha);
  return out;
}

LebesgueQuadrature quadrature_from(const Json& j, Process process, const GramSet& grams) {
  LebesgueQuadrature q;
  q.process = process;
  q.basis = grams.basis;
  q.total_measure = grams.total_measure;
  q.nodes = vector_from(j.at("nodes"), "nodes");
  q.weights = vector_from(j.at("weights"), "weights");
  q.amplitudes = vector_from(j.at("amplitudes"), "amplitudes");
  q.solution.alpha = matrix_from(j.at("alpha"), "alpha");
  q.solution.eigenvalues = q.nodes;
  q.solution.requested_order = grams.n;
  q.solution.effective_rank = static_cast<int>(q.nodes.size());
  if (q.solution.alpha.rows() != grams.n || q.solution.alpha.cols() != q.nodes.size()) {
    throw InputError("report: alpha shape does not match the quadrature");
  }
  return q;
}

double max_rel(const Eigen::VectorXd& got, const Eigen::VectorXd& want, double scale) {
  return (got - want).cwiseAbs().maxCoeff() / scale;
}

}  // namespace

JointResult evaluate_joint(JointKind kind, const PipelineResult& result,
                           const ProjectionMatrix& s, const DensityMatrix& rho,
                           const std::string& rho_label) {
  const auto& qf = result.quad_f;
  const auto& qg = *result.quad_g;
  const double total = result.grams.total_measure;
  JointResult out;
  switch (kind) {
    case JointKind::Value:
      out.matrix = value_correlation(qf, qg, s);
      out.residual_rows = max_rel(out.matrix.w.rowwise().sum(), qf.weights, total);
      out.residual_cols = max_rel(out.matrix.w.colwise().sum().transpose(), qg.weights, total);
      break;
    case JointKind::Probability: {
      out.matrix = probability_correlation(s);
      const Eigen::VectorXd ones = Eigen::VectorXd::Ones(s.size());
      out.residual_rows = max_rel(out.matrix.w.rowwise().sum(), ones, 1.0);
      out.residual_cols = max_rel(out.matrix.w.colwise().sum().transpose(), ones, 1.0);
      break;
    }
    case JointKind::Density:
      out.matrix = density_matrix_correlation(s, rho);
      out.rho = rho_label;
      break;
    case JointKind::PureSquared:
      out.matrix = pure_squared_correlation(s, rho);
      out.rho = rho_label;
      out.pureness = pureness_estimate(s, rho);
      if (rho.origin == DensityMatrix::Origin::PureUnit) {
        const Eigen::MatrixXd product = qf.weights * qg.weights.transpose();
        out.residual_factorization =
            (out.matrix.w - product).cwiseAbs().maxCoeff() / (total * total);
        out.residual_square_total = std::abs(out.matrix.total() - total * total) / (total * total);
      }
      break;
  }
  out.residual_total = out.matrix.normalization_residual();
  return out;
}

Json build_report(const PipelineResult& result, const RunConfig& config,
                  std::span<const JointResult> joint, std::optional<double> projection_residual) {
  const auto& grams = result.grams;
  Json meta;
  meta["n"] = config.n;
  meta["effective_rank"] = result.quad_f.solution.effective_rank;
  meta["basis"] = std::string(to_string(grams.basis.family));
  meta["domain"] = Json::array({grams.basis.domain.x_min(), grams.basis.domain.x_max()});
  meta["route"] = config.route == GramRoute::Moments ? "moments" : "samples";
  meta["source"] = result.source;
  if (result.seed) meta["seed"] = *result.seed;
  meta["total_measure"] = grams.total_measure;
  meta["integral_f"] = grams.gram_f(0, 0);
  if (grams.gram_g) meta["integral_g"] = (*grams.gram_g)(0, 0);
  meta["epsilon"] = config.epsilon;

  Json residuals;
  const auto add_quadrature = [&](const char* prefix, const LebesgueQuadrature& q) {
    const auto r = quadrature_residuals(grams, q);
    residuals[std::string(prefix) + "_orthonormality"] = r.orthonormality;
    residuals[std::string(prefix) + "_eigen"] = r.eigen;
    residuals[std::string(prefix) + "_total_measure"] = r.total_measure;
    residuals[std::string(prefix) + "_mean"] = r.mean;
  };
  add_quadrature("f", result.quad_f);
  if (result.quad_g) add_quadrature("g", *result.quad_g);
  if (result.two_route_residual) residuals["two_route"] = *result.two_route_residual;
  if (projection_residual) residuals["projection_orthogonality"] = *projection_residual;
  meta["residuals"] = std::move(residuals);

  Json report;
  report["meta"] = std::move(meta);
  report["gram"] = Json{{"matrix", to_json(grams.gram)}, {"moments", to_json(grams.moments)}};
  report["quadrature_f"] = quadrature_json(result.quad_f);
  if (result.quad_g) report["quadrature_g"] = quadrature_json(*result.quad_g);
  if (!joint.empty()) {
    Json list = Json::array();
    for (const auto& entry : joint) {
      const auto& m = entry.matrix;
      Json item;
      item["kind"] = std::string(to_string(m.kind));
      if (entry.rho) item["rho"] = *entry.rho;
      item["normalization"] = m.normalization;
      item["sum"] = m.total();
      item["has_negative"] = m.has_negative();
      Json res;
      res["total"] = entry.residual_total;
      if (entry.residual_rows) res["rows"] = *entry.residual_rows;
      if (entry.residual_cols) res["cols"] = *entry.residual_cols;
      if (entry.residual_factorization) res["factorization"] = *entry.residual_factorization;
      if (entry.residual_square_total) res["square_total"] = *entry.residual_square_total;
      item["residuals"] = std::move(res);
      if (entry.pureness) item["pureness"] = *entry.pureness;
      item["row_sums"] = to_json(Eigen::VectorXd(m.w.rowwise().sum()));
      item["col_sums"] = to_json(Eigen::VectorXd(m.w.colwise().sum().transpose()));
      item["matrix"] = to_json(m.w);
      item["row_nodes"] = to_json(m.row_nodes);
      item["col_nodes"] = to_json(m.col_nodes);
      list.push_back(std::move(item));
    }
    report["joint"] = std::move(list);
  }
  return report;
}

void write_json(std::ostream& out, const Json& report) { out << report.dump(2) << '\n'; }

namespace {

std::string scalar_text(const Json& v) {
  if (v.is_number_float()) return fmt::format("{:.17g}", v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void flatten(std::ostream& out, const std::string& table, const std::string& field,
             const Json& v) {
  if (v.is_object()) {
    for (const auto& [key, child] : v.items()) {
      flatten(out, table, field.empty() ? key : field + "." + key, child);
    }
  } else if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i].is_array()) {
        for (std::size_t j = 0; j < v[i].size(); ++j) {
          out << table << ',' << field << ',' << i << ',' << j << ',' << scalar_text(v[i][j])
              << '\n';
        }
      } else {
        out << table << ',' << field << ',' << i << ",," << scalar_text(v[i]) << '\n';
      }
    }
  } else {
    out << table << ',' << field << ",,," << scalar_text(v) << '\n';
  }
}

}  // namespace

void write_csv(std::ostream& out, const Json& report) {
  out << "table,field,i,j,value\n";
  for (const auto& [key, value] : report.items()) {
    if (key == "joint") {
      for (const auto& item : value) {
        std::string table = "joint:" + item.at("kind").get<std::string>();
        if (item.contains("rho")) table += "[" + item.at("rho").get<std::string>() + "]";
        Json rest = item;
        rest.erase("kind");
        rest.erase("rho");
        flatten(out, table, "", rest);
      }
    } else {
      flatten(out, key, "", value);
    }
  }
}

StoredReport parse_report(const Json& report) {
  try {
    StoredReport stored;
    const auto& meta = report.at("meta");
    auto& grams = stored.grams;
    grams.basis.family = parse_basis_family(meta.at("basis").get<std::string>());
    const auto& domain = meta.at("domain");
    const double lo = domain.at(0).get<double>();
    const double hi = domain.at(1).get<double>();
    grams.basis.domain = lo < hi ? DomainMap(lo, hi) : DomainMap::identity();
    grams.gram = matrix_from(report.at("gram").at("matrix"), "gram.matrix");
    grams.moments = vector_from(report.at("gram").at("moments"), "gram.moments");
    grams.n = static_cast<int>(grams.gram.rows());
    grams.basis.size = grams.n;
    grams.total_measure = meta.at("total_measure").get<double>();
    stored.quad_f = quadrature_from(report.at("quadrature_f"), Process::F, grams);
    if (report.contains("quadrature_g")) {
      stored.quad_g = quadrature_from(report.at("quadrature_g"), Process::G, grams);
    }
    if (report.contains("joint")) {
      for (const auto& item : report.at("joint")) {
        JointDistributionMatrix m;
        m.kind = parse_joint_kind(item.at("kind").get<std::string>());
        m.normalization = item.at("normalization").get<double>();
        m.w = matrix_from(item.at("matrix"), "joint.matrix");
        m.row_nodes = vector_from(item.at("row_nodes"), "joint.row_nodes");
        m.col_nodes = vector_from(item.at("col_nodes"), "joint.col_nodes");
        stored.joint.push_back(std::move(m));
      }
    }
    return stored;
  } catch (const Json::exception& e) {
    throw InputError(std::string("report: ") + e.what());
  }
}

}  // namespace lqjoint::cli
