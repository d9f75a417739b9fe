#include "riccert/serialize.hpp"

#include <fstream>

namespace riccert {

using nlohmann::json;

namespace {

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j)
      row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j, Index rows, Index cols,
                        const char* what) {
  if (!j.is_array() || static_cast<Index>(j.size()) != rows)
    throw Error(std::string(what) + ": expected " + std::to_string(rows) +
                " rows");
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const json& row = j[i];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols)
      throw Error(std::string(what) + ": expected " + std::to_string(cols) +
                  " columns");
    for (Index k = 0; k < cols; ++k) {
      const json& entry = row[k];
      if (!entry.is_array() || entry.size() != 2)
        throw Error(std::string(what) + ": entries must be [re, im] pairs");
      m(i, k) = Complex(entry[0].get<double>(), entry[1].get<double>());
    }
  }
  return m;
}

}  // namespace

json instance_to_json(const BlockOperator& op) {
  json j;
  j["n0"] = op.n0;
  j["n1"] = op.n1;
  j["lambda"] = op.lambda;
  j["A0"] = matrix_to_json(op.a0);
  j["A1"] = matrix_to_json(op.a1);
  j["V"] = matrix_to_json(op.v);
  return j;
}

BlockOperator instance_from_json(const json& j) {
  BlockOperator op;
  op.n0 = j.at("n0").get<Index>();
  op.n1 = j.at("n1").get<Index>();
  if (op.n0 < 1 || op.n1 < 1)
    throw Error("instance: n0 and n1 must be >= 1");
  op.lambda = j.at("lambda").get<double>();
  op.a0 = matrix_from_json(j.at("A0"), op.n0, op.n0, "A0");
  op.a1 = matrix_from_json(j.at("A1"), op.n1, op.n1, "A1");
  op.v = matrix_from_json(j.at("V"), op.n0, op.n1, "V");
  require_finite(op.a0, "instance A0");
  require_finite(op.a1, "instance A1");
  require_finite(op.v, "instance V");
  return op;
}

json generator_to_json(const GeneratorSpec& spec) {
  return {{"n0", spec.n0},
          {"n1", spec.n1},
          {"ker0_dim", spec.ker0_dim},
          {"ker1_dim", spec.ker1_dim},
          {"gap", spec.gap},
          {"vnorm", spec.vnorm},
          {"couple_kernels", spec.couple_kernels},
          {"seed", spec.seed},
          {"lambda", spec.lambda}};
}

GeneratorSpec generator_from_json(const json& j) {
  GeneratorSpec spec;
  spec.n0 = j.value("n0", spec.n0);
  spec.n1 = j.value("n1", spec.n1);
  spec.ker0_dim = j.value("ker0_dim", spec.ker0_dim);
  spec.ker1_dim = j.value("ker1_dim", spec.ker1_dim);
  spec.gap = j.value("gap", spec.gap);
  spec.vnorm = j.value("vnorm", spec.vnorm);
  spec.couple_kernels = j.value("couple_kernels", spec.couple_kernels);
  spec.seed = j.value("seed", spec.seed);
  spec.lambda = j.value("lambda", spec.lambda);
  return spec;
}

json tolerances_to_json(const Tolerances& tol) {
  return {{"tol_rank", tol.rank},
          {"tol_eig", tol.eig},
          {"tol_orth", tol.orth},
          {"tol_sub", tol.sub}};
}

json report_to_json(const CertificationReport& report, const Tolerances& tol) {
  json j;
  j["n0"] = report.n0;
  j["n1"] = report.n1;
  j["lambda"] = report.lambda;
  j["d"] = report.d;
  j["delta_minus"] = report.delta_minus;
  j["delta_plus"] = report.delta_plus;
  j["delta"] = report.delta;
  j["vnorm"] = report.vnorm;
  j["norm_B"] = report.norm_b;
  j["norm_X"] = report.norm_x;
  j["norm_PQ"] = report.norm_pq;
  j["upper_X"] = report.upper_x;
  j["upper_PQ"] = report.upper_pq;
  j["lower_X"] = report.lower_x;
  j["lower_PQ"] = report.lower_pq;
  j["residual"] = report.residual;
  j["mu1_multiplicity"] = report.mu1_multiplicity;
  j["dims"] = {{"ker_A0", report.dim_ker_a0}, {"ker_A1", report.dim_ker_a1},
               {"N0", report.dim_n0},         {"N1", report.dim_n1},
               {"K0", report.dim_k0},         {"K1", report.dim_k1}};
  j["verdict"] = {{"condition_i", report.verdict.condition_i},
                  {"condition_ii", report.verdict.condition_ii},
                  {"unique", report.verdict.unique},
                  {"strictly_contractive", report.verdict.strictly_contractive},
                  {"isolated", report.verdict.isolated}};
  j["gap_empty"] = report.gap_empty;
  json checks = json::array();
  for (const auto& c : report.checks)
    checks.push_back({{"name", c.name}, {"ok", c.ok}, {"defect", c.defect}});
  j["checks"] = std::move(checks);
  j["failures"] = report.failures();
  j["all_pass"] = report.all_pass;
  j["tolerances"] = tolerances_to_json(tol);
  return j;
}

void save_instance(const std::string& path, const BlockOperator& op,
                   const json& meta) {
  json j = instance_to_json(op);
  if (!meta.is_null() && !meta.empty()) j["meta"] = meta;
  write_text_file(path, j.dump(2) + "\n");
}

BlockOperator load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open instance file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error("malformed JSON in " + path + ": " + e.what());
  }
  return instance_from_json(j);
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open output file: " + path);
  out << contents;
  if (!out) throw Error("failed writing output file: " + path);
}

}  // namespace riccert
