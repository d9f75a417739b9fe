#pragma once

#include "riccert/bounds.hpp"

#include <json.hpp>

#include <string>

namespace riccert {

/// Instance files are JSON objects {"n0","n1","lambda","A0","A1","V","meta"?}
/// with complex entries as two-element [re, im] arrays and matrices as
/// row-major arrays of rows. Doubles round-trip exactly.
nlohmann::json instance_to_json(const BlockOperator& op);
BlockOperator instance_from_json(const nlohmann::json& j);

nlohmann::json generator_to_json(const GeneratorSpec& spec);
GeneratorSpec generator_from_json(const nlohmann::json& j);

nlohmann::json tolerances_to_json(const Tolerances& tol);
nlohmann::json report_to_json(const CertificationReport& report,
                              const Tolerances& tol);

void save_instance(const std::string& path, const BlockOperator& op,
                   const nlohmann::json& meta = {});
BlockOperator load_instance(const std::string& path);

void write_text_file(const std::string& path, const std::string& contents);

}  // namespace riccert
