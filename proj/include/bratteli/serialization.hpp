#pragma once

#include "bratteli/convergence.hpp"
#include "bratteli/diagram.hpp"
#include "bratteli/extension.hpp"
#include "bratteli/finite_stationary.hpp"
#include "bratteli/measure.hpp"
#include "bratteli/spectral.hpp"
#include "bratteli/vershik.hpp"

#include <json.hpp>

#include <string>
#include <vector>

// JSON documents. Rationals travel as {"exact": "num/den", "decimal": "..."};
// infinite results carry "value": "inf" plus the divergence witness.
namespace bratteli::io {

using nlohmann::json;

json bigint_json(const BigInt& v);  // number when it fits in 64 bits, else string
BigInt parse_bigint_json(const json& j);
json rational_json(const Rational& q);
Rational parse_rational_json(const json& j);  // object, "num/den" string or integer

json sequence_json(const Sequence& s);  // {"kind": ..., ...}
Sequence parse_sequence_json(const json& j);

json truncation_json(const Truncation& t);
Truncation parse_truncation(const json& j);
json level_matrix_json(const LevelMatrix& f);
LevelMatrix parse_level_matrix(const json& j);
json diagram_json(const DiagramSpec& spec);
DiagramSpec parse_diagram(const json& j);

json convergence_json(const ConvergenceResult& r, bool with_trace = false);
ConvergenceResult parse_convergence(const json& j);
json classification_json(const ClassificationReport& rep);
ClassificationReport parse_classification(const json& j);

json order_json(const vershik::OrderSpec& o);
vershik::OrderSpec parse_order(const json& j);
json verdict_json(const vershik::ExtensionVerdict& v);

json finite_report_json(const finite::FiniteStationaryReport& rep);
finite::IntMatrix parse_int_matrix(const json& j);

json residual_json(const ResidualReport& rep);
json comparison_json(const ComparisonReport& rep);
json tail_report_json(const TailInvarianceReport& rep);

// "(m, i)" or "m,i"
EndVertex parse_end_vertex(const std::string& text);
json end_vertex_json(const EndVertex& e);
EndVertex parse_end_vertex_json(const json& j);

json parse_document(const std::string& text);
json load_document(const std::string& path);

}  // namespace bratteli::io
