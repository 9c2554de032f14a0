#pragma once

#include <string>

#include "caloron/gauge.hpp"
#include "caloron/ktheory.hpp"

namespace caloron {

/// JSON round trips for the domain types. Complex numbers serialize as
/// [re, im]; component keys use the canonical "(i<j<...)" spelling. All
/// parsers throw SchemaError on malformed or inconsistent input.

std::string to_json(const Mesh& mesh);
Mesh mesh_from_json(const std::string& text);

std::string to_json(const SampledLoop& loop);
SampledLoop loop_from_json(const std::string& text);

std::string to_json(const MatrixForm& form);
MatrixForm form_from_json(const std::string& text);

std::string to_json(const GradedForm& graded);
GradedForm graded_form_from_json(const std::string& text);

std::string to_json(const GroupMap& map);
GroupMap group_map_from_json(const std::string& text);

std::string to_json(const GaugePair& pair);
GaugePair gauge_pair_from_json(const std::string& text);

std::string to_json(const TwzElement& element);
TwzElement twz_element_from_json(const std::string& text);

} // namespace caloron
