#pragma once

// JSON conversions shared by the file-format implementations.

#include <json.hpp>

#include "wsps/model.hpp"

namespace wsps::detail {

using json = nlohmann::ordered_json;

json instance_to_json(const Instance& inst);
Instance instance_from_json(const json& doc);
json solution_to_json(const Instance& inst, const Solution& sol);
Solution solution_from_json(const Instance& inst, const json& doc);
json cost_to_json(const CostBreakdown& cost);

// Parses text, converting library exceptions to FormatError.
json parse_json(const std::string& text, const char* what);
void check_version(const json& doc, int expected, const char* what);

template <class T>
T required(const json& doc, const char* key, const char* what);

}  // namespace wsps::detail
