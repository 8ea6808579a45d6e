#pragma once

#include <nlohmann/json.hpp>

#include <string>

#include "tradeq/scenario.hpp"

namespace tradeq {

/// Structured report tree; field order is fixed. See docs/report_schema.md.
nlohmann::ordered_json to_structured(const RunReport& report);

/// Serializes with two-space indentation and every floating-point value
/// printed with 17 significant digits, so output is byte-stable and
/// round-trips exactly. Non-finite values become null.
std::string dump_structured(const nlohmann::ordered_json& tree);

std::string render_structured(const RunReport& report);
std::string render_text(const RunReport& report);

std::string render(const RunReport& report, OutputFormat format);

}  // namespace tradeq
