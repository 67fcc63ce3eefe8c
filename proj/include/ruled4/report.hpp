#pragma once

#include <string>

#include "json.hpp"
#include "ruled4/error.hpp"
#include "ruled4/scalar.hpp"

namespace ruled4 {

inline constexpr const char* kReportSchema = "ruled4.report/1";

/// {"mode": "rational", "value": "p/q"} or {"mode": "f64", "value": x}.
nlohmann::json tagged(const Rational& v);
nlohmann::json tagged(double v);

/// Skeleton with schema, command, surface id and provenance filled in.
nlohmann::json new_report(const std::string& command, const std::string& surface_id, const std::string& scalar_mode,
                          int order);

std::string emit_report(const nlohmann::json& report);

/// Parses and checks the schema tag; throws Parse.
nlohmann::json parse_report(const std::string& text);

}  // namespace ruled4
