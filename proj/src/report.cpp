#include "ruled4/report.hpp"

#include <cmath>

namespace ruled4 {

nlohmann::json tagged(const Rational& v) { return {{"mode", "rational"}, {"value", to_string(v)}}; }

nlohmann::json tagged(double v) {
  // JSON has no non-finite numbers.
  if (!std::isfinite(v)) return {{"mode", "f64"}, {"value", nullptr}};
  return {{"mode", "f64"}, {"value", v}};
}

nlohmann::json new_report(const std::string& command, const std::string& surface_id, const std::string& scalar_mode,
                          int order) {
  nlohmann::json r;
  r["schema"] = kReportSchema;
  r["command"] = command;
  r["surface_id"] = surface_id;
  r["provenance"] = {{"scalar_mode", scalar_mode}, {"order", order}, {"tolerance", tolerance()}};
  return r;
}

std::string emit_report(const nlohmann::json& report) { return report.dump(2) + "\n"; }

nlohmann::json parse_report(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
  if (!j.is_object() || !j.contains("schema") || j["schema"] != kReportSchema)
    throw Error(ErrorKind::Parse, "not a ruled4.report/1 document");
  return j;
}

}  // namespace ruled4
