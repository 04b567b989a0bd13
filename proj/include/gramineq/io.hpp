#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gramineq/space.hpp"

namespace gramineq {

/// Instance JSON: {"field":"real"|"complex", "x":[...], "vectors":[[...],...],
/// "coefficients":[...] (optional)}. Complex scalars are two-element arrays
/// [re, im]; the real field forbids them.
struct ParsedInstance {
  Vec x;
  VectorSystem Y;
  std::optional<Coefficients> coefficients;
};

ParsedInstance parse_instance(const std::string& bytes);

struct ReportRow {
  std::string variant;
  std::string params;
  std::string form;
  double lhs = 0.0;
  double bound = 0.0;
  double slack = 0.0;
  double rel_slack = 0.0;
  bool pass = true;
};

enum class ReportFormat { Table, Csv, Json };

/// CSV header is exactly "variant,params,form,lhs,bound,slack,rel_slack,pass";
/// numbers carry 17 significant digits; the table sorts by bound ascending.
std::string emit_report(std::vector<ReportRow> rows, ReportFormat format);

std::vector<ReportRow> parse_report_json(const std::string& bytes);

/// Round-trip exact rendering (%.17g).
std::string format_double(double v);

}  // namespace gramineq
