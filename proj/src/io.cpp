#include "gramineq/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "json.hpp"

namespace gramineq {

namespace {

using nlohmann::json;

Scalar parse_scalar(const json& j, Field field, const char* where) {
  if (j.is_number()) {
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw ValidationError(std::string(where) + ": non-finite scalar");
    return {v, 0.0};
  }
  if (j.is_array()) {
    if (field == Field::Real) {
      throw ValidationError(std::string(where) +
                            ": two-element-array scalar in a real instance");
    }
    if (j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
      throw ValidationError(std::string(where) +
                            ": complex scalar must be a two-element [re, im] array");
    }
    const double re = j[0].get<double>();
    const double im = j[1].get<double>();
    if (!std::isfinite(re) || !std::isfinite(im)) {
      throw ValidationError(std::string(where) + ": non-finite scalar");
    }
    return {re, im};
  }
  throw ValidationError(std::string(where) + ": scalar must be a number or [re, im]");
}

Vec parse_vector(const json& j, Field field, const char* where) {
  if (!j.is_array()) throw ValidationError(std::string(where) + ": expected an array");
  Vec out;
  out.reserve(j.size());
  for (const json& e : j) out.push_back(parse_scalar(e, field, where));
  return out;
}

}  // namespace

ParsedInstance parse_instance(const std::string& bytes) {
  json root;
  try {
    root = json::parse(bytes);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
  if (!root.is_object()) throw ParseError("instance must be a JSON object");

  if (!root.contains("field") || !root["field"].is_string()) {
    throw ValidationError("missing or non-string \"field\"");
  }
  const std::string field_str = root["field"].get<std::string>();
  Field field;
  if (field_str == "real") {
    field = Field::Real;
  } else if (field_str == "complex") {
    field = Field::Complex;
  } else {
    throw ValidationError("\"field\" must be \"real\" or \"complex\", got \"" +
                          field_str + "\"");
  }

  if (!root.contains("x")) throw ValidationError("missing \"x\"");
  Vec x = parse_vector(root["x"], field, "x");
  if (x.empty()) throw ValidationError("\"x\" must be non-empty (positive dimension)");
  const std::size_t dim = x.size();

  if (!root.contains("vectors") || !root["vectors"].is_array()) {
    throw ValidationError("missing or non-array \"vectors\"");
  }
  std::vector<Vec> rows;
  for (const json& jrow : root["vectors"]) {
    Vec row = parse_vector(jrow, field, "vectors");
    if (row.size() != dim) {
      throw ValidationError("ragged \"vectors\": row of length " +
                            std::to_string(row.size()) + " vs dimension " +
                            std::to_string(dim));
    }
    rows.push_back(std::move(row));
  }

  ParsedInstance out;
  out.Y = VectorSystem::make(field, dim, std::move(rows));
  out.x = std::move(x);

  if (root.contains("coefficients")) {
    Vec coeffs = parse_vector(root["coefficients"], field, "coefficients");
    if (coeffs.size() != out.Y.size()) {
      throw ValidationError("coefficients count " + std::to_string(coeffs.size()) +
                            " does not match vector count " +
                            std::to_string(out.Y.size()));
    }
    out.coefficients = Coefficients::from_values(std::move(coeffs));
  }
  return out;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find(',') == std::string::npos && s.find('"') == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string emit_report(std::vector<ReportRow> rows, ReportFormat format) {
  switch (format) {
    case ReportFormat::Csv: {
      std::string out = "variant,params,form,lhs,bound,slack,rel_slack,pass\n";
      for (const ReportRow& r : rows) {
        out += csv_field(r.variant) + ',' + csv_field(r.params) + ',' +
               csv_field(r.form) + ',' + format_double(r.lhs) + ',' +
               format_double(r.bound) + ',' + format_double(r.slack) + ',' +
               format_double(r.rel_slack) + ',' + (r.pass ? "true" : "false") + '\n';
      }
      return out;
    }
    case ReportFormat::Json: {
      std::string out = "[";
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const ReportRow& r = rows[i];
        if (i) out += ',';
        out += "\n  {\"variant\":\"" + json_escape(r.variant) + "\",\"params\":\"" +
               json_escape(r.params) + "\",\"form\":\"" + json_escape(r.form) +
               "\",\"lhs\":" + format_double(r.lhs) + ",\"bound\":" +
               format_double(r.bound) + ",\"slack\":" + format_double(r.slack) +
               ",\"rel_slack\":" + format_double(r.rel_slack) + ",\"pass\":" +
               (r.pass ? "true" : "false") + "}";
      }
      out += rows.empty() ? "]\n" : "\n]\n";
      return out;
    }
    case ReportFormat::Table: {
      // sharpest bound first
      std::stable_sort(rows.begin(), rows.end(),
                       [](const ReportRow& a, const ReportRow& b) {
                         return a.bound < b.bound;
                       });
      const std::vector<std::string> header = {"variant", "params",    "form", "lhs",
                                               "bound",   "slack",     "rel_slack",
                                               "pass"};
      std::vector<std::vector<std::string>> cells;
      for (const ReportRow& r : rows) {
        cells.push_back({r.variant, r.params, r.form, format_double(r.lhs),
                         format_double(r.bound), format_double(r.slack),
                         format_double(r.rel_slack), r.pass ? "pass" : "FAIL"});
      }
      std::vector<std::size_t> width(header.size());
      for (std::size_t c = 0; c < header.size(); ++c) {
        width[c] = header[c].size();
        for (const auto& row : cells) width[c] = std::max(width[c], row[c].size());
      }
      std::string out;
      auto emit_row = [&](const std::vector<std::string>& row) {
        for (std::size_t c = 0; c < row.size(); ++c) {
          out += row[c];
          if (c + 1 < row.size()) out.append(width[c] - row[c].size() + 2, ' ');
        }
        out += '\n';
      };
      emit_row(header);
      for (const auto& row : cells) emit_row(row);
      return out;
    }
  }
  return {};
}

std::vector<ReportRow> parse_report_json(const std::string& bytes) {
  json root;
  try {
    root = json::parse(bytes);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
  if (!root.is_array()) throw ParseError("report must be a JSON array");
  std::vector<ReportRow> rows;
  for (const json& j : root) {
    ReportRow r;
    r.variant = j.at("variant").get<std::string>();
    r.params = j.at("params").get<std::string>();
    r.form = j.at("form").get<std::string>();
    r.lhs = j.at("lhs").get<double>();
    r.bound = j.at("bound").get<double>();
    r.slack = j.at("slack").get<double>();
    r.rel_slack = j.at("rel_slack").get<double>();
    r.pass = j.at("pass").get<bool>();
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace gramineq
