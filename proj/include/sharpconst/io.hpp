#pragma once

#include "sharpconst/constants.hpp"
#include "sharpconst/kernels.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sharpconst {

inline constexpr int kSchemaVersion = 1;

/// Nine significant digits, '.' separator, "inf"/"-inf"/"nan" for non-finite values.
inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

/// Parses an exponent token: "inf", or a decimal >= 1. Values within 1e-12 of an
/// integer are snapped to it so that "2.0" selects the same path as "2".
inline double parse_exponent(std::string_view token) {
  if (token == "inf" || token == "Inf" || token == "INF" || token == "infinity") return kInf;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(v)) {
    throw DomainError("malformed exponent token '" + std::string(token) + "'");
  }
  if (std::fabs(v - std::round(v)) <= 1e-12) v = std::round(v);
  if (v < 1.0) throw DomainError("exponent must be >= 1, got '" + std::string(token) + "'");
  return v;
}

/// JSON value for an exponent: a number, or the string "inf".
inline nlohmann::json exponent_json(double p) {
  if (std::isinf(p)) return "inf";
  return p;
}

inline nlohmann::json number_json(double v) {
  if (std::isfinite(v)) return v;
  return format_number(v);
}

// ---- CSV ----

inline std::string profile_csv(const std::vector<ProfileRow>& rows) {
  std::string out = "a,A,B\n";
  for (const auto& r : rows) {
    out += format_number(r.a);
    out += ',';
    out += format_number(r.A);
    out += ',';
    if (r.B) out += format_number(*r.B);
    out += '\n';
  }
  return out;
}

namespace detail {

inline double parse_csv_number(std::string_view field, std::size_t line) {
  if (field == "inf") return kInf;
  if (field == "-inf") return -kInf;
  if (field == "nan") return std::numeric_limits<double>::quiet_NaN();
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw DomainError("csv line " + std::to_string(line) + ": bad number '" + std::string(field) + "'");
  }
  return v;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

}  // namespace detail

/// Inverse of profile_csv. Expects the exact header "a,A,B".
inline std::vector<ProfileRow> parse_profile_csv(std::string_view text) {
  std::vector<ProfileRow> rows;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line_no == 1) {
      if (line != "a,A,B") throw DomainError("csv: expected header 'a,A,B'");
      continue;
    }
    if (line.empty()) continue;
    const auto f = detail::split_fields(line);
    if (f.size() != 3) throw DomainError("csv line " + std::to_string(line_no) + ": expected 3 fields");
    ProfileRow r;
    r.a = detail::parse_csv_number(f[0], line_no);
    r.A = detail::parse_csv_number(f[1], line_no);
    if (!f[2].empty()) r.B = detail::parse_csv_number(f[2], line_no);
    rows.push_back(r);
  }
  if (line_no == 0) throw DomainError("csv: empty document");
  return rows;
}

inline std::string envelope_csv(const std::vector<std::pair<double, double>>& points) {
  std::string out = "a,B\n";
  for (const auto& [a, b] : points) out += format_number(a) + ',' + format_number(b) + '\n';
  return out;
}

// ---- JSON ----

inline nlohmann::json profile_json(int n, int k, double p, const std::vector<ProfileRow>& rows) {
  nlohmann::json rj = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json row{{"a", r.a}, {"A", number_json(r.A)}};
    row["B"] = r.B ? nlohmann::json(*r.B) : nlohmann::json(nullptr);
    if (!r.error.empty()) row["error"] = r.error;
    rj.push_back(std::move(row));
  }
  return {{"schema", kSchemaVersion}, {"kind", "profile"}, {"n", n}, {"k", k}, {"p", exponent_json(p)}, {"rows", rj}};
}

inline nlohmann::json lambda_json(int n, int k, double p, const LambdaResult& r) {
  nlohmann::json j{{"schema", kSchemaVersion},
                   {"kind", "lambda"},
                   {"n", n},
                   {"k", k},
                   {"p", exponent_json(p)},
                   {"lambda", r.lambda},
                   {"argmax_a", r.argmax_a},
                   {"method", r.method},
                   {"optimized", r.optimized},
                   {"closed_form_available", r.closed_form_available},
                   {"disagreement", r.disagreement}};
  if (r.closed_form) {
    j["closed_form"] = r.closed_form->value;
    j["closed_form_is_bound"] = r.closed_form->is_bound;
  } else {
    j["closed_form"] = nullptr;
  }
  return j;
}

inline nlohmann::json envelope_json(int n, const std::vector<std::pair<double, double>>& points) {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& [a, b] : points) pts.push_back({{"a", a}, {"B", b}});
  return {{"schema", kSchemaVersion}, {"kind", "envelope"}, {"n", n}, {"points", pts}};
}

/// {knots, pieces} with ascending coefficients per piece.
inline nlohmann::json piecewise_json(const PiecewisePolynomial<double>& f) {
  nlohmann::json pieces = nlohmann::json::array();
  for (const auto& piece : f.pieces()) {
    nlohmann::json c = nlohmann::json::array();
    for (double v : piece.coeffs()) c.push_back(v);
    pieces.push_back(std::move(c));
  }
  return {{"knots", f.knots()}, {"pieces", pieces}};
}

inline nlohmann::json kernel_json(const ProblemSpec& spec, const NuVector<double>& nu) {
  spec.validate();
  return {{"schema", kSchemaVersion},
          {"kind", "kernel"},
          {"n", spec.n},
          {"k", spec.k},
          {"a", spec.a},
          {"nu", nu.values},
          {"g", piecewise_json(kernel_g(spec.n, spec.k, spec.a))},
          {"g_n", piecewise_json(kernel_g_deriv_n(spec.n, spec.k, spec.a))},
          {"S", piecewise_json(spline_S(spec.n, spec.k, spec.a))},
          {"Q_n", piecewise_json(build_Q(spec, nu))}};
}

/// Envelope sample points (a_j, B_n(a_j)), j = 1..n.
inline std::vector<std::pair<double, double>> envelope_points(int n) {
  std::vector<std::pair<double, double>> out;
  for (double a : local_max_points(n)) out.emplace_back(a, envelope_B(n, a));
  return out;
}

}  // namespace sharpconst
