#include "fredlab/report/report.hpp"

#include <charconv>
#include <cmath>
#include <json.hpp>

#include "fredlab/error.hpp"

namespace fredlab::report {

void ConvergenceReport::add(std::string label, std::string param, std::string metric, double value) {
  if (!std::isfinite(value)) fail(ErrorCode::NonFinite, "report value for " + metric + " is not finite");
  rows_.push_back({experiment_, std::move(label), std::move(param), std::move(metric), value, {}, {}, {}});
}

void ConvergenceReport::add_expected(std::string label, std::string param, std::string metric, double value,
                                     double expected, double tolerance) {
  if (!std::isfinite(value)) fail(ErrorCode::NonFinite, "report value for " + metric + " is not finite");
  rows_.push_back({experiment_, std::move(label), std::move(param), std::move(metric), value, expected,
                   std::abs(value - expected), tolerance});
}

void ConvergenceReport::add_check(std::string label, std::string param, std::string metric, bool passed) {
  add_expected(std::move(label), std::move(param), std::move(metric), passed ? 1.0 : 0.0, 1.0, 0.0);
}

std::size_t ConvergenceReport::violations() const noexcept {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.violates() ? 1 : 0;
  return n;
}

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void write_csv(std::ostream& out, const ConvergenceReport& report) {
  out << "experiment,label,param,metric,value,expected,abs_error\n";
  for (const auto& r : report.rows()) {
    out << csv_field(r.experiment) << ',' << csv_field(r.label) << ',' << csv_field(r.param) << ','
        << csv_field(r.metric) << ',' << format_number(r.value) << ','
        << (r.expected ? format_number(*r.expected) : "") << ','
        << (r.abs_error ? format_number(*r.abs_error) : "") << '\n';
  }
}

void write_json(std::ostream& out, const ConvergenceReport& report) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : report.rows()) {
    nlohmann::ordered_json o;
    o["experiment"] = r.experiment;
    o["label"] = r.label;
    o["param"] = r.param;
    o["metric"] = r.metric;
    o["value"] = r.value;
    o["expected"] = r.expected ? nlohmann::ordered_json(*r.expected) : nlohmann::ordered_json(nullptr);
    o["abs_error"] = r.abs_error ? nlohmann::ordered_json(*r.abs_error) : nlohmann::ordered_json(nullptr);
    rows.push_back(std::move(o));
  }
  out << rows.dump(2) << '\n';
}

}  // namespace fredlab::report
