#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace fredlab::report {

/// One line of a report. Rows with an expected value carry the absolute
/// error; a row with a tolerance is a violation when the error exceeds it.
struct ReportRow {
  std::string experiment;
  std::string label;
  std::string param;
  std::string metric;
  double value = 0.0;
  std::optional<double> expected;
  std::optional<double> abs_error;
  std::optional<double> tolerance;

  bool violates() const noexcept { return tolerance && abs_error && !(*abs_error <= *tolerance); }
};

class ConvergenceReport {
 public:
  explicit ConvergenceReport(std::string experiment) : experiment_(std::move(experiment)) {}

  const std::string& experiment() const noexcept { return experiment_; }
  const std::vector<ReportRow>& rows() const noexcept { return rows_; }

  /// Plain measurement. Throws NonFinite.
  void add(std::string label, std::string param, std::string metric, double value);

  /// Measurement against a known value; violation when |value - expected| > tolerance.
  void add_expected(std::string label, std::string param, std::string metric, double value, double expected,
                    double tolerance);

  /// Pass/fail property: value 1 or 0 against expected 1.
  void add_check(std::string label, std::string param, std::string metric, bool passed);

  std::size_t violations() const noexcept;

 private:
  std::string experiment_;
  std::vector<ReportRow> rows_;
};

/// Shortest decimal string that reads back to the same double.
std::string format_number(double v);

/// Header experiment,label,param,metric,value,expected,abs_error then one
/// line per row; missing values are empty fields.
void write_csv(std::ostream& out, const ConvergenceReport& report);

/// JSON array of objects with the CSV column names as keys; missing values
/// are null.
void write_json(std::ostream& out, const ConvergenceReport& report);

}  // namespace fredlab::report
