#pragma once

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "gradekit/function_models.hpp"
#include "gradekit/grading.hpp"

namespace gradekit {

class SpecParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------- JSON specs
// Spec document: { "rank": k, "dim": d,
//                  "subspaces": [ { "degree": [int; k], "basis": [matrix] } ] }
// where matrix is a row-major array of d*d [re, im] pairs.
GradingSpec parse_spec_json(const std::string& text);
std::string serialize_spec_json(const GradingSpec& spec);

// Matrix document: { "dim": d, "entries": [ [re, im] x d*d ] } (row-major).
CMatrix parse_matrix_json(const std::string& text);
std::string serialize_matrix_json(const CMatrix& a);

nlohmann::json report_to_json(const GradingReport& report, const std::string& tool_version,
                              std::uint64_t seed, double tol);

// ----------------------------------------------------------------------- CSV
std::string csv_number(double x);  // %.12e

struct ConvergenceCsvRow {
  std::vector<int> N;
  std::vector<double> errors;  // one or more error columns
};

void write_convergence_csv(std::ostream& out, int rank,
                           const std::vector<std::string>& error_columns,
                           const std::vector<ConvergenceCsvRow>& rows);

// Sampled data: "t,re,im" rows.
void write_samples_csv(std::ostream& out, const std::vector<double>& ts,
                       const std::vector<std::complex<double>>& values);
// Reads back samples; returns (ts, values). Throws SpecParseError on bad rows.
std::pair<std::vector<double>, std::vector<std::complex<double>>> read_samples_csv(
    const std::string& text);

// TrigPoly coefficients: "n,re,im" rows.
void write_coefficients_csv(std::ostream& out, const TrigPoly& p);

std::string read_text_file(const std::string& path);   // throws SpecParseError
void write_text_file(const std::string& path, const std::string& content);

}  // namespace gradekit
