#include "gradekit/spec_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace gradekit {

using nlohmann::json;

namespace {

json matrix_to_json_entries(const CMatrix& a) {
  json entries = json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      entries.push_back(json::array({a(i, j).real(), a(i, j).imag()}));
  return entries;
}

CMatrix matrix_from_json_entries(const json& entries, int dim, const char* where) {
  if (!entries.is_array() || static_cast<int>(entries.size()) != dim * dim)
    throw SpecParseError(std::string(where) + ": matrix needs dim*dim [re,im] pairs");
  CMatrix a(dim, dim);
  int idx = 0;
  for (const auto& e : entries) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
      throw SpecParseError(std::string(where) + ": matrix entry must be an [re,im] pair");
    a(idx / dim, idx % dim) = {e[0].get<double>(), e[1].get<double>()};
    ++idx;
  }
  return a;
}

json parse_or_rethrow(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // nlohmann messages carry the byte position of the failure
    throw SpecParseError(e.what());
  }
}

json degree_to_json(const MultiIndex& g) {
  json a = json::array();
  for (int c : g.coords) a.push_back(c);
  return a;
}

}  // namespace

GradingSpec parse_spec_json(const std::string& text) {
  const json j = parse_or_rethrow(text);
  GradingSpec spec;
  try {
    spec.rank = j.at("rank").get<int>();
    spec.dim = j.at("dim").get<int>();
    if (spec.rank < 1 || spec.dim < 1) throw SpecParseError("spec: rank and dim must be >= 1");
    const json& subs = j.at("subspaces");
    if (!subs.is_array() || subs.empty()) throw SpecParseError("spec: subspaces must be a nonempty array");
    for (const auto& s : subs) {
      const json& deg = s.at("degree");
      if (!deg.is_array() || static_cast<int>(deg.size()) != spec.rank)
        throw SpecParseError("spec: degree must have rank entries");
      std::vector<int> coords;
      for (const auto& c : deg) coords.push_back(c.get<int>());
      MultiIndex g(std::move(coords));
      if (spec.subspaces.count(g))
        throw SpecParseError("spec: duplicate degree " + g.str());
      const json& basis = s.at("basis");
      if (!basis.is_array() || basis.empty())
        throw SpecParseError("spec: basis must be a nonempty array at degree " + g.str());
      std::vector<CMatrix> mats;
      for (const auto& m : basis) mats.push_back(matrix_from_json_entries(m, spec.dim, "spec"));
      spec.subspaces.emplace(std::move(g), std::move(mats));
    }
  } catch (const json::exception& e) {
    throw SpecParseError(e.what());
  }
  return spec;
}

std::string serialize_spec_json(const GradingSpec& spec) {
  json j;
  j["rank"] = spec.rank;
  j["dim"] = spec.dim;
  json subs = json::array();
  for (const auto& [g, basis] : spec.subspaces) {
    json s;
    s["degree"] = degree_to_json(g);
    json b = json::array();
    for (const auto& m : basis) b.push_back(matrix_to_json_entries(m));
    s["basis"] = b;
    subs.push_back(s);
  }
  j["subspaces"] = subs;
  return j.dump(2) + "\n";
}

CMatrix parse_matrix_json(const std::string& text) {
  const json j = parse_or_rethrow(text);
  try {
    const int dim = j.at("dim").get<int>();
    if (dim < 1) throw SpecParseError("matrix: dim must be >= 1");
    return matrix_from_json_entries(j.at("entries"), dim, "matrix");
  } catch (const json::exception& e) {
    throw SpecParseError(e.what());
  }
}

std::string serialize_matrix_json(const CMatrix& a) {
  json j;
  j["dim"] = static_cast<int>(a.rows());
  j["entries"] = matrix_to_json_entries(a);
  return j.dump(2) + "\n";
}

nlohmann::json report_to_json(const GradingReport& report, const std::string& tool_version,
                              std::uint64_t seed, double tol) {
  json j;
  j["tool_version"] = tool_version;
  j["seed"] = seed;
  j["tol"] = tol;
  json axioms;
  axioms["independence"] = {
      {"status", report.independence.pass ? "pass" : "fail"},
      {"rank", report.independence.rank},
      {"expected", report.independence.expected},
      {"rank_deficit", report.independence.deficit()},
  };
  axioms["adjoint_symmetry"] = {
      {"status", report.adjoint_symmetry.worst_residual <= tol ? "pass" : "fail"},
      {"worst_residual", report.adjoint_symmetry.worst_residual},
      {"witness", {{"degree", degree_to_json(report.adjoint_symmetry.witness_degree)},
                   {"index", report.adjoint_symmetry.witness_index}}},
  };
  axioms["multiplicativity"] = {
      {"status", report.multiplicativity.worst_residual <= tol ? "pass" : "fail"},
      {"worst_residual", report.multiplicativity.worst_residual},
      {"witness", {{"left_degree", degree_to_json(report.multiplicativity.left_degree)},
                   {"left_index", report.multiplicativity.left_index},
                   {"right_degree", degree_to_json(report.multiplicativity.right_degree)},
                   {"right_index", report.multiplicativity.right_index},
                   {"product_degree", degree_to_json(report.multiplicativity.left_degree +
                                                     report.multiplicativity.right_degree)}}},
  };
  axioms["totality"] = {
      {"status", report.totality.full() ? "full" : "partial"},
      {"subspace_dim_sum", report.totality.subspace_dim_sum},
      {"full_dim", report.totality.full_dim},
  };
  axioms["topological"] = {{"status", report.topological ? "pass" : "fail"}};
  j["axioms"] = axioms;
  j["pass"] = report.pass();
  return j;
}

std::string csv_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12e", x);
  return buf;
}

void write_convergence_csv(std::ostream& out, int rank,
                           const std::vector<std::string>& error_columns,
                           const std::vector<ConvergenceCsvRow>& rows) {
  for (int j = 1; j <= rank; ++j) out << "N_" << j << ",";
  for (size_t c = 0; c < error_columns.size(); ++c) {
    out << error_columns[c];
    out << (c + 1 < error_columns.size() ? "," : "");
  }
  out << "\n";
  for (const auto& row : rows) {
    for (int n : row.N) out << n << ",";
    for (size_t c = 0; c < row.errors.size(); ++c) {
      out << csv_number(row.errors[c]);
      out << (c + 1 < row.errors.size() ? "," : "");
    }
    out << "\n";
  }
}

void write_samples_csv(std::ostream& out, const std::vector<double>& ts,
                       const std::vector<std::complex<double>>& values) {
  out << "t,re,im\n";
  for (size_t j = 0; j < ts.size(); ++j)
    out << csv_number(ts[j]) << "," << csv_number(values[j].real()) << ","
        << csv_number(values[j].imag()) << "\n";
}

std::pair<std::vector<double>, std::vector<std::complex<double>>> read_samples_csv(
    const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<double> ts;
  std::vector<std::complex<double>> values;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (first) {
      first = false;
      if (line.rfind("t,", 0) == 0) continue;  // header
    }
    double t = 0, re = 0, im = 0;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &t, &re, &im) != 3)
      throw SpecParseError("samples csv: bad row: " + line);
    ts.push_back(t);
    values.emplace_back(re, im);
  }
  if (ts.empty()) throw SpecParseError("samples csv: no rows");
  return {std::move(ts), std::move(values)};
}

void write_coefficients_csv(std::ostream& out, const TrigPoly& p) {
  out << "n,re,im\n";
  for (int n = -p.band(); n <= p.band(); ++n)
    out << n << "," << csv_number(p.coefficient(n).real()) << ","
        << csv_number(p.coefficient(n).imag()) << "\n";
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SpecParseError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SpecParseError("cannot write file: " + path);
  out << content;
}

}  // namespace gradekit
