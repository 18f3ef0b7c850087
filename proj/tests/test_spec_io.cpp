#include <doctest.h>

#include <sstream>

#include "gradekit/rng.hpp"
#include "gradekit/spec_io.hpp"
#include "gradekit/version.hpp"

using namespace gradekit;

namespace {

GradingSpec canonical_m2() {
  const WeightedAction alpha(2, 1, {MultiIndex{1}, MultiIndex{0}});
  return grading_from_action(alpha);
}

}  // namespace

TEST_CASE("spec JSON round trip is the identity on the data model") {
  const GradingSpec spec = canonical_m2();
  const std::string text = serialize_spec_json(spec);
  const GradingSpec back = parse_spec_json(text);
  CHECK(back.dim == spec.dim);
  CHECK(back.rank == spec.rank);
  REQUIRE(back.subspaces.size() == spec.subspaces.size());
  for (const auto& [g, basis] : spec.subspaces) {
    REQUIRE(back.subspaces.count(g) == 1);
    const auto& other = back.subspaces.at(g);
    REQUIRE(other.size() == basis.size());
    for (size_t i = 0; i < basis.size(); ++i)
      CHECK((other[i] - basis[i]).norm() == 0.0);
  }
  // serialize(parse(serialize(x))) is byte-identical
  CHECK(serialize_spec_json(back) == text);
}

TEST_CASE("parse errors carry a position-bearing message") {
  const std::string text = serialize_spec_json(canonical_m2());
  const std::string truncated = text.substr(0, text.size() / 2);
  try {
    parse_spec_json(truncated);
    FAIL("expected SpecParseError");
  } catch (const SpecParseError& e) {
    CHECK(std::string(e.what()).find("parse error") != std::string::npos);
  }
}

TEST_CASE("spec validation failures surface as SpecParseError") {
  CHECK_THROWS_AS(parse_spec_json(R"({"rank":1,"dim":2,"subspaces":[]})"), SpecParseError);
  CHECK_THROWS_AS(parse_spec_json(R"({"rank":1,"dim":2})"), SpecParseError);
  // duplicate degrees
  const std::string dup = R"({"rank":1,"dim":1,"subspaces":[
    {"degree":[0],"basis":[[[1,0]]]},
    {"degree":[0],"basis":[[[2,0]]]}]})";
  CHECK_THROWS_AS(parse_spec_json(dup), SpecParseError);
  // wrong matrix size
  const std::string bad = R"({"rank":1,"dim":2,"subspaces":[
    {"degree":[0],"basis":[[[1,0]]]}]})";
  CHECK_THROWS_AS(parse_spec_json(bad), SpecParseError);
}

TEST_CASE("matrix JSON round trip") {
  Rng rng(51);
  const CMatrix a = rng.matrix(3);
  const CMatrix back = parse_matrix_json(serialize_matrix_json(a));
  CHECK((back - a).norm() == 0.0);
}

TEST_CASE("report JSON carries the axioms, version, and seed") {
  const GradingReport report = check_grading(canonical_m2());
  const auto j = report_to_json(report, kVersion, kDefaultSeed, kDefaultTol);
  CHECK(j.at("pass").get<bool>());
  CHECK(j.at("tool_version").get<std::string>() == kVersion);
  CHECK(j.at("seed").get<std::uint64_t>() == kDefaultSeed);
  CHECK(j.at("axioms").at("independence").at("status").get<std::string>() == "pass");
  CHECK(j.at("axioms").at("totality").at("status").get<std::string>() == "full");
}

TEST_CASE("csv formatting is %.12e") {
  CHECK(csv_number(1.0) == "1.000000000000e+00");
  CHECK(csv_number(0.5) == "5.000000000000e-01");
  std::ostringstream out;
  write_convergence_csv(out, 2, {"error"}, {{{1, 2}, {0.25}}});
  CHECK(out.str() == "N_1,N_2,error\n1,2,2.500000000000e-01\n");
}

TEST_CASE("samples CSV round trip") {
  std::vector<double> ts{0.0, 0.25, 0.5};
  std::vector<std::complex<double>> vals{{1.0, 0.0}, {0.0, -1.0}, {0.5, 0.25}};
  std::ostringstream out;
  write_samples_csv(out, ts, vals);
  const auto [rts, rvals] = read_samples_csv(out.str());
  REQUIRE(rts.size() == 3);
  for (size_t j = 0; j < 3; ++j) {
    CHECK(rts[j] == doctest::Approx(ts[j]).epsilon(1e-12));
    CHECK(std::abs(rvals[j] - vals[j]) < 1e-12);
  }
  CHECK_THROWS_AS(read_samples_csv("t,re,im\nnot,a,row\n"), SpecParseError);
  CHECK_THROWS_AS(read_samples_csv(""), SpecParseError);
}
