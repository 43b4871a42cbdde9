#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "bgk/runio.hpp"

using namespace bgk;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("parse_config") {
  const RunConfig rc = parse_config("case=riemann\nsolver=lvg\norder=2\ncfl=2\ntau_C=1.08e-9\n");
  CHECK(rc.case_name == "riemann");
  CHECK(rc.solver == "lvg");
  CHECK(rc.order == 2);
  CHECK(rc.cfl == 2.0);
  CHECK(rc.nx == 300);   // case default
  CHECK(rc.nv0 == 600);  // case default
  CHECK(rc.test.gas.epsilon.kind == EpsilonModel::Kind::TauLaw);
  CHECK(rc.test.gas.epsilon.coeff == doctest::Approx(1.08e-9));

  CHECK_THROWS_AS(parse_config(""), ValidationError);
  CHECK_THROWS_AS(parse_config("case=accuracy\ncfl=-1\n"), ValidationError);
  CHECK_THROWS_AS(parse_config("case=accuracy\nwhatever=1\n"), ParseError);
  CHECK_THROWS_AS(parse_config("case=accuracy\ncfl\n"), ParseError);
  CHECK_THROWS_AS(parse_config("case=accuracy\ncfl=abc\n"), ParseError);
  CHECK_THROWS_AS(parse_config("case=accuracy\nepsilon=1e-4\ntau_C=1e-9\n"), ValidationError);
  CHECK_THROWS_AS(parse_config("case=unknown\n"), ValidationError);

  // comments and blank lines are allowed
  const RunConfig rc2 = parse_config("# smooth test\ncase=accuracy\n\nepsilon=1e-2 # override\n");
  CHECK(rc2.case_name == "accuracy");
  CHECK(rc2.test.gas.epsilon.value == doctest::Approx(1e-2));
  CHECK(rc2.cfl == doctest::Approx(2.4));  // case default
}

TEST_CASE("line numbers in parse errors") {
  try {
    parse_config("case=accuracy\n\nbogus=3\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
  }
}

TEST_CASE("run_and_emit writes deterministic csv files") {
  const std::filesystem::path dir_a = "runio_test_a";
  const std::filesystem::path dir_b = "runio_test_b";
  const RunConfig rc = parse_config(
      "case=accuracy\nsolver=lvg\norder=2\nnx=12\nnv0=20\nepsilon=1e-4\nt_final=0.02\n");
  const RunOutputs out_a = run_and_emit(rc, dir_a.string(), 1);
  const RunOutputs out_b = run_and_emit(rc, dir_b.string(), 1);

  for (const char* file : {"macro.csv", "grids.csv", "conservation.csv"}) {
    const std::string a = slurp(dir_a / file);
    const std::string b = slurp(dir_b / file);
    CHECK(!a.empty());
    CHECK(a == b);
  }
  CHECK(out_a.tau_csv.empty());  // constant-epsilon run has no tau output

  // macro.csv has the expected header and row count
  const std::string macro = slurp(dir_a / "macro.csv");
  CHECK(macro.rfind("x,rho,U,T\n", 0) == 0);
  CHECK(std::count(macro.begin(), macro.end(), '\n') == 13);

  // self-compare is exactly zero
  const CompareReport rep = compare_macro_csv(out_a.macro_csv, out_b.macro_csv);
  for (const ColumnDiff& c : rep.columns) {
    CHECK(c.l1_rel == 0.0);
    CHECK(c.linf_abs == 0.0);
  }

  std::filesystem::remove_all(dir_a);
  std::filesystem::remove_all(dir_b);
}

TEST_CASE("tau.csv appears for tau-law runs") {
  const std::filesystem::path dir = "runio_test_tau";
  const RunConfig rc = parse_config(
      "case=riemann\nsolver=reference\norder=1\nnx=16\nnv0=40\nt_final=1e-3\n");
  const RunOutputs out = run_and_emit(rc, dir.string(), 1);
  CHECK(!out.tau_csv.empty());
  CHECK(slurp(out.tau_csv).rfind("x,tau\n", 0) == 0);
  std::filesystem::remove_all(dir);
}

TEST_CASE("compare rejects mismatched meshes") {
  const std::filesystem::path dir = "runio_test_cmp";
  std::filesystem::create_directories(dir);
  {
    std::ofstream a(dir / "a.csv");
    a << "x,rho,U,T\n1.0e+00,1.0e+00,0.0e+00,1.0e+00\n";
    std::ofstream b(dir / "b.csv");
    b << "x,rho,U,T\n2.0e+00,1.0e+00,0.0e+00,1.0e+00\n";
  }
  CHECK_THROWS_AS(compare_macro_csv(dir / "a.csv", dir / "b.csv"), ValidationError);
  std::filesystem::remove_all(dir);
}
