#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pirbound/joint_distribution.hpp"
#include "pirbound/lp.hpp"
#include "pirbound/serialize.hpp"

using namespace pirbound;

namespace {

// min x subject to x >= 3, x a free scalar
LinearProgram toy_scalar() {
  LinearProgram p;
  p.ground = GroundSet({"A"});
  p.scalars = {"x"};
  LinearForm row;
  row.add_scalar("x", 1);
  row.constant = -3;
  p.constraints.push_back({row, Sense::GreaterEqualZero, "x>=3"});
  p.objective.add_scalar("x", 1);
  return p;
}

}  // namespace

TEST_CASE("minimize x subject to x >= 3") {
  const LinearProgram p = toy_scalar();
  const Solution s = solve_min(p);
  REQUIRE(s.status == SolveStatus::Optimal);
  CHECK(s.objective_value == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(s.scalar_values.at("x") == doctest::Approx(3.0).epsilon(1e-9));

  const DualCertificate cert = extract_certificate(p, s);
  CHECK(cert.certified_bound == 3);
  REQUIRE(cert.weights.count("x>=3") == 1);
  CHECK(cert.weights.at("x>=3") == 1);
  CHECK(verify_certificate(p, cert).ok);
}

TEST_CASE("entropy coordinate with a lower bound row") {
  LinearProgram p;
  p.ground = GroundSet({"A"});
  LinearForm row;
  row.add_entropy(SubsetId{1}, 1);
  row.constant = -5;
  p.constraints.push_back({row, Sense::GreaterEqualZero, "H(A)>=5"});
  p.objective.add_entropy(SubsetId{1}, 1);

  const Solution s = solve_min(p);
  REQUIRE(s.status == SolveStatus::Optimal);
  CHECK(s.objective_value == doctest::Approx(5.0));
  CHECK(s.entropy_values[0] == doctest::Approx(5.0));

  const DualCertificate cert = extract_certificate(p, s);
  CHECK(cert.certified_bound == 5);
  CHECK(verify_certificate(p, cert).ok);
}

TEST_CASE("fractional optimum is exact in the certificate") {
  LinearProgram p;
  p.ground = GroundSet({"A"});
  p.scalars = {"x"};
  LinearForm row;
  row.add_scalar("x", 3);
  row.constant = -1;
  p.constraints.push_back({row, Sense::GreaterEqualZero, "3x>=1"});
  p.objective.add_scalar("x", 1);

  const Solution s = solve_min(p);
  REQUIRE(s.status == SolveStatus::Optimal);
  CHECK(s.objective_value == doctest::Approx(1.0 / 3));
  const DualCertificate cert = extract_certificate(p, s);
  CHECK(cert.certified_bound == Rational(1, 3));
  CHECK(cert.weights.at("3x>=1") == Rational(1, 3));
  CHECK(verify_certificate(p, cert).ok);
}

TEST_CASE("equality rows keep one tag and may take negative weight") {
  LinearProgram p;
  p.ground = GroundSet({"A"});
  p.scalars = {"x"};
  LinearForm row;
  row.add_scalar("x", 1);
  row.constant = -2;
  p.constraints.push_back({row, Sense::EqualZero, "x=2"});
  // maximize x <=> minimize -x; bound comes from the equality's other side
  LinearForm obj;
  obj.add_scalar("x", -1);
  p.objective = obj;

  const Solution s = solve_min(p);
  REQUIRE(s.status == SolveStatus::Optimal);
  CHECK(s.objective_value == doctest::Approx(-2.0));
  const DualCertificate cert = extract_certificate(p, s);
  CHECK(cert.certified_bound == -2);
  CHECK(cert.weights.at("x=2") == -1);
  CHECK(verify_certificate(p, cert).ok);
}

TEST_CASE("status classification") {
  LinearProgram p;
  p.ground = GroundSet({"A"});
  p.scalars = {"x"};
  LinearForm below;  // 2 - x >= 0, i.e. x <= 2
  below.add_scalar("x", -1);
  below.constant = 2;

  SUBCASE("unbounded") {
    p.constraints.push_back({below, Sense::GreaterEqualZero, "x<=2"});
    p.objective.add_scalar("x", 1);
    CHECK(solve_min(p).status == SolveStatus::Unbounded);
  }
  SUBCASE("infeasible") {
    LinearForm above;  // x - 3 >= 0
    above.add_scalar("x", 1);
    above.constant = -3;
    p.constraints.push_back({above, Sense::GreaterEqualZero, "x>=3"});
    p.constraints.push_back({below, Sense::GreaterEqualZero, "x<=2"});
    p.objective.add_scalar("x", 1);
    CHECK(solve_min(p).status == SolveStatus::Infeasible);
  }
}

TEST_CASE("weak duality against a feasible point") {
  const LinearProgram p = toy_scalar();
  const Solution s = solve_min(p);
  const DualCertificate cert = extract_certificate(p, s);
  REQUIRE(verify_certificate(p, cert).ok);
  // any feasible x satisfies objective >= certified bound
  for (int x = 3; x < 10; ++x)
    CHECK(Rational(x) >= cert.certified_bound);
}

TEST_CASE("certificate verification rejects tampering") {
  const LinearProgram p = toy_scalar();
  const Solution s = solve_min(p);
  const DualCertificate good = extract_certificate(p, s);
  REQUIRE(verify_certificate(p, good).ok);

  SUBCASE("negated weight on an inequality") {
    DualCertificate bad = good;
    bad.weights["x>=3"] = -bad.weights["x>=3"];
    const auto check = verify_certificate(p, bad);
    CHECK_FALSE(check.ok);
    CHECK(check.message.find("negative weight") != std::string::npos);
  }
  SUBCASE("perturbed weight leaves a residual") {
    DualCertificate bad = good;
    bad.weights["x>=3"] += 1;
    const auto check = verify_certificate(p, bad);
    CHECK_FALSE(check.ok);
    CHECK_FALSE(check.residual.is_zero());
  }
  SUBCASE("unknown tag") {
    DualCertificate bad = good;
    bad.weights["no-such-row"] = 1;
    CHECK_THROWS_AS((void)verify_certificate(p, bad), std::invalid_argument);
  }
}

TEST_CASE("solves are deterministic") {
  const LinearProgram p = toy_scalar();
  const Solution a = solve_min(p);
  const Solution b = solve_min(p);
  CHECK(a.objective_value == b.objective_value);
  CHECK(a.iterations == b.iterations);
  CHECK(a.entropy_values == b.entropy_values);
  CHECK(a.scalar_values == b.scalar_values);
  CHECK(a.basis == b.basis);
}

TEST_CASE("presolve drops unreferenced coordinates but reports them as zero") {
  LinearProgram p;
  p.ground = GroundSet({"A", "B"});
  LinearForm row;
  row.add_entropy(SubsetId{1}, 1);  // {A}
  row.constant = -1;
  p.constraints.push_back({row, Sense::GreaterEqualZero, "H(A)>=1"});
  p.objective.add_entropy(SubsetId{1}, 1);

  const Solution s = solve_min(p);
  REQUIRE(s.status == SolveStatus::Optimal);
  REQUIRE(s.entropy_values.size() == 3);
  CHECK(s.entropy_values[0] == doctest::Approx(1.0));
  CHECK(s.entropy_values[1] == 0.0);  // {B}: never referenced
  CHECK(s.entropy_values[2] == 0.0);  // {A,B}: never referenced
}

TEST_CASE("program validation") {
  LinearProgram p;
  p.ground = GroundSet({"A"});
  LinearForm row;
  row.add_entropy(SubsetId{1}, 1);
  p.constraints.push_back({row, Sense::GreaterEqualZero, "r"});
  p.objective = row;
  CHECK_NOTHROW(p.validate());

  SUBCASE("duplicate tag") {
    p.constraints.push_back({row, Sense::GreaterEqualZero, "r"});
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  }
  SUBCASE("reserved prefix") {
    p.constraints.push_back({row, Sense::GreaterEqualZero, "nonneg:A"});
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  }
  SUBCASE("undeclared scalar") {
    LinearForm bad;
    bad.add_scalar("ghost", 1);
    p.constraints.push_back({bad, Sense::GreaterEqualZero, "s"});
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  }
  SUBCASE("coordinate out of range") {
    LinearForm bad;
    bad.add_entropy(SubsetId{2}, 1);
    p.constraints.push_back({bad, Sense::GreaterEqualZero, "s"});
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  }
}

TEST_CASE("model and certificate documents round-trip") {
  const LinearProgram p = toy_scalar();
  const std::string doc = model_to_json(p);
  const LinearProgram q = model_from_json(doc);
  CHECK(model_to_json(q) == doc);
  CHECK(model_hash(q) == model_hash(p));

  const Solution s = solve_min(p);
  const DualCertificate cert = extract_certificate(p, s);
  const std::string cert_doc = certificate_to_json(cert, model_hash(p));
  const LoadedCertificate loaded = certificate_from_json(cert_doc);
  CHECK(loaded.model_hash == model_hash(q));
  CHECK(loaded.certificate.certified_bound == cert.certified_bound);
  CHECK(verify_certificate(q, loaded.certificate).ok);
}
