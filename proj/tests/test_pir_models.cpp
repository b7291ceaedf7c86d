#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pirbound/information.hpp"
#include "pirbound/pir_models.hpp"
#include "pirbound/scheme.hpp"
#include "pirbound/serialize.hpp"

using namespace pirbound;

namespace {

std::size_t count_tags_with_prefix(const LinearProgram& p, const std::string& prefix) {
  std::size_t n = 0;
  for (const auto& c : p.constraints)
    if (c.tag.rfind(prefix, 0) == 0) ++n;
  return n;
}

}  // namespace

TEST_CASE("base model shape") {
  const PirLpModel model = build_base_model();
  const LinearProgram& p = model.program;
  CHECK(p.ground.size() == 7);
  CHECK(p.ground.full_mask() == 127);  // 2^7 - 1 coordinates
  CHECK(count_tags_with_prefix(p, "dec:") == 4);
  CHECK(count_tags_with_prefix(p, "msg:") == 3);
  CHECK(count_tags_with_prefix(p, "det:") == 1);
  CHECK(count_tags_with_prefix(p, "store:") == 2);
  CHECK(count_tags_with_prefix(p, "dl:") == 5);
  CHECK(count_tags_with_prefix(p, "sym:") == 4 + 9);
  CHECK(count_tags_with_prefix(p, "mirror:") == 0);
  CHECK(count_tags_with_prefix(p, "markov:") == 0);

  std::size_t elementals = 0;
  for (const auto& c : p.constraints)
    if (c.tag[0] == 'H' || c.tag[0] == 'I') ++elementals;
  CHECK(elementals == elemental_count(7));

  CHECK(model.roles.at("W1") == "message");
  CHECK(model.roles.at("X3") == "db1-answer");
  CHECK(model.roles.at("Y2") == "db2-answer");
}

TEST_CASE("pseudo model shape") {
  ModelOptions opts;
  opts.include_pseudo = true;
  const PirLpModel model = build_pseudo_model(opts);
  const LinearProgram& p = model.program;
  CHECK(p.ground.size() == 11);
  CHECK(p.ground.full_mask() == 2047);
  CHECK(count_tags_with_prefix(p, "mirror:") == 12 + 24);
  CHECK(count_tags_with_prefix(p, "markov:") == 2);

  std::size_t elementals = 0;
  for (const auto& c : p.constraints)
    if (c.tag[0] == 'H' || c.tag[0] == 'I') ++elementals;
  CHECK(elementals == 28171);

  CHECK(model.roles.at("U1") == "pseudo");
  CHECK(model.roles.at("V2") == "pseudo");
}

TEST_CASE("option validation") {
  ModelOptions opts;
  opts.include_pseudo = true;
  CHECK_THROWS_AS(build_base_model(opts), std::invalid_argument);
  opts.include_pseudo = false;
  CHECK_THROWS_AS(build_pseudo_model(opts), std::invalid_argument);
  opts.objective_alpha = 0;
  opts.objective_beta = 0;
  CHECK_THROWS_AS(build_base_model(opts), std::invalid_argument);
}

TEST_CASE("base model: minimum of alpha + beta is 2") {
  const PirLpModel model = build_base_model();
  const ObjectiveRun run = minimize_objective(model, 1, 1);
  CHECK(run.solution.objective_value == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(run.check.ok);
  CHECK(run.certificate.certified_bound == 2);
}

TEST_CASE("base model: 3 alpha + 8 beta stays below 10") {
  // the Shannon-only region is {alpha+beta>=2, beta>=3/4}; its corner value
  const PirLpModel model = build_base_model();
  const ObjectiveRun run = minimize_objective(model, 3, 8);
  CHECK(run.solution.objective_value == doctest::Approx(9.75).epsilon(1e-6));
  CHECK(run.check.ok);
  CHECK(run.certificate.certified_bound == Rational(39, 4));
  CHECK(run.solution.objective_value < 10.0 - 1e-3);
}

TEST_CASE("disabling symmetry cannot raise an optimum") {
  ModelOptions no_sym;
  no_sym.include_symmetry = false;
  const ObjectiveRun with_sym = minimize_objective(build_base_model(), 1, 1);
  const ObjectiveRun without = minimize_objective(build_base_model(no_sym), 1, 1);
  CHECK(without.solution.objective_value <=
        with_sym.solution.objective_value + 1e-6);
}

TEST_CASE("extra constraint rows join the program") {
  const PirLpModel model = build_base_model();
  LinearForm cap;  // 3/4 - beta >= 0
  cap.add_scalar("beta", -1);
  cap.constant = Rational(3, 4);
  const PirLpModel capped = model.with_constraint({cap, Sense::GreaterEqualZero, "extra:beta<=3/4"});
  CHECK(capped.program.constraints.size() == model.program.constraints.size() + 1);
  // duplicated tag is rejected
  CHECK_THROWS_AS(capped.with_constraint({cap, Sense::GreaterEqualZero, "extra:beta<=3/4"}),
                  std::invalid_argument);
}

TEST_CASE("xor2 realization is feasible for the non-symmetry base rows") {
  // roles: X1 = A1^({1}), X2 = A1^({2}), X3 = A1^({1}), Y1 = A2^(empty),
  // Y2 = A2^({2}); all are fixed-query answers of the two-message xor scheme
  const SchemeSpec s = builtin_xor2(2, 1);
  const std::vector<BridgeVariable> selection = {
      BridgeVariable::message(1, "W1"),
      BridgeVariable::message(2, "W2"),
      BridgeVariable::fixed_answer(1, 0b01, "X1"),
      BridgeVariable::fixed_answer(1, 0b10, "X2"),
      BridgeVariable::fixed_answer(1, 0b01, "X3"),
      BridgeVariable::fixed_answer(2, 0b00, "Y1"),
      BridgeVariable::fixed_answer(2, 0b10, "Y2"),
  };
  const EntropyVector v = scheme_entropy_bridge(s, selection);

  const CostReport costs = measure_costs(s);
  REQUIRE(costs.alpha.exact.has_value());
  REQUIRE(costs.beta.exact.has_value());
  const std::map<std::string, Rational> scalars = {{"alpha", *costs.alpha.exact},
                                                   {"beta", *costs.beta.exact}};

  const PirLpModel model = build_base_model();
  for (const auto& c : model.program.constraints) {
    if (c.tag.rfind("sym:", 0) == 0) continue;
    const double value = rational_to_double(evaluate(c.form, v, scalars));
    if (c.sense == Sense::EqualZero) {
      CHECK(value == doctest::Approx(0.0).epsilon(1e-9));
    } else {
      CHECK(value >= -1e-9);
    }
  }
}

TEST_CASE("base certificate survives a document round-trip") {
  const PirLpModel model = build_base_model();
  const ObjectiveRun run = minimize_objective(model, 1, 1);
  const std::string model_doc = model_to_json(model.program);
  const std::string cert_doc =
      certificate_to_json(run.certificate, model_hash(model.program));

  const LinearProgram reloaded = model_from_json(model_doc);
  const LoadedCertificate loaded = certificate_from_json(cert_doc);
  CHECK(loaded.model_hash == model_hash(reloaded));
  CHECK(verify_certificate(reloaded, loaded.certificate).ok);
  CHECK(loaded.certificate.certified_bound == 2);
}
