#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pirbound/bounds.hpp"
#include "pirbound/information.hpp"
#include "pirbound/scheme.hpp"
#include "pirbound/serialize.hpp"

using namespace pirbound;

TEST_CASE("download-all passes verification and measures K/N exactly") {
  struct Case { int n, k, l; };
  for (const Case c : {Case{2, 2, 1}, Case{3, 2, 3}, Case{6, 10, 3}}) {
    CAPTURE(c.n);
    CAPTURE(c.k);
    const SchemeSpec s = builtin_download_all(c.n, c.k, c.l);
    const VerificationReport report = verify_scheme(s);
    CHECK(report.correctness.passed);
    CHECK(report.privacy.passed);
    REQUIRE(report.cost.alpha.exact.has_value());
    REQUIRE(report.cost.beta.exact.has_value());
    CHECK(*report.cost.alpha.exact == Rational(c.k, c.n));
    CHECK(*report.cost.beta.exact == Rational(c.k, c.n));
  }
}

TEST_CASE("download-all uses enumeration when small and routing when large") {
  CHECK(verify_correctness(builtin_download_all(2, 2, 1)).method ==
        CorrectnessReport::Method::Enumeration);
  CHECK(verify_correctness(builtin_download_all(6, 10, 3)).method ==
        CorrectnessReport::Method::Structural);
}

TEST_CASE("download-all divisibility error suggests a working length") {
  CHECK_THROWS_WITH_AS(builtin_download_all(6, 10, 1), doctest::Contains("L = 3"),
                       std::invalid_argument);
  CHECK_NOTHROW(builtin_download_all(3, 2, 3));
}

TEST_CASE("xor2 verifies for one to three messages") {
  for (int k = 1; k <= 3; ++k) {
    CAPTURE(k);
    const SchemeSpec s = builtin_xor2(k, 1);
    const VerificationReport report = verify_scheme(s);
    CHECK(report.correctness.passed);
    CHECK(report.correctness.method == CorrectnessReport::Method::Enumeration);
    CHECK(report.privacy.passed);
    REQUIRE(report.cost.alpha.exact.has_value());
    REQUIRE(report.cost.beta.exact.has_value());
    CHECK(*report.cost.alpha.exact == k);
    CHECK(*report.cost.beta.exact == 1);
  }
}

TEST_CASE("xor2 exhaustive case count matches the domain") {
  // 2^3 message tuples * 2^3 keys * 3 indices
  const CorrectnessReport r = verify_correctness(builtin_xor2(3, 1));
  CHECK(r.cases_checked == 8 * 8 * 3);
}

TEST_CASE("xor2 informational costs: replicated storage, padded answers") {
  const SchemeSpec s = builtin_xor2(2, 1);
  const CostReport cost = measure_costs(s);
  CHECK(cost.alpha_info == doctest::Approx(2.0).epsilon(1e-9));
  // the empty-set query ships a constant answer, so H(A|F) averages to 3/4
  CHECK(cost.beta_info == doctest::Approx(0.75).epsilon(1e-9));
  for (int n = 0; n < 2; ++n) {
    CHECK(cost.alpha_n[n].approx >= cost.alpha_info_n[n] - 1e-9);
    CHECK(cost.beta_n[n].approx >= cost.beta_info_n[n] - 1e-9);
  }
}

TEST_CASE("broken reconstruction is caught with a counterexample") {
  SchemeSpec s = builtin_xor2(2, 1);
  // both databases get the same query; the xor no longer isolates W_k
  s.query = [](int, int, std::int64_t f) { return f; };
  const CorrectnessReport r = verify_correctness(s);
  CHECK_FALSE(r.passed);
  REQUIRE(r.counterexample.has_value());
  const Counterexample& ce = *r.counterexample;
  CHECK(ce.got != ce.expected);
  // privacy is intact: the leak is in correctness only
  CHECK(verify_privacy(s).passed);
}

TEST_CASE("leaky query distribution fails privacy with distributions reported") {
  SchemeSpec s = builtin_xor2(2, 1);
  const auto base_query = s.query;
  s.query = [base_query](int n, int k, std::int64_t f) {
    if (n == 1) return base_query(n, k, f) | (std::int64_t{1} << k);  // reveal k
    return base_query(n, k, f);
  };
  const PrivacyReport r = verify_privacy(s);
  CHECK_FALSE(r.passed);
  CHECK(r.detail.find("database 2") != std::string::npos);
  REQUIRE(r.distributions.size() == 2);
  CHECK(r.distributions[1][0] != r.distributions[1][1]);
}

TEST_CASE("download-all privacy is a point mass") {
  const PrivacyReport r = verify_privacy(builtin_download_all(2, 2, 1));
  REQUIRE(r.passed);
  for (const auto& per_k : r.distributions)
    for (const auto& dist : per_k) {
      REQUIRE(dist.size() == 1);
      CHECK(dist.begin()->second == 1);
    }
}

TEST_CASE("beta is invariant under the desired index") {
  for (int k = 1; k <= 3; ++k) {
    const SchemeSpec s = builtin_xor2(k, 1);
    // measure_costs cross-checks E[len] across k internally; also assert the
    // reported value directly
    const CostReport cost = measure_costs(s);
    for (const auto& b : cost.beta_n) CHECK(*b.exact == 1);
  }
}

TEST_CASE("relabeling messages preserves the cost report") {
  const SchemeSpec s = builtin_xor2(3, 1);
  const SchemeSpec t = relabel_messages(s, {2, 0, 1});
  const CostReport cs = measure_costs(s);
  const CostReport ct = measure_costs(t);
  CHECK(*cs.alpha.exact == *ct.alpha.exact);
  CHECK(*cs.beta.exact == *ct.beta.exact);
  CHECK(cs.alpha_info == doctest::Approx(ct.alpha_info));
  CHECK(cs.beta_info == doctest::Approx(ct.beta_info));
  CHECK(verify_correctness(t).passed);
  CHECK(verify_privacy(t).passed);

  const SchemeSpec d = relabel_messages(builtin_download_all(3, 2, 3), {1, 0});
  CHECK(verify_correctness(d).passed);
  const CostReport cd = measure_costs(d);
  CHECK(*cd.alpha.exact == Rational(2, 3));
}

TEST_CASE("measured points satisfy every applicable bound line") {
  struct Case { int n, k, l; };
  for (const Case c : {Case{2, 2, 1}, Case{3, 2, 3}, Case{6, 10, 3}}) {
    const CostReport cost = measure_costs(builtin_download_all(c.n, c.k, c.l));
    const TradeoffPoint point{*cost.alpha.exact, *cost.beta.exact};
    const PirParameters params{c.n, c.k};
    CHECK(theorem1_line(params).satisfied_by(point));
    if (c.n >= 3) CHECK(theorem2_line(params).satisfied_by(point));
    if (c.n == 2 && c.k == 2) CHECK(theorem3_line(params).satisfied_by(point));
    CHECK(point.beta >= capacity_beta(params));
  }
  const CostReport xc = measure_costs(builtin_xor2(2, 1));
  const TradeoffPoint xp{*xc.alpha.exact, *xc.beta.exact};
  CHECK(theorem1_line({2, 2}).satisfied_by(xp));
  CHECK(theorem3_line({2, 2}).satisfied_by(xp));
  CHECK(Rational(3) * xp.alpha + Rational(8) * xp.beta == 14);
}

TEST_CASE("size guard refuses oversized enumerations explicitly") {
  // strip the routing structure so the big instance has no structural path
  SchemeSpec s = builtin_download_all(6, 10, 3);
  s.routing.reset();
  CHECK_THROWS_AS((void)verify_correctness(s), SizeGuardError);
  try {
    (void)verify_correctness(s);
  } catch (const SizeGuardError& e) {
    CHECK(e.count == std::int64_t{1073741824} * 10);
  }
}

TEST_CASE("entropy bridge on stock selections") {
  const SchemeSpec s = builtin_xor2(2, 1);
  SUBCASE("one fixed answer is a fresh bit independent of W2") {
    const std::vector<BridgeVariable> sel = {
        BridgeVariable::message(2, "W2"),
        BridgeVariable::fixed_answer(1, 0b01, "A"),
    };
    const EntropyVector v = scheme_entropy_bridge(s, sel);
    const GroundSet& g = v.ground;
    CHECK(rational_to_double(v.at(SubsetId{g.mask_of({"A"})})) == doctest::Approx(1.0));
    CHECK(rational_to_double(v.at(SubsetId{g.full_mask()})) == doctest::Approx(2.0));
  }
  SUBCASE("download-all storage pair carries both messages") {
    const SchemeSpec d = builtin_download_all(2, 2, 1);
    const std::vector<BridgeVariable> sel = {
        BridgeVariable::storage(1, "S1"),
        BridgeVariable::storage(2, "S2"),
    };
    const EntropyVector v = scheme_entropy_bridge(d, sel);
    CHECK(rational_to_double(v.at(SubsetId{v.ground.full_mask()})) == doctest::Approx(2.0));
  }
  SUBCASE("bridge vectors live in the Shannon cone") {
    const std::vector<BridgeVariable> sel = {
        BridgeVariable::message(1, "W1"),
        BridgeVariable::message(2, "W2"),
        BridgeVariable::fixed_answer(1, 0b11, "A"),
    };
    const EntropyVector v = scheme_entropy_bridge(s, sel);
    for (const auto& c : elemental_inequalities(v.ground))
      CHECK(rational_to_double(evaluate(c.form, v)) >= -1e-9);
  }
  SUBCASE("key-dependent selections are rejected") {
    const std::vector<BridgeVariable> sel = {
        BridgeVariable::keyed_answer(1, 1, "A"),
    };
    CHECK_THROWS_WITH_AS((void)scheme_entropy_bridge(s, sel),
                         doctest::Contains("key-dependent"), std::invalid_argument);
  }
}

TEST_CASE("scheme documents round-trip through JSON") {
  const SchemeSpec s = builtin_xor2(2, 1);
  const std::string doc = scheme_to_json(s);
  const SchemeSpec loaded = scheme_from_json(doc);
  CHECK(loaded.params.messages == 2);
  CHECK(loaded.key_count == 4);
  CHECK(verify_correctness(loaded).passed);
  CHECK(verify_privacy(loaded).passed);
  const CostReport cost = measure_costs(loaded);
  CHECK(*cost.alpha.exact == 2);
  CHECK(*cost.beta.exact == 1);
  // canonical: dumping the loaded scheme reproduces the document
  CHECK(scheme_to_json(loaded) == doc);
}
