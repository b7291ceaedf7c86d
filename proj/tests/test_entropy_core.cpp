#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pirbound/information.hpp"
#include "pirbound/joint_distribution.hpp"

using namespace pirbound;

namespace {

GroundSet two_bits() { return GroundSet({"W1", "W2"}); }

// two independent fair bits
JointDistribution independent_bits() {
  return JointDistribution(two_bits(), {2, 2},
                           {Rational(1, 4), Rational(1, 4), Rational(1, 4), Rational(1, 4)});
}

// (W1, W2, P) with P = W1 xor W2
JointDistribution parity_triple() {
  GroundSet g({"W1", "W2", "P"});
  std::vector<Rational> table(8, Rational(0));
  for (int w1 = 0; w1 < 2; ++w1)
    for (int w2 = 0; w2 < 2; ++w2) table[static_cast<std::size_t>(w1 * 4 + w2 * 2 + (w1 ^ w2))] = Rational(1, 4);
  return JointDistribution(g, {2, 2, 2}, table);
}

}  // namespace

TEST_CASE("conditional entropy compiles to the chain-rule form") {
  const GroundSet g = two_bits();

  const LinearForm h1 = conditional_entropy(g, g.mask_of({"W1"}), 0);
  CHECK(h1.entropy.size() == 1);
  CHECK(h1.entropy.at(SubsetId{g.mask_of({"W1"})}) == 1);
  CHECK(h1.constant == 0);
  CHECK(h1.scalars.empty());

  const LinearForm h12 = conditional_entropy(g, g.mask_of({"W1"}), g.mask_of({"W2"}));
  CHECK(h12.entropy.at(SubsetId{g.mask_of({"W1", "W2"})}) == 1);
  CHECK(h12.entropy.at(SubsetId{g.mask_of({"W2"})}) == -1);

  const EntropyVector v = entropy_vector_from_distribution(independent_bits());
  CHECK(rational_to_double(evaluate(h12, v)) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("conditional entropy rejects bad variable sets") {
  const GroundSet g = two_bits();
  CHECK_THROWS_WITH_AS(conditional_entropy(g, 0, g.mask_of({"W2"})),
                       doctest::Contains("empty"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(conditional_entropy(g, std::vector<std::string>{"W9"},
                                           std::vector<std::string>{}),
                       doctest::Contains("W9"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(conditional_entropy(g, g.mask_of({"W1"}), g.mask_of({"W1"})),
                       doctest::Contains("W1"), std::invalid_argument);
}

TEST_CASE("conditional mutual information") {
  const GroundSet g = two_bits();
  const LinearForm mi = conditional_mutual_information(g, g.mask_of({"W1"}), g.mask_of({"W2"}), 0);
  const EntropyVector v = entropy_vector_from_distribution(independent_bits());
  CHECK(rational_to_double(evaluate(mi, v)) == doctest::Approx(0.0).epsilon(1e-9));

  // I(A;B|C) with C empty compiles to +A +B -AB
  CHECK(mi.entropy.at(SubsetId{g.mask_of({"W1"})}) == 1);
  CHECK(mi.entropy.at(SubsetId{g.mask_of({"W2"})}) == 1);
  CHECK(mi.entropy.at(SubsetId{g.mask_of({"W1", "W2"})}) == -1);

  // parity makes the two bits fully dependent given the parity variable
  const GroundSet g3({"W1", "W2", "P"});
  const LinearForm mi_cond =
      conditional_mutual_information(g3, g3.mask_of({"W1"}), g3.mask_of({"W2"}), g3.mask_of({"P"}));
  const EntropyVector v3 = entropy_vector_from_distribution(parity_triple());
  CHECK(rational_to_double(evaluate(mi_cond, v3)) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("chain rule holds coefficient-exactly on compiled forms") {
  const GroundSet g({"A", "B", "C", "D"});
  std::mt19937 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const std::uint32_t full = g.full_mask();
    std::uint32_t a = 0, b = 0;
    while (a == 0) a = rng() & full;
    b = rng() & full & ~a;
    LinearForm lhs = conditional_entropy(g, a, b);
    if (b != 0) lhs += conditional_entropy(g, b, 0);
    const LinearForm rhs = conditional_entropy(g, a | b, 0);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("elemental family size matches the closed form") {
  CHECK(elemental_count(1) == 1);
  CHECK(elemental_count(3) == 9);
  CHECK(elemental_count(11) == 28171);

  std::vector<std::string> names;
  for (int n = 1; n <= 12; ++n) {
    names.push_back("V" + std::to_string(n));
    const GroundSet g(names);
    CHECK(elemental_inequalities(g).size() == elemental_count(n));
  }
}

TEST_CASE("elemental tags are unique and canonical") {
  const GroundSet g({"W1", "W2", "X1"});
  const auto family = elemental_inequalities(g);
  REQUIRE(family.size() == 9);
  std::set<std::string> tags;
  for (const auto& c : family) CHECK(tags.insert(c.tag).second);
  CHECK(tags.count("H(W1|W2,X1)") == 1);
  CHECK(tags.count("I(W1;W2|X1)") == 1);
  CHECK(tags.count("I(W1;W2)") == 1);
}

TEST_CASE("parity triple satisfies every elemental inequality") {
  const GroundSet g({"W1", "W2", "P"});
  const EntropyVector v = entropy_vector_from_distribution(parity_triple());
  for (const auto& c : elemental_inequalities(g))
    CHECK(rational_to_double(evaluate(c.form, v)) >= -1e-9);
}

TEST_CASE("distribution oracle on stock distributions") {
  const EntropyVector v = entropy_vector_from_distribution(independent_bits());
  const GroundSet g = two_bits();
  CHECK(rational_to_double(v.at(SubsetId{g.mask_of({"W1"})})) == doctest::Approx(1.0));
  CHECK(rational_to_double(v.at(SubsetId{g.mask_of({"W2"})})) == doctest::Approx(1.0));
  CHECK(rational_to_double(v.at(SubsetId{g.mask_of({"W1", "W2"})})) == doctest::Approx(2.0));

  const EntropyVector v3 = entropy_vector_from_distribution(parity_triple());
  const GroundSet g3({"W1", "W2", "P"});
  for (const auto& name : g3.names())
    CHECK(rational_to_double(v3.at(SubsetId{g3.mask_of({name.c_str()})})) == doctest::Approx(1.0));
  CHECK(rational_to_double(v3.at(SubsetId{g3.mask_of({"W1", "P"})})) == doctest::Approx(2.0));
  CHECK(rational_to_double(v3.at(SubsetId{g3.full_mask()})) == doctest::Approx(2.0));
}

TEST_CASE("adjoining a constant variable changes no entropy") {
  // (W1, W2) independent bits plus a constant C
  const GroundSet g({"W1", "W2", "C"});
  std::vector<Rational> table(8, Rational(0));
  for (int w1 = 0; w1 < 2; ++w1)
    for (int w2 = 0; w2 < 2; ++w2) table[static_cast<std::size_t>(w1 * 4 + w2 * 2)] = Rational(1, 4);
  const EntropyVector v = entropy_vector_from_distribution(JointDistribution(g, {2, 2, 2}, table));
  const std::uint32_t c_bit = g.mask_of({"C"});
  for (std::uint32_t mask = 1; mask <= g.full_mask(); ++mask) {
    if (!(mask & ~c_bit)) continue;
    const double with_c = rational_to_double(v.values[(mask | c_bit) - 1]);
    const double without_c = rational_to_double(v.values[(mask & ~c_bit) - 1]);
    CHECK(with_c == doctest::Approx(without_c).epsilon(1e-9));
  }
}

TEST_CASE("distribution validation") {
  const GroundSet g = two_bits();
  CHECK_THROWS_AS(JointDistribution(g, {2, 2}, {Rational(1, 2), 0, 0, 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      JointDistribution(g, {2, 2}, {Rational(3, 2), Rational(-1, 2), 0, 0}),
      std::invalid_argument);
  CHECK_THROWS_AS(JointDistribution(g, {2}, {Rational(1)}), std::invalid_argument);
}

TEST_CASE("evaluate handles scalars and rejects unbound names") {
  const GroundSet g = two_bits();
  const EntropyVector v = entropy_vector_from_distribution(independent_bits());

  CHECK(evaluate(LinearForm{}, v) == 0);

  LinearForm f;
  f.add_scalar("alpha", 1);
  f.add_scalar("beta", 1);
  f.constant = -2;
  CHECK(evaluate(f, v, {{"alpha", Rational(1)}, {"beta", Rational(1)}}) == 0);
  CHECK_THROWS_WITH_AS(evaluate(f, v, {{"alpha", Rational(1)}}),
                       doctest::Contains("beta"), std::invalid_argument);
}

TEST_CASE("polymatroid soundness of random small distributions") {
  std::mt19937 rng(20260809);
  int checked = 0;
  for (int trial = 0; trial < 110; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 3);  // 2..4 variables
    std::vector<std::string> names;
    std::vector<std::int64_t> alphabets;
    std::int64_t outcomes = 1;
    for (int i = 0; i < n; ++i) {
      names.push_back("V" + std::to_string(i + 1));
      alphabets.push_back(2 + static_cast<std::int64_t>(rng() % 2));  // 2..3
      outcomes *= alphabets.back();
    }
    // random integer weights normalized to an exact distribution
    std::vector<Rational> table(static_cast<std::size_t>(outcomes));
    Int total = 0;
    std::vector<int> weights(static_cast<std::size_t>(outcomes));
    for (auto& w : weights) {
      w = static_cast<int>(rng() % 6);  // zeros allowed
      total += w;
    }
    if (total == 0) { weights[0] = 1; total = 1; }
    for (std::size_t i = 0; i < table.size(); ++i) table[i] = Rational(Int(weights[i]), total);

    const GroundSet g(names);
    const EntropyVector v =
        entropy_vector_from_distribution(JointDistribution(g, alphabets, table));
    for (const auto& c : elemental_inequalities(g)) {
      CHECK(rational_to_double(evaluate(c.form, v)) >= -1e-9);
      ++checked;
    }
  }
  CHECK(checked > 100);
}
