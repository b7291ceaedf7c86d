#include "pirbound/pir_models.hpp"

#include <stdexcept>

#include "pirbound/information.hpp"

namespace pirbound {

namespace {

void check_objective(const ModelOptions& opts) {
  if (opts.objective_alpha < 0 || opts.objective_beta < 0)
    throw std::invalid_argument("objective coefficients must be nonnegative");
  if (opts.objective_alpha == 0 && opts.objective_beta == 0)
    throw std::invalid_argument("objective coefficients must not both be zero");
}

LinearForm entropy_of(const GroundSet& g, std::initializer_list<const char*> labels) {
  LinearForm f;
  f.add_entropy(SubsetId{g.mask_of(labels)}, 1);
  return f;
}

// H(set) - value = 0
Constraint fixed_entropy(const GroundSet& g, std::initializer_list<const char*> labels,
                         const Rational& value, const std::string& tag) {
  LinearForm f = entropy_of(g, labels);
  f.constant -= value;
  return {f, Sense::EqualZero, tag};
}

Constraint zero_conditional(const GroundSet& g, std::initializer_list<const char*> a,
                            std::initializer_list<const char*> b, const std::string& tag) {
  return {conditional_entropy(g, g.mask_of(a), g.mask_of(b)), Sense::EqualZero, tag};
}

// H(first) = H(second)
Constraint equal_entropy(const GroundSet& g, std::uint32_t first, std::uint32_t second,
                         const std::string& tag) {
  LinearForm f;
  f.add_entropy(SubsetId{first}, 1);
  f.add_entropy(SubsetId{second}, -1);
  return {f, Sense::EqualZero, tag};
}

PirLpModel build_model(const ModelOptions& opts) {
  std::vector<std::string> names = {"W1", "W2", "X1", "X2", "X3", "Y1", "Y2"};
  if (opts.include_pseudo) {
    names.insert(names.end(), {"U1", "U2", "V1", "V2"});
  }
  GroundSet g(names);

  PirLpModel model;
  model.roles = {{"W1", "message"},    {"W2", "message"},
                 {"X1", "db1-answer"}, {"X2", "db1-answer"}, {"X3", "db1-answer"},
                 {"Y1", "db2-answer"}, {"Y2", "db2-answer"}};
  if (opts.include_pseudo)
    for (const char* v : {"U1", "U2", "V1", "V2"}) model.roles.emplace(v, "pseudo");

  LinearProgram& p = model.program;
  p.ground = g;
  p.scalars = {model.alpha_name, model.beta_name};

  p.constraints = elemental_inequalities(g);

  // message structure: unit-entropy independent messages
  p.constraints.push_back(fixed_entropy(g, {"W1"}, 1, "msg:H(W1)=1"));
  p.constraints.push_back(fixed_entropy(g, {"W2"}, 1, "msg:H(W2)=1"));
  p.constraints.push_back(fixed_entropy(g, {"W1", "W2"}, 2, "msg:H(W1,W2)=2"));

  // all answers are functions of the messages
  p.constraints.push_back(zero_conditional(g, {"X1", "X2", "X3", "Y1", "Y2"}, {"W1", "W2"},
                                           "det:H(X1,X2,X3,Y1,Y2|W1,W2)=0"));

  // decodability of each message from one answer per database
  p.constraints.push_back(zero_conditional(g, {"W1"}, {"X1", "Y1"}, "dec:H(W1|X1,Y1)=0"));
  p.constraints.push_back(zero_conditional(g, {"W2"}, {"X1", "Y2"}, "dec:H(W2|X1,Y2)=0"));
  p.constraints.push_back(zero_conditional(g, {"W2"}, {"X2", "Y1"}, "dec:H(W2|X2,Y1)=0"));
  p.constraints.push_back(zero_conditional(g, {"W1"}, {"X3", "Y2"}, "dec:H(W1|X3,Y2)=0"));

  // storage links: each database holds its whole answer variety
  {
    LinearForm f;
    f.add_scalar(model.alpha_name, 1);
    f -= entropy_of(g, {"X1", "X2", "X3"});
    p.constraints.push_back({f, Sense::GreaterEqualZero, "store:alpha>=H(X1,X2,X3)"});
  }
  {
    LinearForm f;
    f.add_scalar(model.alpha_name, 1);
    f -= entropy_of(g, {"Y1", "Y2"});
    p.constraints.push_back({f, Sense::GreaterEqualZero, "store:alpha>=H(Y1,Y2)"});
  }

  // download links: beta dominates every single fixed-query answer
  for (const char* v : {"X1", "X2", "X3", "Y1", "Y2"}) {
    LinearForm f;
    f.add_scalar(model.beta_name, 1);
    f.add_entropy(SubsetId{g.mask_of({v})}, -1);
    p.constraints.push_back({f, Sense::GreaterEqualZero,
                             std::string("dl:beta>=H(") + v + ")"});
  }

  if (opts.include_symmetry) {
    // single-answer entropies all equal, chained
    const char* answers[] = {"X1", "X2", "X3", "Y1", "Y2"};
    for (int i = 0; i + 1 < 5; ++i) {
      p.constraints.push_back(equal_entropy(
          g, g.mask_of({answers[i]}), g.mask_of({answers[i + 1]}),
          std::string("sym:H(") + answers[i] + ")=H(" + answers[i + 1] + ")"));
    }
    // answer-message joint entropies all equal, chained over (answer, message)
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const char* v : answers)
      for (const char* w : {"W1", "W2"}) pairs.emplace_back(v, w);
    for (std::size_t i = 0; i + 1 < pairs.size(); ++i) {
      const std::vector<std::string> a = {pairs[i].first, pairs[i].second};
      const std::vector<std::string> b = {pairs[i + 1].first, pairs[i + 1].second};
      p.constraints.push_back(equal_entropy(
          g, g.mask_of(a), g.mask_of(b),
          "sym:H(" + pairs[i].first + "," + pairs[i].second + ")=H(" + pairs[i + 1].first +
              "," + pairs[i + 1].second + ")"));
    }
  }

  if (opts.include_pseudo) {
    // Markov couplings: the pseudo messages see the rest only through their
    // own database's answers
    p.constraints.push_back({conditional_mutual_information(
                                 g, g.mask_of({"V1", "V2"}),
                                 g.mask_of({"W1", "W2", "X1", "X2", "X3"}),
                                 g.mask_of({"Y1", "Y2"})),
                             Sense::EqualZero,
                             "markov:I(V1,V2;W1,W2,X1,X2,X3|Y1,Y2)=0"});
    p.constraints.push_back({conditional_mutual_information(
                                 g, g.mask_of({"U1", "U2"}),
                                 g.mask_of({"W1", "W2", "Y1", "Y2", "V1", "V2"}),
                                 g.mask_of({"X1", "X2", "X3"})),
                             Sense::EqualZero,
                             "markov:I(U1,U2;W1,W2,Y1,Y2,V1,V2|X1,X2,X3)=0"});

    // mirror equalities: (Y1,Y2,V1,V2) ~ (Y1,Y2,W1,W2) and
    // (X1,X2,X3,U1,U2) ~ (X1,X2,X3,W1,W2), subset by subset
    auto add_mirrors = [&](const std::vector<std::string>& carriers,
                           const std::vector<std::string>& pseudo,
                           const std::vector<std::string>& originals) {
      const std::size_t nc = carriers.size(), np = pseudo.size();
      for (std::uint32_t s = 0; s < (1u << nc); ++s) {
        for (std::uint32_t t = 1; t < (1u << np); ++t) {
          std::vector<std::string> lhs, rhs;
          for (std::size_t i = 0; i < nc; ++i)
            if (s & (1u << i)) { lhs.push_back(carriers[i]); rhs.push_back(carriers[i]); }
          for (std::size_t i = 0; i < np; ++i)
            if (t & (1u << i)) { lhs.push_back(pseudo[i]); rhs.push_back(originals[i]); }
          const std::uint32_t lm = g.mask_of(lhs);
          const std::uint32_t rm = g.mask_of(rhs);
          p.constraints.push_back(equal_entropy(
              g, lm, rm, "mirror:H(" + g.subset_name(lm) + ")=H(" + g.subset_name(rm) + ")"));
        }
      }
    };
    add_mirrors({"Y1", "Y2"}, {"V1", "V2"}, {"W1", "W2"});
    add_mirrors({"X1", "X2", "X3"}, {"U1", "U2"}, {"W1", "W2"});
  }

  p.objective = LinearForm{};
  p.objective.add_scalar(model.alpha_name, opts.objective_alpha);
  p.objective.add_scalar(model.beta_name, opts.objective_beta);

  p.validate();
  return model;
}

}  // namespace

PirLpModel PirLpModel::with_constraint(Constraint extra) const {
  PirLpModel copy = *this;
  copy.program.constraints.push_back(std::move(extra));
  copy.program.validate();
  return copy;
}

PirLpModel build_base_model(const ModelOptions& opts) {
  check_objective(opts);
  if (opts.include_pseudo)
    throw std::invalid_argument("base model must not request pseudo messages");
  return build_model(opts);
}

PirLpModel build_pseudo_model(const ModelOptions& opts) {
  check_objective(opts);
  if (!opts.include_pseudo)
    throw std::invalid_argument("pseudo model requires include_pseudo");
  return build_model(opts);
}

ObjectiveRun minimize_objective(const PirLpModel& model, const Rational& c_alpha,
                                const Rational& c_beta, const SolveOptions& options) {
  if (c_alpha < 0 || c_beta < 0)
    throw std::invalid_argument("objective coefficients must be nonnegative");
  if (c_alpha == 0 && c_beta == 0)
    throw std::invalid_argument("objective coefficients must not both be zero");
  LinearProgram p = model.program;
  p.objective = LinearForm{};
  p.objective.add_scalar(model.alpha_name, c_alpha);
  p.objective.add_scalar(model.beta_name, c_beta);

  ObjectiveRun run;
  run.solution = solve_min(p, options);
  if (run.solution.status != SolveStatus::Optimal)
    throw SolverFailure("model solve ended " + to_string(run.solution.status));
  run.certificate = extract_certificate(p, run.solution, options);
  run.check = verify_certificate(p, run.certificate);
  return run;
}

}  // namespace pirbound
