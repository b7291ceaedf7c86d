#include "pirbound/lp.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "simplex_internal.hpp"

// The solver works on the dual of the user's program. The primal has few
// variables (entropy coordinates + scalars) and many rows (the elemental
// family), so the dual standard form
//
//   min f'z   s.t.  M z = c,  z >= 0
//
// has one row per primal variable and one column per primal constraint
// direction; the working basis stays at primal-variable size. Equality rows
// contribute two opposing columns sharing one tag; entropy-coordinate bounds
// contribute slack columns. Optimal z values are exactly the certificate
// weights, and the negated simplex multipliers of the optimum are the primal
// point.

namespace pirbound {

namespace {

struct ColumnMeta {
  int constraint = -1;  // index into program.constraints; -1 for slack
  int sign = +1;        // -1 for the opposing copy of an equality row
  int slack_row = -1;   // row index when this column is a coordinate slack
};

struct StdForm {
  simplex::Problem problem;
  std::vector<ColumnMeta> meta;          // parallel to problem.cols
  std::vector<Rational> rhs_exact;       // scaled, exact
  std::vector<int> row_scale;            // +1 / -1
  std::vector<std::uint32_t> row_coord;  // mask, or 0 for scalar rows
  std::map<std::uint32_t, int> coord_row;
  std::map<std::string, int> scalar_row;

  bool is_artificial(int col) const {
    return col >= static_cast<int>(problem.cols.size());
  }
};

StdForm build_std_form(const LinearProgram& p) {
  StdForm F;
  int rows = 0;

  // presolve: keep only coordinates referenced by a constraint or the objective
  std::set<std::uint32_t> used;
  for (const auto& c : p.constraints)
    for (const auto& [id, coeff] : c.form.entropy) used.insert(id.mask);
  for (const auto& [id, coeff] : p.objective.entropy) used.insert(id.mask);

  for (std::uint32_t mask : used) {
    F.coord_row.emplace(mask, rows);
    F.row_coord.push_back(mask);
    ++rows;
  }
  for (const auto& name : p.scalars) {
    F.scalar_row.emplace(name, rows);
    F.row_coord.push_back(0);
    ++rows;
  }
  F.problem.rows = rows;

  F.rhs_exact.assign(static_cast<std::size_t>(rows), Rational(0));
  for (const auto& [id, coeff] : p.objective.entropy)
    F.rhs_exact[static_cast<std::size_t>(F.coord_row.at(id.mask))] = coeff;
  for (const auto& [name, coeff] : p.objective.scalars)
    F.rhs_exact[static_cast<std::size_t>(F.scalar_row.at(name))] = coeff;

  F.row_scale.assign(static_cast<std::size_t>(rows), 1);
  F.problem.rhs.assign(static_cast<std::size_t>(rows), 0.0);
  for (int r = 0; r < rows; ++r) {
    auto& value = F.rhs_exact[static_cast<std::size_t>(r)];
    if (value < 0) {
      F.row_scale[static_cast<std::size_t>(r)] = -1;
      value = -value;
    }
    F.problem.rhs[static_cast<std::size_t>(r)] = rational_to_double(value);
  }

  auto push_constraint_column = [&](int index, const Constraint& c, int sign) {
    simplex::Column col;
    col.cost = sign * rational_to_double(c.form.constant);
    col.entries.reserve(c.form.entropy.size() + c.form.scalars.size());
    for (const auto& [id, coeff] : c.form.entropy) {
      const int r = F.coord_row.at(id.mask);
      col.entries.emplace_back(
          r, sign * F.row_scale[static_cast<std::size_t>(r)] * rational_to_double(coeff));
    }
    for (const auto& [name, coeff] : c.form.scalars) {
      const int r = F.scalar_row.at(name);
      col.entries.emplace_back(
          r, sign * F.row_scale[static_cast<std::size_t>(r)] * rational_to_double(coeff));
    }
    F.problem.cols.push_back(std::move(col));
    F.meta.push_back({index, sign, -1});
  };

  for (std::size_t i = 0; i < p.constraints.size(); ++i) {
    push_constraint_column(static_cast<int>(i), p.constraints[i], +1);
    if (p.constraints[i].sense == Sense::EqualZero)
      push_constraint_column(static_cast<int>(i), p.constraints[i], -1);
  }

  // initial basis: coordinate slacks where the scaled rhs is nonnegative as-is
  F.problem.initial_basis.assign(static_cast<std::size_t>(rows), -1);
  for (int r = 0; r < rows; ++r) {
    if (F.row_coord[static_cast<std::size_t>(r)] == 0) continue;  // scalar: no slack
    simplex::Column col;
    col.entries.emplace_back(r, static_cast<double>(F.row_scale[static_cast<std::size_t>(r)]));
    if (F.row_scale[static_cast<std::size_t>(r)] > 0)
      F.problem.initial_basis[static_cast<std::size_t>(r)] =
          static_cast<int>(F.problem.cols.size());
    F.problem.cols.push_back(std::move(col));
    F.meta.push_back({-1, +1, r});
  }
  return F;
}

simplex::Options kernel_options(const SolveOptions& options) {
  simplex::Options out;
  out.optimality_tol = options.optimality_tol;
  out.max_iterations = options.max_iterations;
  out.refactor_interval = options.refactor_interval;
  return out;
}

simplex::Result run_kernel(const StdForm& F, const SolveOptions& options) {
  try {
    return simplex::solve_standard_form(F.problem, kernel_options(options));
  } catch (const std::runtime_error& e) {
    throw SolverFailure(e.what());
  }
}

// Feasibility of the user's program == boundedness of the zero-objective dual.
bool primal_feasible(const LinearProgram& p, const SolveOptions& options) {
  LinearProgram zero = p;
  zero.objective = LinearForm{};
  StdForm F = build_std_form(zero);
  const simplex::Result r = run_kernel(F, options);
  if (r.outcome == simplex::Outcome::IterationLimit)
    throw SolverFailure("iteration limit in feasibility probe");
  return r.outcome == simplex::Outcome::Optimal;
}

}  // namespace

void LinearProgram::validate() const {
  std::set<std::string> tags;
  std::set<std::string> scalar_set;
  for (const auto& s : scalars) {
    if (s.empty()) throw std::invalid_argument("empty scalar name");
    if (!scalar_set.insert(s).second)
      throw std::invalid_argument("duplicate scalar '" + s + "'");
  }
  auto check_form = [&](const LinearForm& f, const std::string& where) {
    for (const auto& [id, coeff] : f.entropy) {
      if (id.mask == 0 || id.mask > ground.full_mask())
        throw std::invalid_argument(where + ": entropy coordinate out of range");
    }
    for (const auto& [name, coeff] : f.scalars) {
      if (!scalar_set.count(name))
        throw std::invalid_argument(where + ": undeclared scalar '" + name + "'");
    }
  };
  for (const auto& c : constraints) {
    if (c.tag.empty()) throw std::invalid_argument("constraint with empty tag");
    if (c.tag.rfind(kNonnegTagPrefix, 0) == 0)
      throw std::invalid_argument("tag '" + c.tag + "' uses the reserved prefix 'nonneg:'");
    if (!tags.insert(c.tag).second)
      throw std::invalid_argument("duplicate constraint tag '" + c.tag + "'");
    check_form(c.form, "constraint '" + c.tag + "'");
  }
  check_form(objective, "objective");
}

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Unbounded: return "unbounded";
    case SolveStatus::Infeasible: return "infeasible";
  }
  return "unknown";
}

Solution solve_min(const LinearProgram& program, const SolveOptions& options) {
  program.validate();
  const StdForm F = build_std_form(program);

  Solution sol;
  if (F.problem.rows == 0) {
    sol.status = SolveStatus::Optimal;
    sol.objective_value = rational_to_double(program.objective.constant);
    sol.entropy_values.assign(program.ground.full_mask(), 0.0);
    for (const auto& s : program.scalars) sol.scalar_values[s] = 0.0;
    return sol;
  }

  const simplex::Result result = run_kernel(F, options);
  sol.iterations = result.iterations;
  if (result.outcome == simplex::Outcome::IterationLimit)
    throw SolverFailure("iteration limit exceeded (" + std::to_string(sol.iterations) + ")");

  if (result.outcome != simplex::Outcome::Optimal) {
    // standard form infeasible => primal unbounded; unbounded => infeasible;
    // settle the ambiguous first case with a zero-objective probe
    if (result.outcome == simplex::Outcome::Unbounded) {
      sol.status = SolveStatus::Infeasible;
    } else {
      sol.status = primal_feasible(program, options) ? SolveStatus::Unbounded
                                                     : SolveStatus::Infeasible;
    }
    return sol;
  }

  sol.status = SolveStatus::Optimal;
  sol.objective_value = -result.objective + rational_to_double(program.objective.constant);
  sol.entropy_values.assign(program.ground.full_mask(), 0.0);
  for (const auto& [mask, row] : F.coord_row)
    sol.entropy_values[mask - 1] = -static_cast<double>(F.row_scale[static_cast<std::size_t>(row)]) *
                                   result.multipliers[static_cast<std::size_t>(row)];
  for (const auto& [name, row] : F.scalar_row)
    sol.scalar_values[name] = -static_cast<double>(F.row_scale[static_cast<std::size_t>(row)]) *
                              result.multipliers[static_cast<std::size_t>(row)];

  // feasibility audit of the reported point
  double worst = 0.0;
  for (const auto& c : program.constraints) {
    double v = rational_to_double(c.form.constant);
    for (const auto& [id, coeff] : c.form.entropy)
      v += rational_to_double(coeff) * sol.entropy_values[id.mask - 1];
    for (const auto& [name, coeff] : c.form.scalars)
      v += rational_to_double(coeff) * sol.scalar_values.at(name);
    const double violation = (c.sense == Sense::EqualZero) ? std::abs(v) : std::max(0.0, -v);
    worst = std::max(worst, violation);
  }
  for (double h : sol.entropy_values) worst = std::max(worst, -h);
  sol.max_violation = worst;
  if (worst > 8 * options.feasibility_tol)
    throw SolverFailure("optimal basis fails the feasibility audit (violation " +
                        std::to_string(worst) + ")");

  sol.basis.assign(result.basis.begin(), result.basis.end());
  return sol;
}

namespace {

// Exact basic solution refinement: double LU solve plus exact residual
// corrections against the true rational system.
std::vector<Rational> refine_basics(const LinearProgram& p, const StdForm& F,
                                    const std::vector<std::int32_t>& basis) {
  const int m = F.problem.rows;
  std::vector<std::vector<std::pair<int, Rational>>> exact_cols(static_cast<std::size_t>(m));
  std::vector<std::vector<std::pair<int, double>>> float_cols(static_cast<std::size_t>(m));
  for (int r = 0; r < m; ++r) {
    const int col = basis[static_cast<std::size_t>(r)];
    auto& exact = exact_cols[static_cast<std::size_t>(r)];
    if (F.is_artificial(col)) {
      exact.emplace_back(col - static_cast<int>(F.problem.cols.size()), Rational(1));
    } else {
      const ColumnMeta& meta = F.meta[static_cast<std::size_t>(col)];
      if (meta.constraint < 0) {
        exact.emplace_back(meta.slack_row,
                           Rational(F.row_scale[static_cast<std::size_t>(meta.slack_row)]));
      } else {
        const LinearForm& form = p.constraints[static_cast<std::size_t>(meta.constraint)].form;
        for (const auto& [id, coeff] : form.entropy) {
          const int row = F.coord_row.at(id.mask);
          exact.emplace_back(row,
                             Rational(meta.sign * F.row_scale[static_cast<std::size_t>(row)]) * coeff);
        }
        for (const auto& [name, coeff] : form.scalars) {
          const int row = F.scalar_row.at(name);
          exact.emplace_back(row,
                             Rational(meta.sign * F.row_scale[static_cast<std::size_t>(row)]) * coeff);
        }
      }
    }
    for (const auto& [row, coeff] : exact)
      float_cols[static_cast<std::size_t>(r)].emplace_back(row, rational_to_double(coeff));
  }

  const simplex::DenseLu lu(m, float_cols);
  std::vector<double> z = lu.solve(F.problem.rhs);

  std::vector<Rational> z_exact(static_cast<std::size_t>(m));
  for (int round = 0;; ++round) {
    for (int r = 0; r < m; ++r) z_exact[static_cast<std::size_t>(r)] = rational_from_double(z[static_cast<std::size_t>(r)]);
    std::vector<Rational> residual(F.rhs_exact);
    for (int r = 0; r < m; ++r)
      for (const auto& [row, coeff] : exact_cols[static_cast<std::size_t>(r)])
        residual[static_cast<std::size_t>(row)] -= coeff * z_exact[static_cast<std::size_t>(r)];
    std::vector<double> rd(static_cast<std::size_t>(m));
    double norm = 0.0;
    for (int r = 0; r < m; ++r) {
      rd[static_cast<std::size_t>(r)] = rational_to_double(residual[static_cast<std::size_t>(r)]);
      norm = std::max(norm, std::abs(rd[static_cast<std::size_t>(r)]));
    }
    if (norm < 1e-13 || round >= 4) break;
    const std::vector<double> delta = lu.solve(rd);
    for (int r = 0; r < m; ++r) z[static_cast<std::size_t>(r)] += delta[static_cast<std::size_t>(r)];
  }
  return z_exact;
}

}  // namespace

DualCertificate extract_certificate(const LinearProgram& program, const Solution& solution,
                                    const SolveOptions& options) {
  if (solution.status != SolveStatus::Optimal)
    throw std::invalid_argument("certificate extraction requires an optimal solution");
  if (solution.basis.empty())
    throw std::invalid_argument("solution carries no basis");
  const StdForm F = build_std_form(program);
  if (static_cast<int>(solution.basis.size()) != F.problem.rows)
    throw std::invalid_argument("basis does not match the program");

  const std::vector<Rational> z = refine_basics(program, F, solution.basis);

  // signed dual value per constraint (split equality columns merge here)
  std::vector<Rational> y_refined(program.constraints.size(), Rational(0));
  for (int r = 0; r < F.problem.rows; ++r) {
    const int col = solution.basis[static_cast<std::size_t>(r)];
    if (F.is_artificial(col)) continue;
    const ColumnMeta& meta = F.meta[static_cast<std::size_t>(col)];
    if (meta.constraint < 0) continue;  // coordinate slack
    y_refined[static_cast<std::size_t>(meta.constraint)] +=
        Rational(meta.sign) * z[static_cast<std::size_t>(r)];
  }

  std::map<std::string, double> float_duals;
  for (std::size_t i = 0; i < program.constraints.size(); ++i)
    if (y_refined[i] != 0)
      float_duals[program.constraints[i].tag] = rational_to_double(y_refined[i]);

  std::vector<unsigned> bit_stages = {20, 32, 44};
  if (options.certificate_denominator_bits > 44)
    bit_stages.push_back(options.certificate_denominator_bits);
  for (unsigned bits : bit_stages) {
    const Int cap = Int(1) << bits;
    std::vector<Rational> y(program.constraints.size(), Rational(0));
    bool rounded = true;
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (y_refined[i] == 0) continue;
      auto r = approximate_rational(rational_to_double(y_refined[i]), cap);
      if (!r) { rounded = false; break; }
      y[i] = *r;
    }
    if (!rounded) continue;

    bool signs_ok = true;
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (program.constraints[i].sense == Sense::GreaterEqualZero && y[i] < 0) {
        signs_ok = false;
        break;
      }
    }
    if (!signs_ok) continue;

    LinearForm combo;
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (y[i] == 0) continue;
      combo += y[i] * program.constraints[i].form;
    }
    // scalar columns admit no slack: coefficients must match exactly
    if (combo.scalars != program.objective.scalars) continue;
    // entropy columns: slack = objective coefficient - combination >= 0
    LinearForm slack = program.objective;
    slack -= combo;
    bool slack_ok = true;
    for (const auto& [id, coeff] : slack.entropy) {
      if (coeff < 0) { slack_ok = false; break; }
    }
    if (!slack_ok) continue;

    const Rational bound = program.objective.constant - combo.constant;
    if (std::abs(rational_to_double(bound) - solution.objective_value) >
        1e-5 * (1.0 + std::abs(solution.objective_value)))
      continue;

    DualCertificate cert;
    cert.certified_bound = bound;
    for (std::size_t i = 0; i < y.size(); ++i)
      if (y[i] != 0) cert.weights.emplace(program.constraints[i].tag, y[i]);
    for (const auto& [id, coeff] : slack.entropy)
      cert.weights.emplace(std::string(kNonnegTagPrefix) + program.ground.subset_name(id),
                           coeff);
    return cert;
  }

  throw CertificateExtractionError(
      "dual values did not rationalize within the denominator search bound", float_duals);
}

CertificateCheck verify_certificate(const LinearProgram& program, const DualCertificate& cert) {
  std::map<std::string, std::size_t> by_tag;
  for (std::size_t i = 0; i < program.constraints.size(); ++i)
    by_tag.emplace(program.constraints[i].tag, i);

  CertificateCheck check;
  LinearForm combo;
  for (const auto& [tag, weight] : cert.weights) {
    if (tag.rfind(kNonnegTagPrefix, 0) == 0) {
      const std::string coord = tag.substr(std::string(kNonnegTagPrefix).size());
      const std::uint32_t mask = program.ground.parse_subset(coord);  // throws on unknown
      if (weight < 0) {
        check.message = "negative weight on bound '" + tag + "'";
        return check;
      }
      LinearForm f;
      f.add_entropy(SubsetId{mask}, 1);
      combo += weight * f;
      continue;
    }
    auto it = by_tag.find(tag);
    if (it == by_tag.end()) throw std::invalid_argument("unknown constraint tag '" + tag + "'");
    const Constraint& c = program.constraints[it->second];
    if (c.sense == Sense::GreaterEqualZero && weight < 0) {
      check.message = "negative weight on inequality '" + tag + "'";
      return check;
    }
    combo += weight * c.form;
  }

  LinearForm target = program.objective;
  target.constant -= cert.certified_bound;
  combo -= target;
  if (!combo.is_zero()) {
    check.message = "weighted combination does not reproduce the objective";
    check.residual = combo;
    return check;
  }
  check.ok = true;
  check.message = "certificate verified; bound " + rational_string(cert.certified_bound);
  return check;
}

}  // namespace pirbound
