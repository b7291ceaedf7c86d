#pragma once

// Internal dense revised-simplex kernel, double precision only. Kept free of
// the exact-arithmetic headers; the exact layer lives in lp.cpp.

#include <memory>
#include <utility>
#include <vector>

namespace pirbound::simplex {

struct Column {
  std::vector<std::pair<int, double>> entries;
  double cost = 0.0;
};

// min f'z  s.t.  M z = rhs, z >= 0, rhs >= 0. Artificial columns are managed
// internally with ids cols.size()+row. initial_basis[row] is a column id or
// -1 to request an artificial start for that row.
struct Problem {
  int rows = 0;
  std::vector<Column> cols;
  std::vector<double> rhs;
  std::vector<int> initial_basis;
};

struct Options {
  double optimality_tol = 1e-9;
  long max_iterations = 2000000;
  int refactor_interval = 512;
  bool trace = true;  // iteration log on stderr, development aid
};

enum class Outcome { Optimal, Infeasible, Unbounded, IterationLimit };

struct Result {
  Outcome outcome = Outcome::IterationLimit;
  std::vector<int> basis;           // column ids per row at the final basis
  std::vector<double> multipliers;  // simplex multipliers under phase-2 costs
  double objective = 0.0;           // f'z at the optimum
  long iterations = 0;
};

// Two-phase revised simplex: Dantzig pricing with lowest-index ties, Bland's
// rule on stall, eta-file updates with periodic refactorization. Throws
// std::runtime_error on numerical failure (singular basis).
Result solve_standard_form(const Problem& problem, const Options& options);

// Dense LU over the given sparse columns (square system), used by the exact
// certificate refinement for repeated solves against one factorization.
class DenseLu {
 public:
  DenseLu(int n, const std::vector<std::vector<std::pair<int, double>>>& cols);
  ~DenseLu();
  DenseLu(DenseLu&&) noexcept;
  DenseLu& operator=(DenseLu&&) noexcept;
  std::vector<double> solve(const std::vector<double>& rhs) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace pirbound::simplex
