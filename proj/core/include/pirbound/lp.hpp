#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "pirbound/linear_form.hpp"

namespace pirbound {

// Minimization problem over joint-entropy coordinates (lower-bounded by 0)
// plus named scalar variables (free). Immutable once built; solve on demand.
struct LinearProgram {
  GroundSet ground;
  std::vector<std::string> scalars;
  std::vector<Constraint> constraints;
  LinearForm objective;

  // Throws std::invalid_argument on duplicate/reserved tags, undeclared
  // scalars, or out-of-range coordinates.
  void validate() const;
};

enum class SolveStatus { Optimal, Unbounded, Infeasible };

std::string to_string(SolveStatus status);

struct SolveOptions {
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-9;
  long max_iterations = 2000000;
  int refactor_interval = 512;
  // Denominator search bound for certificate rationalization, as a bit count;
  // escalated in stages up to this cap.
  unsigned certificate_denominator_bits = 56;
};

struct Solution {
  SolveStatus status = SolveStatus::Infeasible;
  double objective_value = 0.0;
  // Primal assignment: entropy coordinates indexed mask-1 (coordinates the
  // presolve dropped stay 0), then scalars by name.
  std::vector<double> entropy_values;
  std::map<std::string, double> scalar_values;
  long iterations = 0;
  double max_violation = 0.0;
  // Optimal basis of the internal standard form; consumed by
  // extract_certificate. Empty unless status == Optimal.
  std::vector<std::int32_t> basis;
};

struct SolverFailure : std::runtime_error {
  explicit SolverFailure(const std::string& what) : std::runtime_error(what) {}
};

// Exact nonnegative-combination proof that the objective is >= certified_bound
// over the program's feasible set. Weights reference constraint tags; reserved
// tags "nonneg:<coordinate>" weight the implicit bounds H(coordinate) >= 0.
// Weights on equality rows may be negative.
struct DualCertificate {
  std::map<std::string, Rational> weights;
  Rational certified_bound = 0;
};

inline constexpr const char* kNonnegTagPrefix = "nonneg:";

struct CertificateExtractionError : std::runtime_error {
  CertificateExtractionError(const std::string& what, std::map<std::string, double> duals)
      : std::runtime_error(what), float_duals(std::move(duals)) {}
  std::map<std::string, double> float_duals;
};

struct CertificateCheck {
  bool ok = false;
  std::string message;
  // Nonzero only on failure: weighted combination minus (objective - bound).
  LinearForm residual;
};

// Deterministic revised simplex (dense working basis, Dantzig pricing with
// lowest-index ties, Bland's rule on stall). Equality rows are handled as two
// opposing inequality directions internally but keep a single tag.
Solution solve_min(const LinearProgram& program, const SolveOptions& options = {});

// Recovers dual weights from the optimal basis, rounds them to
// small-denominator rationals, and re-verifies the combination exactly.
// Throws CertificateExtractionError (carrying the float duals) if no
// denominator within the search bound verifies.
DualCertificate extract_certificate(const LinearProgram& program, const Solution& solution,
                                    const SolveOptions& options = {});

// Exact rational re-check, independent of any solve: sign conditions plus the
// coefficient-exact identity  sum_i w_i * form_i == objective - bound.
// Throws std::invalid_argument on unknown tags.
CertificateCheck verify_certificate(const LinearProgram& program, const DualCertificate& cert);

}  // namespace pirbound
